#include "cqed/hilbert.hpp"

#include <cmath>
#include <sstream>

namespace cqed {

const char* to_string(AtomLevel level) {
    switch (level) {
        case AtomLevel::e: return "e";
        case AtomLevel::g: return "g";
        case AtomLevel::i: return "i";
    }
    return "?";
}

AtomLevel atom_level_from_string(const std::string& name) {
    if (name == "e") return AtomLevel::e;
    if (name == "g") return AtomLevel::g;
    if (name == "i") return AtomLevel::i;
    throw DomainError("unknown atom level '" + name + "' (expected e, g or i)");
}

void check_normalized(const JointState& state, double tol) {
    const double n2 = state.squared_norm();
    if (std::abs(n2 - 1.0) > tol) {
        std::ostringstream msg;
        msg << "state is not normalized: |amps|^2 = " << n2;
        throw DomainError(msg.str());
    }
}

void check_same_space(const JointState& a, const JointState& b) {
    if (a.n_max != b.n_max) {
        std::ostringstream msg;
        msg << "states live in different spaces: n_max " << a.n_max << " vs " << b.n_max;
        throw DimensionError(msg.str());
    }
}

FieldState FieldState::vacuum(int n_max) { return fock(0, n_max); }

FieldState FieldState::fock(int n, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (n < 0 || n > n_max) {
        std::ostringstream msg;
        msg << "Fock index " << n << " outside truncation [0, " << n_max << "]";
        throw TruncationError(msg.str());
    }
    FieldState f{n_max, Eigen::VectorXcd::Zero(n_max + 1)};
    f.amps[n] = 1.0;
    return f;
}

JointState make_basis_state(AtomLevel level, int n, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (n < 0 || n > n_max) {
        std::ostringstream msg;
        msg << "Fock index " << n << " outside truncation [0, " << n_max << "]";
        throw TruncationError(msg.str());
    }
    JointState s{n_max, Eigen::VectorXcd::Zero(3 * (n_max + 1))};
    s.amp(level, n) = 1.0;
    return s;
}

JointState make_joint(AtomLevel level, const FieldState& field) {
    if (field.n_max < 1) throw DomainError("n_max must be >= 1");
    JointState s{field.n_max, Eigen::VectorXcd::Zero(3 * (field.n_max + 1))};
    s.amps.segment(s.index(level, 0), field.n_max + 1) = field.amps;
    return s;
}

JointState superpose(const std::vector<std::pair<JointState, Complex>>& terms) {
    if (terms.empty()) throw DomainError("superpose needs at least one term");
    const int n_max = terms.front().first.n_max;
    JointState out{n_max, Eigen::VectorXcd::Zero(3 * (n_max + 1))};
    for (const auto& [state, coeff] : terms) {
        check_same_space(out, state);
        out.amps += coeff * state.amps;
    }
    const double norm = std::sqrt(out.squared_norm());
    if (norm <= 1e-12) {
        throw DomainError("degenerate superposition: the terms cancel to the zero vector");
    }
    out.amps /= norm;
    return out;
}

int coherent_n_max_for(Complex alpha, double tol) {
    const double mean = std::norm(alpha);
    double cn2 = std::exp(-mean);  // |C_0|^2
    double kept = cn2;
    int n = 0;
    while (1.0 - kept > tol) {
        n += 1;
        cn2 *= mean / n;
        kept += cn2;
        if (n > 4096) throw TruncationError("coherent state truncation search did not converge");
    }
    return std::max(n, 1);
}

CoherentField coherent_field(Complex alpha, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    CoherentField f;
    f.alpha = alpha;
    f.n_max = n_max;
    f.amps = Eigen::VectorXcd::Zero(n_max + 1);
    // C_{n+1} = C_n * alpha / sqrt(n + 1), seeded by C_0 = exp(-|alpha|^2 / 2).
    Complex cn = std::exp(-0.5 * std::norm(alpha));
    f.amps[0] = cn;
    for (int n = 0; n < n_max; ++n) {
        cn *= alpha / std::sqrt(static_cast<double>(n + 1));
        f.amps[n + 1] = cn;
    }
    const double leak = 1.0 - f.amps.squaredNorm();
    if (leak > kLeakTol) {
        std::ostringstream msg;
        msg << "coherent state |alpha|=" << std::abs(alpha) << " leaks " << leak
            << " past n_max=" << n_max << "; need n_max >= " << coherent_n_max_for(alpha);
        throw TruncationError(msg.str());
    }
    return f;
}

namespace {

double overlap_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return std::norm(a.dot(b));  // Eigen's dot conjugates the left argument
}

}  // namespace

double fidelity(const JointState& a, const JointState& b) {
    check_same_space(a, b);
    return overlap_fidelity(a.amps, b.amps);
}

double fidelity(const FieldState& a, const FieldState& b) {
    if (a.n_max != b.n_max) {
        throw DimensionError("field states live in different spaces");
    }
    return overlap_fidelity(a.amps, b.amps);
}

double fidelity(const CoherentField& a, const CoherentField& b) { return fidelity(a.as_field(), b.as_field()); }
double fidelity(const FieldState& a, const CoherentField& b) { return fidelity(a, b.as_field()); }
double fidelity(const CoherentField& a, const FieldState& b) { return fidelity(a.as_field(), b); }

FieldState conditional_field(const JointState& state, AtomLevel level) {
    FieldState f{state.n_max, state.amps.segment(state.index(level, 0), state.n_max + 1)};
    const double norm = std::sqrt(f.squared_norm());
    if (norm <= 1e-12) {
        throw DomainError(std::string("no population in level ") + to_string(level));
    }
    f.amps /= norm;
    return f;
}

std::vector<double> photon_distribution(const JointState& state) {
    std::vector<double> p(state.n_max + 1, 0.0);
    for (int n = 0; n <= state.n_max; ++n) {
        for (AtomLevel level : {AtomLevel::e, AtomLevel::g, AtomLevel::i}) {
            p[n] += std::norm(state.amp(level, n));
        }
    }
    return p;
}

std::vector<double> photon_distribution(const FieldState& field) {
    std::vector<double> p(field.n_max + 1, 0.0);
    for (int n = 0; n <= field.n_max; ++n) p[n] = std::norm(field.amps[n]);
    return p;
}

MeasurementResult measure_atom(const JointState& state, RngStream& rng) {
    check_normalized(state);
    const int block = state.n_max + 1;
    double probs[3];
    double total = 0.0;
    for (int l = 0; l < 3; ++l) {
        probs[l] = state.amps.segment(l * block, block).squaredNorm();
        total += probs[l];
    }
    const double u = rng.uniform() * total;
    int outcome = 2;
    double cumulative = 0.0;
    for (int l = 0; l < 3; ++l) {
        cumulative += probs[l];
        if (u < cumulative) {
            outcome = l;
            break;
        }
    }
    MeasurementResult result;
    result.outcome = static_cast<AtomLevel>(outcome);
    result.probability = probs[outcome] / total;
    result.state = JointState{state.n_max, Eigen::VectorXcd::Zero(state.dim())};
    result.state.amps.segment(outcome * block, block) =
        state.amps.segment(outcome * block, block) / std::sqrt(probs[outcome]);
    return result;
}

}  // namespace cqed

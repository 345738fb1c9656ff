#include "cqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqed/constants.hpp"

namespace cqed {

void CavityParams::validate() const {
    if (!(g0 > 0.0)) throw DomainError("g0 must be > 0");
    if (!(quality > 0.0)) throw DomainError("quality factor must be > 0");
    if (!(waist > 0.0)) throw DomainError("mode waist must be > 0");
    if (!(velocity > 0.0)) throw DomainError("atomic velocity must be > 0");
    if (!(omega > 0.0)) throw DomainError("mode frequency must be > 0");
    if (kappa < 0.0) throw DomainError("kappa must be >= 0");
    if (gamma < 0.0) throw DomainError("gamma must be >= 0");
    if (dipole < 0.0) throw DomainError("dipole element must be >= 0");
    if (mode_volume < 0.0) throw DomainError("mode volume must be >= 0");
}

double kappa_from_quality(double omega, double quality) {
    if (!(quality > 0.0)) throw DomainError("quality factor must be > 0");
    return omega / quality;
}

double jc_splitting(int n, double g0) {
    if (n < 1) throw DomainError("ladder splitting is defined for n >= 1");
    return 2.0 * std::sqrt(static_cast<double>(n)) * g0;
}

DressedDoublet dressed_energies(int n, const CavityParams& params) {
    if (n < 0) throw DomainError("manifold index must be >= 0");
    if (params.delta() != 0.0) {
        throw DomainError("dressed_energies handles the resonant case only (delta = 0)");
    }
    const double center = (n + 1.5) * params.omega;
    const double half = std::sqrt(static_cast<double>(n + 1)) * params.g0;
    return {center + half, center - half};
}

double interaction_time(double waist, double velocity) {
    if (!(waist > 0.0)) throw DomainError("mode waist must be > 0");
    if (!(velocity > 0.0)) throw DomainError("atomic velocity must be > 0");
    return std::sqrt(kPi) * waist / velocity;
}

JointState evolve_resonant(const JointState& state, double omega_rabi, double t) {
    check_normalized(state);
    const double top = std::abs(state.amp(AtomLevel::e, state.n_max));
    if (top > 1e-10) {
        std::ostringstream msg;
        msg << "|e," << state.n_max << "> holds amplitude " << top
            << " with no partner state; raise n_max";
        throw TruncationError(msg.str());
    }
    JointState out = state;
    for (int n = 0; n < state.n_max; ++n) {
        const double theta = 0.5 * omega_rabi * std::sqrt(static_cast<double>(n + 1)) * t;
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex ce = state.amp(AtomLevel::e, n);
        const Complex cg = state.amp(AtomLevel::g, n + 1);
        out.amp(AtomLevel::e, n) = c * ce - s * cg;
        out.amp(AtomLevel::g, n + 1) = s * ce + c * cg;
    }
    return out;
}

double excited_probability(const JointState& state) {
    const int block = state.n_max + 1;
    return state.amps.segment(static_cast<int>(AtomLevel::e) * block, block).squaredNorm();
}

std::vector<double> frequency_grid(double start, double stop, int points) {
    if (points < 2) throw DomainError("frequency grid needs at least 2 points");
    if (!(stop > start)) throw DomainError("frequency grid must be increasing");
    std::vector<double> grid(points);
    const double step = (stop - start) / (points - 1);
    for (int k = 0; k < points; ++k) grid[k] = start + k * step;
    grid.back() = stop;
    return grid;
}

namespace {

// Unit-peak Lorentzian of half-width w centered at zero.
double lorentzian(double x, double w) { return w * w / (w * w + x * x); }

}  // namespace

Spectrum vacuum_rabi_spectrum(const CavityParams& params, bool atom_present,
                              const std::vector<double>& grid) {
    params.validate();
    if (grid.size() < 2) throw DomainError("spectrum grid needs at least 2 points");
    const double lo = *std::min_element(grid.begin(), grid.end());
    const double hi = *std::max_element(grid.begin(), grid.end());
    if (lo > params.omega - 3.0 * params.g0 || hi < params.omega + 3.0 * params.g0) {
        throw DomainError("spectrum grid must span at least omega +- 3 g0");
    }
    double max_step = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        max_step = std::max(max_step, std::abs(grid[k] - grid[k - 1]));
    }
    if (max_step > params.g0 / 50.0) {
        std::ostringstream msg;
        msg << "spectrum grid step " << max_step << " rad/s is too coarse to resolve the"
            << " 2 g0 = " << 2.0 * params.g0 << " rad/s splitting (need <= g0/50)";
        throw DomainError(msg.str());
    }

    Spectrum spec;
    spec.frequencies = grid;
    spec.intensity.resize(grid.size());
    if (!atom_present) {
        const double hw = 0.5 * params.kappa;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            spec.intensity[k] = lorentzian(grid[k] - params.omega, hw);
        }
    } else {
        const double hw = 0.25 * (params.kappa + params.gamma);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double x = grid[k] - params.omega;
            spec.intensity[k] = 0.5 * (lorentzian(x - params.g0, hw) + lorentzian(x + params.g0, hw));
        }
    }
    return spec;
}

}  // namespace cqed

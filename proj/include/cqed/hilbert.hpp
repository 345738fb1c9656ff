#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cqed/constants.hpp"
#include "cqed/errors.hpp"
#include "cqed/rng.hpp"

namespace cqed {

using Complex = std::complex<double>;

// Atomic levels: e and g are the cavity-resonant pair, i is a third level
// that never couples to the mode. The ordering fixes the state indexing.
enum class AtomLevel : int { e = 0, g = 1, i = 2 };

const char* to_string(AtomLevel level);
AtomLevel atom_level_from_string(const std::string& name);

// Cavity-only state over the truncated Fock basis |0..n_max>.
struct FieldState {
    int n_max = 0;
    Eigen::VectorXcd amps;  // length n_max + 1

    int dim() const { return n_max + 1; }
    double squared_norm() const { return amps.squaredNorm(); }

    static FieldState vacuum(int n_max);
    static FieldState fock(int n, int n_max);
};

// Coherent state |alpha> expanded over the truncated Fock basis,
// C_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!). The constructor rejects
// truncations that leak more than kLeakTol of the population.
struct CoherentField {
    Complex alpha{0.0, 0.0};
    int n_max = 0;
    Eigen::VectorXcd amps;

    FieldState as_field() const { return FieldState{n_max, amps}; }
};

// Joint atom (x) field amplitude vector, ordered (level, n) with
// index = level * (n_max + 1) + n.
struct JointState {
    int n_max = 0;
    Eigen::VectorXcd amps;  // length 3 * (n_max + 1)

    int dim() const { return 3 * (n_max + 1); }
    int index(AtomLevel level, int n) const { return static_cast<int>(level) * (n_max + 1) + n; }
    Complex amp(AtomLevel level, int n) const { return amps[index(level, n)]; }
    Complex& amp(AtomLevel level, int n) { return amps[index(level, n)]; }
    double squared_norm() const { return amps.squaredNorm(); }
};

void check_normalized(const JointState& state, double tol = kNormTol);
void check_same_space(const JointState& a, const JointState& b);

// |level, n> with unit amplitude. Throws TruncationError if n > n_max.
JointState make_basis_state(AtomLevel level, int n, int n_max);

// Atom in `level` tensored with the given field.
JointState make_joint(AtomLevel level, const FieldState& field);

// Normalized linear combination. All terms must share n_max; a combination
// that cancels to (numerically) zero is rejected.
JointState superpose(const std::vector<std::pair<JointState, Complex>>& terms);

// Smallest n_max whose truncation leak 1 - sum |C_n|^2 is within tol.
int coherent_n_max_for(Complex alpha, double tol = kLeakTol);

CoherentField coherent_field(Complex alpha, int n_max);

// |<a|b>|^2.
double fidelity(const JointState& a, const JointState& b);
double fidelity(const FieldState& a, const FieldState& b);
double fidelity(const CoherentField& a, const CoherentField& b);
double fidelity(const FieldState& a, const CoherentField& b);
double fidelity(const CoherentField& a, const FieldState& b);

// Field amplitudes conditioned on the atom being found in `level`,
// renormalized. Throws DomainError if that level carries no population.
FieldState conditional_field(const JointState& state, AtomLevel level);

// P(n), traced over the atom.
std::vector<double> photon_distribution(const JointState& state);
std::vector<double> photon_distribution(const FieldState& field);

struct MeasurementResult {
    AtomLevel outcome;
    JointState state;    // atom collapsed to `outcome`, field renormalized
    double probability;  // Born probability of the realized outcome
};

// Projective measurement of the atomic level (Born rule); the field keeps
// the component correlated with the observed level.
MeasurementResult measure_atom(const JointState& state, RngStream& rng);

}  // namespace cqed

#pragma once

#include <vector>

#include "cqed/hilbert.hpp"

namespace cqed {

// Physical parameters of one atom-cavity arrangement. Angular frequencies
// throughout (rad/s); detuning is derived as omega - omega_eg so it can
// never disagree with the two frequencies.
struct CavityParams {
    double omega = 0.0;        // cavity mode frequency (rad/s)
    double omega_eg = 0.0;     // e-g transition frequency (rad/s)
    double g0 = 0.0;           // atom-cavity coupling (rad/s)
    double quality = 0.0;      // quality factor Q (dimensionless)
    double kappa = 0.0;        // photon decay rate (rad/s)
    double gamma = 0.0;        // non-resonant atomic decay rate (rad/s)
    double waist = 0.0;        // mode waist w (m)
    double velocity = 0.0;     // atomic velocity v (m/s)
    double dipole = 0.0;       // dipole matrix element d (C m)
    double mode_volume = 0.0;  // mode volume V (m^3)

    double delta() const { return omega - omega_eg; }

    // Strong coupling diagnostic: g0 exceeds both kappa and gamma by
    // `factor`. Reported as a flag, never enforced.
    bool strongly_coupled(double factor = 10.0) const {
        return g0 >= factor * kappa && g0 >= factor * gamma;
    }

    void validate() const;  // throws DomainError on non-physical values
};

struct Spectrum {
    std::vector<double> frequencies;  // probe frequencies (rad/s)
    std::vector<double> intensity;    // arbitrary units, >= 0
};

// kappa = omega / Q.
double kappa_from_quality(double omega, double quality);

// Ladder splitting 2 sqrt(n) g0 of the n-photon doublet, n >= 1.
double jc_splitting(int n, double g0);

struct DressedDoublet {
    double upper;
    double lower;
};

// Resonant dressed energies of the manifold {|e,n>, |g,n+1>}:
// (n + 3/2) omega +- sqrt(n+1) g0 (hbar = 1). Refuses detuned parameters.
DressedDoublet dressed_energies(int n, const CavityParams& params);

// Effective full-mode crossing time t_i = sqrt(pi) w / v.
double interaction_time(double waist, double velocity);

// Vacuum Rabi frequency at mode center; fixed to 2 g0.
inline double rabi_frequency(const CavityParams& params) { return 2.0 * params.g0; }

// Resonant Jaynes-Cummings evolution in the interaction picture. Each
// manifold {|e,n>, |g,n+1>} rotates by Omega sqrt(n+1) t / 2:
//   |e,n>   -> cos |e,n> + sin |g,n+1>
//   |g,n+1> -> cos |g,n+1> - sin |e,n>
// |g,0> and every |i,n> are left alone. Population sitting at |e,n_max|
// has no partner state and triggers a TruncationError.
JointState evolve_resonant(const JointState& state, double omega_rabi, double t);

// Sum over n of |<e,n|state>|^2.
double excited_probability(const JointState& state);

std::vector<double> frequency_grid(double start, double stop, int points);

// Weak-probe transmission line shapes: a single Lorentzian of half-width
// kappa/2 at omega for the empty cavity, or two equal-weight Lorentzians of
// half-width (kappa+gamma)/4 at omega +- g0 with one atom inside. Unit peak
// refers to the empty-cavity curve.
Spectrum vacuum_rabi_spectrum(const CavityParams& params, bool atom_present,
                              const std::vector<double>& grid);

}  // namespace cqed

#pragma once

#include "cqed/dynamics.hpp"
#include "cqed/hilbert.hpp"

namespace cqed {

// Which transition a pulse drives. Ramsey zones act classically on the
// named pair; the cavity pulse is the quantized e-g exchange.
enum class Transition { cavity_eg, ramsey_eg, ramsey_gi };

enum class RamseyPair { eg, gi };

const char* to_string(Transition t);

// Declarative pulse description: transition, rotation angle Omega * t_i and,
// for Ramsey pulses, the zone phase phi (often Delta_omega * T).
struct PulseSpec {
    Transition transition = Transition::cavity_eg;
    double angle = 0.0;  // rad, >= 0
    double phase = 0.0;  // rad; cavity pulses carry none

    static PulseSpec cavity(double angle);
    static PulseSpec ramsey(RamseyPair pair, double phase);
    // Phase accumulated between source and atomic coherence over a delay.
    static PulseSpec ramsey_delayed(RamseyPair pair, double delta_omega, double delay);

    void validate() const;
};

// pi/2 Ramsey zone on the chosen pair (a,b), applied in every photon sector:
//   |a> -> (|a> + e^{i phi} |b>) / sqrt(2)
//   |b> -> (-e^{-i phi} |a> + |b>) / sqrt(2)
// The third level and the field are untouched.
JointState ramsey_pulse(const JointState& state, RamseyPair pair, double phi);

// Resonant cavity pulse of the given area: evolve_resonant for t = angle/Omega.
JointState cavity_pulse(const JointState& state, double angle, double omega_rabi);

JointState apply_pulse(const JointState& state, const PulseSpec& spec, double omega_rabi);

// Dispersive (far-detuned) interaction bookkeeping.
struct DispersiveParams {
    double epsilon = 0.0;        // phase shift per photon (rad)
    double delta = 0.0;          // detuning (rad/s), nonzero
    double t_interaction = 0.0;  // crossing time (s)
    double omega_rabi_pos = 0.0; // position-evaluated Rabi frequency Omega(r) (rad/s)
    double omega = 0.0;          // mode frequency (rad/s), sets the (n+1) omega baseline
};

// Phase shift per photon, epsilon = t_i (omega/delta) d^2 / (2 hbar eps0 V),
// with t_i the full-mode crossing time of the params.
double dispersive_epsilon(const CavityParams& params);

// Mutual atom-field phase accumulation at detuning:
//   |e,n> -> e^{+i(n+1) eps} |e,n>,  |g,n> -> e^{-i n eps} |g,n>,  |i,n> unchanged.
JointState dispersive_interaction(const JointState& state, double epsilon);

struct LightShiftDoublet {
    double upper;
    double lower;
};

// Perturbed pair of dressed energies at nonzero detuning (hbar = 1):
// (n+1) omega +- |delta|/2 +- Omega(r)^2 (n+1) / |delta|, the light-shift
// term carrying the sign of the detuning. Diagnostic only.
LightShiftDoublet light_shift(int n, const DispersiveParams& params, int detuning_sign);

// Conditional phase gate on the {g,i} x {0,1} qubit pair: the |g,1>
// amplitude picks up e^{i phi}; |g,0> and every |i,n> (and any e component)
// pass through. Field population above one photon is rejected.
JointState conditional_phase_gate(const JointState& state, double phi);

}  // namespace cqed

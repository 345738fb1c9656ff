#include "cqed/pulses.hpp"

#include <cmath>
#include <sstream>

#include "cqed/constants.hpp"

namespace cqed {

const char* to_string(Transition t) {
    switch (t) {
        case Transition::cavity_eg: return "cavity_eg";
        case Transition::ramsey_eg: return "ramsey_eg";
        case Transition::ramsey_gi: return "ramsey_gi";
    }
    return "?";
}

PulseSpec PulseSpec::cavity(double angle) {
    PulseSpec spec{Transition::cavity_eg, angle, 0.0};
    spec.validate();
    return spec;
}

PulseSpec PulseSpec::ramsey(RamseyPair pair, double phase) {
    PulseSpec spec{pair == RamseyPair::eg ? Transition::ramsey_eg : Transition::ramsey_gi,
                   0.5 * kPi, phase};
    spec.validate();
    return spec;
}

PulseSpec PulseSpec::ramsey_delayed(RamseyPair pair, double delta_omega, double delay) {
    return ramsey(pair, delta_omega * delay);
}

void PulseSpec::validate() const {
    if (angle < 0.0) throw DomainError("pulse angle must be >= 0");
    if (transition == Transition::cavity_eg && phase != 0.0) {
        throw DomainError("cavity pulses carry no Ramsey phase");
    }
}

JointState ramsey_pulse(const JointState& state, RamseyPair pair, double phi) {
    check_normalized(state);
    const AtomLevel a = pair == RamseyPair::eg ? AtomLevel::e : AtomLevel::g;
    const AtomLevel b = pair == RamseyPair::eg ? AtomLevel::g : AtomLevel::i;
    const Complex forward = std::polar(1.0, phi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    JointState out = state;
    for (int n = 0; n <= state.n_max; ++n) {
        const Complex ca = state.amp(a, n);
        const Complex cb = state.amp(b, n);
        out.amp(a, n) = inv_sqrt2 * (ca - std::conj(forward) * cb);
        out.amp(b, n) = inv_sqrt2 * (forward * ca + cb);
    }
    return out;
}

JointState cavity_pulse(const JointState& state, double angle, double omega_rabi) {
    if (angle < 0.0) throw DomainError("pulse angle must be >= 0");
    if (!(omega_rabi > 0.0)) throw DomainError("Rabi frequency must be > 0");
    return evolve_resonant(state, omega_rabi, angle / omega_rabi);
}

JointState apply_pulse(const JointState& state, const PulseSpec& spec, double omega_rabi) {
    spec.validate();
    switch (spec.transition) {
        case Transition::cavity_eg:
            return cavity_pulse(state, spec.angle, omega_rabi);
        case Transition::ramsey_eg:
        case Transition::ramsey_gi: {
            if (std::abs(spec.angle - 0.5 * kPi) > 1e-12) {
                throw DomainError("only pi/2 Ramsey pulses are defined");
            }
            const RamseyPair pair =
                spec.transition == Transition::ramsey_eg ? RamseyPair::eg : RamseyPair::gi;
            return ramsey_pulse(state, pair, spec.phase);
        }
    }
    throw DomainError("unknown pulse transition");
}

double dispersive_epsilon(const CavityParams& params) {
    params.validate();
    const double delta = params.delta();
    if (delta == 0.0) {
        throw DomainError("dispersive phase diverges on resonance (delta = 0)");
    }
    const double t_i = interaction_time(params.waist, params.velocity);
    return t_i * (params.omega / delta) * params.dipole * params.dipole /
           (2.0 * kHbar * kEpsilon0 * params.mode_volume);
}

JointState dispersive_interaction(const JointState& state, double epsilon) {
    check_normalized(state);
    JointState out = state;
    for (int n = 0; n <= state.n_max; ++n) {
        out.amp(AtomLevel::e, n) *= std::polar(1.0, (n + 1) * epsilon);
        out.amp(AtomLevel::g, n) *= std::polar(1.0, -n * epsilon);
    }
    return out;
}

LightShiftDoublet light_shift(int n, const DispersiveParams& params, int detuning_sign) {
    if (n < 0) throw DomainError("photon number must be >= 0");
    if (params.delta == 0.0) throw DomainError("light shift diverges on resonance (delta = 0)");
    if (detuning_sign != 1 && detuning_sign != -1) {
        throw DomainError("detuning sign must be +1 or -1");
    }
    const double abs_delta = std::abs(params.delta);
    const double base = (n + 1) * params.omega;
    const double shift =
        detuning_sign * params.omega_rabi_pos * params.omega_rabi_pos * (n + 1) / abs_delta;
    return {base + 0.5 * abs_delta + shift, base - 0.5 * abs_delta - shift};
}

JointState conditional_phase_gate(const JointState& state, double phi) {
    check_normalized(state);
    double above_qubit = 0.0;
    for (int n = 2; n <= state.n_max; ++n) {
        for (AtomLevel level : {AtomLevel::e, AtomLevel::g, AtomLevel::i}) {
            above_qubit += std::norm(state.amp(level, n));
        }
    }
    if (above_qubit > 1e-10) {
        std::ostringstream msg;
        msg << "phase gate is defined on the {0,1} photon subspace; population above one photon = "
            << above_qubit;
        throw TruncationError(msg.str());
    }
    JointState out = state;
    out.amp(AtomLevel::g, 1) *= std::polar(1.0, phi);
    return out;
}

}  // namespace cqed

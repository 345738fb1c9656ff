#include "cqed/decoherence.hpp"

#include <cmath>
#include <sstream>

#include "cqed/constants.hpp"
#include "cqed/numeric.hpp"
#include "cqed/pulses.hpp"

namespace cqed {

double nbar_from_p1(double p1) {
    if (p1 < 0.0 || p1 >= 1.0 / 3.0) {
        std::ostringstream msg;
        msg << "p1 = " << p1 << " outside [0, 1/3); the {0,1} birth-death model has no"
            << " steady state there";
        throw DomainError(msg.str());
    }
    return p1 / (1.0 - 2.0 * p1);
}

double p1_from_nbar(double nbar) {
    if (nbar < 0.0) throw DomainError("nbar must be >= 0");
    return nbar / (1.0 + 2.0 * nbar);
}

BathParams BathParams::from_p1(double kappa, double p1) {
    BathParams bath{kappa, nbar_from_p1(p1), p1};
    bath.validate();
    return bath;
}

BathParams BathParams::from_nbar(double kappa, double nbar) {
    BathParams bath{kappa, nbar, p1_from_nbar(nbar)};
    bath.validate();
    return bath;
}

void BathParams::validate() const {
    if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
    if (p1 < 0.0 || p1 >= 1.0 / 3.0) throw DomainError("p1 must lie in [0, 1/3)");
    if (nbar < 0.0) throw DomainError("nbar must be >= 0");
    if (std::abs(p1_from_nbar(nbar) - p1) > 1e-9) {
        throw DomainError("nbar and p1 are inconsistent: p1 must equal nbar/(1+2 nbar)");
    }
}

const char* to_string(JumpKind kind) { return kind == JumpKind::birth ? "birth" : "death"; }

double TrajectoryRecord::occupied_time() const {
    double occupied = 0.0;
    int n = initial_n;
    double last = 0.0;
    for (const JumpEvent& jump : jumps) {
        if (n == 1) occupied += jump.time - last;
        last = jump.time;
        n = jump.kind == JumpKind::birth ? 1 : 0;
    }
    if (n == 1) occupied += duration - last;
    return occupied;
}

int TrajectoryRecord::death_count() const {
    int deaths = 0;
    for (const JumpEvent& jump : jumps) {
        if (jump.kind == JumpKind::death) deaths += 1;
    }
    return deaths;
}

void ProbeConfig::validate() const {
    if (!(probe_interval > 0.0)) throw DomainError("probe interval must be > 0");
    if (dark_count_prob < 0.0 || dark_count_prob > 1.0) {
        throw DomainError("dark count probability must lie in [0, 1]");
    }
    if (detection_efficiency < 0.0 || detection_efficiency > 1.0) {
        throw DomainError("detection efficiency must lie in [0, 1]");
    }
}

double probe_excited_probability(int photon_n, double epsilon, double r2_phase) {
    // Small dedicated space: the probe never changes the photon number.
    const int n_max = std::max(photon_n + 1, 2);
    JointState state = make_basis_state(AtomLevel::g, photon_n, n_max);
    state = ramsey_pulse(state, RamseyPair::eg, 0.0);
    state = dispersive_interaction(state, epsilon);
    state = ramsey_pulse(state, RamseyPair::eg, r2_phase);
    return excited_probability(state);
}

double calibrate_r2_phase(double epsilon_per_photon) {
    return sinusoid_minimum(
        [&](double phase) { return probe_excited_probability(0, epsilon_per_photon, phase); });
}

ProbeConfig calibrated(ProbeConfig probe) {
    probe.r2_phase = calibrate_r2_phase(probe.epsilon_per_photon);
    return probe;
}

namespace {

void check_probe_calibration(const ProbeConfig& probe) {
    const double p_e_empty = probe_excited_probability(0, probe.epsilon_per_photon, probe.r2_phase);
    if (p_e_empty > 1e-9) {
        std::ostringstream msg;
        msg << "r2_phase = " << probe.r2_phase << " is uncalibrated: P(g | empty cavity) = "
            << 1.0 - p_e_empty << " < 1 - 1e-9";
        throw CalibrationError(msg.str());
    }
}

AtomLevel imperfect_readout(AtomLevel ideal, const ProbeConfig& probe, RngStream& rng) {
    const double u = rng.uniform();
    if (ideal == AtomLevel::g) return u < probe.dark_count_prob ? AtomLevel::e : AtomLevel::g;
    return u < probe.detection_efficiency ? AtomLevel::e : AtomLevel::g;
}

}  // namespace

AtomLevel probe_photon(int photon_n, const ProbeConfig& probe, RngStream& rng) {
    if (photon_n != 0 && photon_n != 1) throw DomainError("probe photon number must be 0 or 1");
    check_probe_calibration(probe);
    const int n_max = 2;
    JointState state = make_basis_state(AtomLevel::g, photon_n, n_max);
    state = ramsey_pulse(state, RamseyPair::eg, 0.0);
    state = dispersive_interaction(state, probe.epsilon_per_photon);
    state = ramsey_pulse(state, RamseyPair::eg, probe.r2_phase);
    const MeasurementResult measured = measure_atom(state, rng);
    return imperfect_readout(measured.outcome, probe, rng);
}

TrajectoryRecord qnd_trajectory(const BathParams& bath, const ProbeConfig& probe,
                                double duration, int initial_n, RngStream& rng) {
    bath.validate();
    probe.validate();
    if (!(duration > 0.0)) throw DomainError("duration must be > 0");
    if (initial_n != 0 && initial_n != 1) throw DomainError("initial photon number must be 0 or 1");

    const double birth_rate = bath.kappa * bath.nbar;
    const double death_rate = bath.kappa * (1.0 + bath.nbar);

    TrajectoryRecord record;
    record.duration = duration;
    record.seed = rng.seed();
    record.initial_n = initial_n;

    int n = initial_n;
    double t = 0.0;
    double next_jump = rng.exponential(n == 1 ? death_rate : birth_rate);
    double next_probe = probe.probe_interval;

    while (true) {
        if (next_jump <= next_probe) {
            if (next_jump > duration) break;
            t = next_jump;
            n = 1 - n;
            record.jumps.push_back({t, n == 1 ? JumpKind::birth : JumpKind::death});
            next_jump = t + rng.exponential(n == 1 ? death_rate : birth_rate);
        } else {
            if (next_probe > duration) break;
            // Probes are QND: the photon number is untouched, only the
            // recorded outcome passes through the detector model.
            const AtomLevel ideal = n == 1 ? AtomLevel::e : AtomLevel::g;
            record.probes.push_back({next_probe, imperfect_readout(ideal, probe, rng), n});
            next_probe += probe.probe_interval;
        }
    }
    record.final_n = n;
    return record;
}

double damped_rabi_probability(double t, double omega_rabi, double t2) {
    if (!(t2 > 0.0)) throw DomainError("T2 must be > 0");
    return 0.5 + 0.5 * std::exp(-t / t2) * std::cos(omega_rabi * t);
}

}  // namespace cqed

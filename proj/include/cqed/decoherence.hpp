#pragma once

#include <cstdint>
#include <vector>

#include "cqed/hilbert.hpp"

namespace cqed {

// Thermal bath acting on the {0,1} photon pair: birth rate kappa*nbar,
// death rate kappa*(1+nbar), steady-state P(1) = nbar/(1+2 nbar) = p1.
struct BathParams {
    double kappa = 0.0;  // photon decay rate (1/s)
    double nbar = 0.0;   // mean thermal photon number
    double p1 = 0.0;     // steady-state single-photon probability

    static BathParams from_p1(double kappa, double p1);
    static BathParams from_nbar(double kappa, double nbar);
    void validate() const;
};

// nbar solving nbar/(1+2 nbar) = p1; valid for 0 <= p1 < 1/3.
double nbar_from_p1(double p1);
double p1_from_nbar(double nbar);

enum class JumpKind { birth, death };

const char* to_string(JumpKind kind);

struct JumpEvent {
    double time;
    JumpKind kind;
};

struct ProbeEvent {
    double time;
    AtomLevel outcome;  // e or g
    int true_n;         // photon number at probe time
};

// One stochastic realization of the birth/death process plus its probe log.
struct TrajectoryRecord {
    std::vector<JumpEvent> jumps;
    std::vector<ProbeEvent> probes;
    double duration = 0.0;
    std::uint64_t seed = 0;
    int initial_n = 0;
    int final_n = 0;

    double occupied_time() const;  // total time spent with a photon
    int death_count() const;
};

// Dispersive Ramsey probe settings. r2_phase must be calibrated so the
// empty cavity reads g with certainty; calibrate() fills it in.
struct ProbeConfig {
    double epsilon_per_photon = 0.0;  // rad; pi/2 for presence readout
    double r2_phase = 0.0;            // rad, calibrated
    double probe_interval = 0.0;      // s
    double dark_count_prob = 0.0;     // P(record e | ideal g)
    double detection_efficiency = 1.0; // P(record e | ideal e)
    void validate() const;
};

// P(e) of the probe chain R1(pi/2, eg) -> dispersive(eps) -> R2(pi/2, eg,
// r2_phase) -> detection, for an atom entering in g with `photon_n` photons.
double probe_excited_probability(int photon_n, double epsilon, double r2_phase);

// r2_phase making P(g | 0 photons) = 1, found from four probe evaluations.
double calibrate_r2_phase(double epsilon_per_photon);

ProbeConfig calibrated(ProbeConfig probe);

// Sample one probe through the pulse chain (never touching the photon),
// then apply detector imperfections. Throws CalibrationError when r2_phase
// does not make the empty cavity read g.
AtomLevel probe_photon(int photon_n, const ProbeConfig& probe, RngStream& rng);

// Continuous-time jump process on photon number {0,1} with exponential
// waiting times, probed every probe_interval without back-action. Draw
// order: waiting times as jumps occur, then one uniform per probe, all in
// chronological order.
TrajectoryRecord qnd_trajectory(const BathParams& bath, const ProbeConfig& probe,
                                double duration, int initial_n, RngStream& rng);

// Rabi signal with an exponential contrast envelope decaying to the equal
// mixture: 1/2 + exp(-t/T2) cos(Omega t) / 2.
double damped_rabi_probability(double t, double omega_rabi, double t2);

}  // namespace cqed

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cqed/decoherence.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/pulses.hpp"
#include "cqed/table.hpp"

namespace cqed {

// Scan grid request; NaN start/stop or points == 0 means "use the
// experiment's documented default".
struct ScanSpec {
    std::string variable;
    double start = std::numeric_limits<double>::quiet_NaN();
    double stop = std::numeric_limits<double>::quiet_NaN();
    int points = 0;
};

struct ExperimentConfig {
    CavityParams cavity;
    BathParams bath;
    ProbeConfig probe;
    int n_max = kDefaultNmax;
    double t2 = 0.0;           // transverse relaxation time (s)
    double field_alpha = 0.0;  // injected coherent amplitude for the field-phase run
    double duration = 0.0;     // trajectory length (s)
    ScanSpec scan;
    std::uint64_t seed = 1;
    int trajectories = 1;
    bool ideal = false;  // suppress detector imperfections / sampling layers

    void validate() const;
};

// Displace a truncated field by beta (matrix exponential of the
// displacement generator on the truncated space). Rejects results with
// population stuck at the truncation edge.
FieldState inject_coherent(const FieldState& field, Complex beta);

// Vacuum Rabi oscillation scan over interaction time: exact unitary P_e and
// the damped-envelope model side by side.
ResultTable run_rabi_scan(const ExperimentConfig& cfg);

// Transmission line shapes with and without the atom.
ResultTable run_mode_splitting(const ExperimentConfig& cfg);

// Two-zone Ramsey fringes on e-g with the cavity bypassed.
ResultTable run_ramsey_fringes(const ExperimentConfig& cfg);

// g-i Ramsey fringes around a 2pi cavity interaction, for an empty cavity
// and for one stored photon; emits both fringe sets and their fitted offset.
ResultTable run_phase_gate_fringes(const ExperimentConfig& cfg);

// Field-phase interference: a (|0>+|1>)/sqrt(2) field conditionally phase
// flipped by the second atom, displaced by alpha e^{i theta}, read out by a
// third atom through a pi pulse.
ResultTable run_field_phase_experiment(const ExperimentConfig& cfg);

// Ramsey phases sandwiching the 2pi cavity pulse so that the empty-cavity
// pass is the identity on {g,i}.
struct RamseyPhases {
    double first;
    double second;
};

RamseyPhases calibrate_cnot_phases(int n_max, double omega_rabi);

// The unitary part of the gate: R(g-i, first) -> 2pi cavity -> R(g-i, second).
JointState cnot_map(const JointState& state, const RamseyPhases& phases, double omega_rabi);

struct CnotResult {
    int control_in;
    AtomLevel target_in;
    int control_out;
    AtomLevel target_out;
    double outcome_probability;
    std::vector<double> photon_dist_in;
    std::vector<double> photon_dist_out;
};

CnotResult run_cnot(int control_n, AtomLevel target, const ExperimentConfig& cfg);

// All four truth-table rows as a table (also printed by the CLI).
ResultTable run_cnot_table(const ExperimentConfig& cfg);

// Ensemble summary of the jump process; trajectories start from the
// steady-state photon distribution (Bernoulli(p1), drawn from each
// trajectory's own sub-stream).
struct QndEnsembleStats {
    long long trajectories = 0;
    double occupancy_mean = 0.0;  // mean over trajectories of occupied fraction
    double occupancy_se = 0.0;    // standard error of that mean
    double dwell_mle = 0.0;       // occupied time / death count
    long long births = 0;
    long long deaths = 0;
    long long probes = 0;
    long long probe_mismatches = 0;  // recorded outcome disagrees with true n
};

QndEnsembleStats qnd_ensemble_stats(const BathParams& bath, const ProbeConfig& probe,
                                    double duration, int trajectories, std::uint64_t seed,
                                    std::vector<TrajectoryRecord>* keep = nullptr,
                                    int keep_count = 0);

// Probe rows (capped to the first kQndRecordCap trajectories) plus ensemble
// summary metadata.
inline constexpr int kQndRecordCap = 100;

ResultTable run_qnd(const ExperimentConfig& cfg);

// TrajectoryRecord serialization: rows (trajectory, time, event, value)
// where event is birth/death/probe and value is the photon number after a
// jump or 1/0 for a probe that read e/g.
ResultTable trajectory_events_table(const std::vector<TrajectoryRecord>& records);

}  // namespace cqed

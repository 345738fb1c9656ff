#include "cqed/validate.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "cqed/config.hpp"
#include "cqed/constants.hpp"
#include "cqed/decoherence.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/experiments.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/numeric.hpp"
#include "cqed/pulses.hpp"

namespace cqed {

namespace {

struct Harness {
    std::vector<CheckResult> results;

    void run(const std::string& name, const std::function<void()>& body) {
        try {
            body();
            results.push_back({name, true, ""});
        } catch (const std::exception& err) {
            results.push_back({name, false, err.what()});
        }
    }
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Error(message);
}

void require_close(double actual, double expected, double tol, const std::string& label) {
    if (!(std::abs(actual - expected) <= tol)) {
        std::ostringstream msg;
        msg << label << ": got " << actual << ", expected " << expected << " within " << tol;
        throw Error(msg.str());
    }
}

JointState random_state(int n_max, RngStream& rng) {
    std::vector<std::pair<JointState, Complex>> terms;
    for (int l = 0; l < 3; ++l) {
        for (int n = 0; n < n_max; ++n) {  // keep |e,n_max> empty for evolvability
            terms.emplace_back(make_basis_state(static_cast<AtomLevel>(l), n, n_max),
                               Complex(rng.uniform() - 0.5, rng.uniform() - 0.5));
        }
    }
    return superpose(terms);
}

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed) {
    Harness h;
    const double omega_rabi = 2.0 * kTwoPi * 47e3;

    h.run("hilbert: constructors and superpositions stay normalized", [&] {
        RngStream rng = RngStream::substream(seed, 101);
        for (int trial = 0; trial < 50; ++trial) {
            const JointState s = random_state(6, rng);
            require_close(s.squared_norm(), 1.0, 1e-10, "norm^2");
        }
    });

    h.run("hilbert: coherent amplitudes follow the ladder recurrence", [&] {
        const CoherentField f = coherent_field(Complex(0.7, 0.4), 15);
        for (int n = 0; n + 1 <= f.n_max; ++n) {
            const Complex expected = f.amps[n] * f.alpha / std::sqrt(static_cast<double>(n + 1));
            require(std::abs(expected - f.amps[n + 1]) <=
                        1e-13 * std::max(1.0, std::abs(f.amps[n + 1])),
                    "recurrence violated at n=" + std::to_string(n));
        }
    });

    h.run("hilbert: fidelity is symmetric and phase blind", [&] {
        RngStream rng = RngStream::substream(seed, 102);
        const JointState a = random_state(5, rng);
        JointState b = random_state(5, rng);
        require_close(fidelity(a, b), fidelity(b, a), 1e-12, "symmetry");
        const double before = fidelity(a, b);
        b.amps *= std::polar(1.0, 1.2345);
        require_close(fidelity(a, b), before, 1e-12, "global phase");
    });

    h.run("hilbert: measurement frequencies follow the Born rule", [&] {
        RngStream rng = RngStream::substream(seed, 103);
        const JointState s = superpose({{make_basis_state(AtomLevel::e, 0, 3), std::sqrt(0.25)},
                                        {make_basis_state(AtomLevel::g, 0, 3), std::sqrt(0.75)}});
        const int draws = 20000;
        int hits = 0;
        for (int k = 0; k < draws; ++k) {
            if (measure_atom(s, rng).outcome == AtomLevel::e) ++hits;
        }
        const double sigma = std::sqrt(0.25 * 0.75 / draws);
        require_close(static_cast<double>(hits) / draws, 0.25, 3.0 * sigma, "P(e)");
    });

    h.run("dynamics: P_e(t) matches (1 + cos(Omega t))/2", [&] {
        const JointState initial = make_basis_state(AtomLevel::e, 0, 4);
        for (int k = 0; k <= 200; ++k) {
            const double t = k * 5e-7;
            const double p = excited_probability(evolve_resonant(initial, omega_rabi, t));
            require_close(p, 0.5 * (1.0 + std::cos(omega_rabi * t)), 1e-12, "Eq-4 law");
        }
    });

    h.run("dynamics: evolution is unitary and composes exactly", [&] {
        RngStream rng = RngStream::substream(seed, 104);
        for (int trial = 0; trial < 20; ++trial) {
            const JointState s = random_state(6, rng);
            const double t1 = rng.uniform() * 1e-4, t2 = rng.uniform() * 1e-4;
            const JointState once = evolve_resonant(s, omega_rabi, t1 + t2);
            const JointState twice = evolve_resonant(evolve_resonant(s, omega_rabi, t1), omega_rabi, t2);
            require_close(once.squared_norm(), 1.0, 1e-12, "unitarity");
            require((once.amps - twice.amps).cwiseAbs().maxCoeff() <= 1e-12, "composition");
        }
    });

    h.run("pulses: named pulse identities on basis inputs", [&] {
        const int n_max = 4;
        const JointState e0 = make_basis_state(AtomLevel::e, 0, n_max);
        const JointState g1 = make_basis_state(AtomLevel::g, 1, n_max);
        const JointState g0 = make_basis_state(AtomLevel::g, 0, n_max);
        const JointState half = cavity_pulse(e0, 0.5 * kPi, omega_rabi);
        require_close(std::abs(half.amp(AtomLevel::e, 0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12, "pi/2 e");
        require_close(std::abs(half.amp(AtomLevel::g, 1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-12, "pi/2 g");
        require(std::abs(cavity_pulse(e0, kPi, omega_rabi).amp(AtomLevel::g, 1) - 1.0) <= 1e-12,
                "pi pulse");
        require(std::abs(cavity_pulse(e0, kTwoPi, omega_rabi).amp(AtomLevel::e, 0) + 1.0) <= 1e-12,
                "2pi phase");
        require((cavity_pulse(g0, kTwoPi, omega_rabi).amps - g0.amps).cwiseAbs().maxCoeff() == 0.0,
                "|g,0> untouched");
        require(std::abs(cavity_pulse(g1, kTwoPi, omega_rabi).amp(AtomLevel::g, 1) + 1.0) <= 1e-12,
                "2pi phase on g1");
    });

    h.run("pulses: Ramsey pulse pair (phi, phi+pi) restores the input", [&] {
        RngStream rng = RngStream::substream(seed, 105);
        for (double phi : {0.0, 0.7, 2.9}) {
            const JointState s = random_state(4, rng);
            const JointState back = ramsey_pulse(ramsey_pulse(s, RamseyPair::eg, phi),
                                                 RamseyPair::eg, phi + kPi);
            require_close(fidelity(s, back), 1.0, 1e-12, "restore fidelity");
        }
    });

    h.run("pulses: dispersive phases compose additively and shift coherent fields", [&] {
        const CoherentField alpha = coherent_field(0.8, kDefaultNmax);
        const JointState in = make_joint(AtomLevel::g, alpha.as_field());
        const JointState two_step =
            dispersive_interaction(dispersive_interaction(in, 0.3), 0.5);
        const JointState one_step = dispersive_interaction(in, 0.8);
        require((two_step.amps - one_step.amps).cwiseAbs().maxCoeff() <= 1e-14, "additivity");
        const CoherentField shifted = coherent_field(0.8 * std::polar(1.0, -0.8), kDefaultNmax);
        require(fidelity(conditional_field(one_step, AtomLevel::g), shifted.as_field()) >=
                    1.0 - 1e-9,
                "g-atom field shift");
    });

    h.run("pulses: phase gate equals the 2pi pulse on the qubit subspace", [&] {
        const int n_max = 3;
        for (AtomLevel level : {AtomLevel::g, AtomLevel::i}) {
            for (int n = 0; n <= 1; ++n) {
                const JointState basis = make_basis_state(level, n, n_max);
                const JointState via_pulse = cavity_pulse(basis, kTwoPi, omega_rabi);
                const JointState via_gate = conditional_phase_gate(basis, kPi);
                require((via_pulse.amps - via_gate.amps).cwiseAbs().maxCoeff() <= 1e-12,
                        "gate equivalence");
            }
        }
        RngStream rng = RngStream::substream(seed, 106);
        const JointState s = random_state(1, rng);
        require((conditional_phase_gate(s, 0.0).amps - s.amps).cwiseAbs().maxCoeff() == 0.0,
                "phi=0 identity");
    });

    h.run("decoherence: steady state of the jump process matches nbar/(1+2 nbar)", [&] {
        require_close(nbar_from_p1(0.05), 0.05 / 0.9, 1e-15, "closed form");
        const BathParams bath = BathParams::from_p1(1.0 / 0.13, 0.05);
        ProbeConfig probe = calibrated(
            {0.5 * kPi, 0.0, 0.25, 0.0, 1.0});
        int occupied = 0, total = 0;
        for (int k = 0; k < 4000; ++k) {
            RngStream rng = RngStream::substream(seed + 11, k);
            const int initial = rng.bernoulli(bath.p1) ? 1 : 0;
            const TrajectoryRecord rec = qnd_trajectory(bath, probe, 1.0, initial, rng);
            for (const ProbeEvent& pe : rec.probes) {
                occupied += pe.true_n;
                ++total;
            }
        }
        const double sigma = std::sqrt(0.05 * 0.95 / total);  // correlated draws; loose bound
        require_close(static_cast<double>(occupied) / total, 0.05, 6.0 * sigma, "occupancy");
    });

    h.run("decoherence: pulse-built probe reads the photon number exactly", [&] {
        const ProbeConfig probe = calibrated({0.5 * kPi, 0.0, 0.1, 0.0, 1.0});
        RngStream rng = RngStream::substream(seed, 107);
        for (int trial = 0; trial < 200; ++trial) {
            require(probe_photon(0, probe, rng) == AtomLevel::g, "vacuum must read g");
            require(probe_photon(1, probe, rng) == AtomLevel::e, "photon must read e");
        }
    });

    h.run("decoherence: identical seeds give identical trajectories", [&] {
        const BathParams bath = BathParams::from_p1(1.0 / 0.13, 0.05);
        const ProbeConfig probe = calibrated({0.5 * kPi, 0.0, 0.05, 0.01, 0.9});
        RngStream rng_a = RngStream::substream(seed, 108);
        RngStream rng_b = RngStream::substream(seed, 108);
        const TrajectoryRecord a = qnd_trajectory(bath, probe, 3.0, 0, rng_a);
        const TrajectoryRecord b = qnd_trajectory(bath, probe, 3.0, 0, rng_b);
        require(a.jumps.size() == b.jumps.size() && a.probes.size() == b.probes.size(),
                "event counts differ");
        for (std::size_t k = 0; k < a.jumps.size(); ++k) {
            require(a.jumps[k].time == b.jumps[k].time && a.jumps[k].kind == b.jumps[k].kind,
                    "jump sequence differs");
        }
        for (std::size_t k = 0; k < a.probes.size(); ++k) {
            require(a.probes[k].outcome == b.probes[k].outcome, "probe sequence differs");
        }
    });

    h.run("decoherence: damped Rabi maxima sit on the contrast envelope", [&] {
        const double t2 = 3e-5;
        for (int k = 1; k <= 8; ++k) {
            const double t = kTwoPi * k / omega_rabi;
            require_close(damped_rabi_probability(t, omega_rabi, t2),
                          0.5 + 0.5 * std::exp(-t / t2), 1e-9, "envelope");
        }
        for (int k = 0; k < 100; ++k) {
            const double t = k * 1e-6;
            require_close(damped_rabi_probability(t, omega_rabi, 1e18),
                          0.5 * (1.0 + std::cos(omega_rabi * t)), 1e-12, "T2 -> infinity");
        }
    });

    h.run("experiments: CNOT truth table, involution, and control integrity", [&] {
        ExperimentConfig cfg = default_config();
        cfg.ideal = true;
        const RamseyPhases phases = calibrate_cnot_phases(cfg.n_max, rabi_frequency(cfg.cavity));
        for (int control = 0; control <= 1; ++control) {
            for (AtomLevel target : {AtomLevel::g, AtomLevel::i}) {
                const CnotResult row = run_cnot(control, target, cfg);
                const AtomLevel expect =
                    control == 1 ? (target == AtomLevel::g ? AtomLevel::i : AtomLevel::g) : target;
                require(row.target_out == expect && row.control_out == control, "truth table row");
                require(row.outcome_probability >= 1.0 - 1e-12, "row must be deterministic");
                const JointState in = make_basis_state(target, control, cfg.n_max);
                const JointState twice =
                    cnot_map(cnot_map(in, phases, rabi_frequency(cfg.cavity)), phases,
                             rabi_frequency(cfg.cavity));
                require(fidelity(in, twice) >= 1.0 - 1e-12, "involution");
                for (std::size_t n = 0; n < row.photon_dist_in.size(); ++n) {
                    require_close(row.photon_dist_out[n], row.photon_dist_in[n], 1e-12,
                                  "control distribution");
                }
            }
        }
    });

    h.run("experiments: phase-gate fringes shift by pi with one photon", [&] {
        ExperimentConfig cfg = default_config();
        cfg.ideal = true;
        const ResultTable table = run_phase_gate_fringes(cfg);
        const double shift = std::strtod(table.meta("fringe_shift").c_str(), nullptr);
        require_close(std::abs(shift), kPi, 1e-6, "fringe shift");
    });

    h.run("experiments: Ramsey fringes match the two-level oracle", [&] {
        ExperimentConfig cfg = default_config();
        const ResultTable table = run_ramsey_fringes(cfg);
        const auto& p_e = table.column("p_e").numbers;
        const auto& oracle = table.column("p_e_expected").numbers;
        const auto& p_g = table.column("p_g").numbers;
        for (std::size_t k = 0; k < p_e.size(); ++k) {
            require_close(p_e[k], oracle[k], 1e-12, "oracle column");
            require_close(p_e[k] + p_g[k], 1.0, 1e-12, "probability balance");
        }
    });

    h.run("experiments: displacement composes like coherent amplitudes", [&] {
        const CoherentField start = coherent_field(0.4, kDefaultNmax);
        const FieldState displaced = inject_coherent(start.as_field(), Complex(-0.4, 0.0));
        require(fidelity(displaced, FieldState::vacuum(kDefaultNmax)) >= 1.0 - 1e-9,
                "alpha then -alpha is the vacuum");
        const FieldState built = inject_coherent(FieldState::vacuum(kDefaultNmax), Complex(0.3, 0.2));
        require(fidelity(built, coherent_field(Complex(0.3, 0.2), kDefaultNmax).as_field()) >=
                    1.0 - 1e-9,
                "vacuum displacement is a coherent state");
    });

    return h.results;
}

}  // namespace cqed

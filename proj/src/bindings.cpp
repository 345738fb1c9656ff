#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cqed/config.hpp"
#include "cqed/decoherence.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/experiments.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/numeric.hpp"
#include "cqed/pulses.hpp"
#include "cqed/table.hpp"
#include "cqed/validate.hpp"
#include "cqed/version.hpp"

namespace py = pybind11;
using namespace cqed;

namespace {

py::dict table_columns(const ResultTable& table) {
    py::dict out;
    for (const Column& col : table.columns) {
        if (col.is_text()) {
            out[col.name.c_str()] = col.labels;
        } else {
            out[col.name.c_str()] = py::array_t<double>(static_cast<py::ssize_t>(col.numbers.size()),
                                                        col.numbers.data());
        }
    }
    return out;
}

py::dict table_metadata(const ResultTable& table) {
    py::dict out;
    for (const auto& [key, value] : table.metadata) out[key.c_str()] = value;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Strong-coupling cavity QED simulator core";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "CqedError", PyExc_RuntimeError);

    py::enum_<AtomLevel>(m, "AtomLevel")
        .value("e", AtomLevel::e)
        .value("g", AtomLevel::g)
        .value("i", AtomLevel::i);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("substream", py::overload_cast<std::uint64_t, std::uint64_t>(&RngStream::substream),
                    py::arg("seed"), py::arg("index"))
        .def("next_u64", &RngStream::next_u64)
        .def("uniform", &RngStream::uniform)
        .def("bernoulli", &RngStream::bernoulli, py::arg("p"))
        .def("exponential", &RngStream::exponential, py::arg("rate"))
        .def_property_readonly("seed", &RngStream::seed)
        .def_property_readonly("counter", &RngStream::counter)
        .def_property_readonly_static("algorithm",
                                      [](py::object) { return RngStream::kAlgorithm; });

    py::class_<FieldState>(m, "FieldState")
        .def_readonly("n_max", &FieldState::n_max)
        .def_readonly("amps", &FieldState::amps)
        .def_static("vacuum", &FieldState::vacuum, py::arg("n_max"))
        .def_static("fock", &FieldState::fock, py::arg("n"), py::arg("n_max"))
        .def("squared_norm", &FieldState::squared_norm);

    py::class_<CoherentField>(m, "CoherentField")
        .def_readonly("alpha", &CoherentField::alpha)
        .def_readonly("n_max", &CoherentField::n_max)
        .def_readonly("amps", &CoherentField::amps)
        .def("as_field", &CoherentField::as_field);

    py::class_<JointState>(m, "JointState")
        .def_readonly("n_max", &JointState::n_max)
        .def_readonly("amps", &JointState::amps)
        .def("amp", py::overload_cast<AtomLevel, int>(&JointState::amp, py::const_),
             py::arg("level"), py::arg("n"))
        .def("squared_norm", &JointState::squared_norm);

    py::class_<MeasurementResult>(m, "MeasurementResult")
        .def_readonly("outcome", &MeasurementResult::outcome)
        .def_readonly("state", &MeasurementResult::state)
        .def_readonly("probability", &MeasurementResult::probability);

    m.def("make_basis_state", &make_basis_state, py::arg("level"), py::arg("n"), py::arg("n_max"));
    m.def("make_joint", &make_joint, py::arg("level"), py::arg("field"));
    m.def("superpose", &superpose, py::arg("terms"));
    m.def("coherent_field", &coherent_field, py::arg("alpha"), py::arg("n_max"));
    m.def("coherent_n_max_for", &coherent_n_max_for, py::arg("alpha"), py::arg("tol") = kLeakTol);
    m.def("fidelity", py::overload_cast<const JointState&, const JointState&>(&fidelity));
    m.def("fidelity", py::overload_cast<const FieldState&, const FieldState&>(&fidelity));
    m.def("fidelity", py::overload_cast<const CoherentField&, const CoherentField&>(&fidelity));
    m.def("fidelity", py::overload_cast<const FieldState&, const CoherentField&>(&fidelity));
    m.def("fidelity", py::overload_cast<const CoherentField&, const FieldState&>(&fidelity));
    m.def("conditional_field", &conditional_field, py::arg("state"), py::arg("level"));
    m.def("photon_distribution",
          py::overload_cast<const JointState&>(&photon_distribution), py::arg("state"));
    m.def("measure_atom", &measure_atom, py::arg("state"), py::arg("rng"));

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<>())
        .def_readwrite("omega", &CavityParams::omega)
        .def_readwrite("omega_eg", &CavityParams::omega_eg)
        .def_readwrite("g0", &CavityParams::g0)
        .def_readwrite("quality", &CavityParams::quality)
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("gamma", &CavityParams::gamma)
        .def_readwrite("waist", &CavityParams::waist)
        .def_readwrite("velocity", &CavityParams::velocity)
        .def_readwrite("dipole", &CavityParams::dipole)
        .def_readwrite("mode_volume", &CavityParams::mode_volume)
        .def_property_readonly("delta", &CavityParams::delta)
        .def("strongly_coupled", &CavityParams::strongly_coupled, py::arg("factor") = 10.0)
        .def("validate", &CavityParams::validate);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("frequencies", &Spectrum::frequencies)
        .def_readonly("intensity", &Spectrum::intensity);

    py::class_<DressedDoublet>(m, "DressedDoublet")
        .def_readonly("upper", &DressedDoublet::upper)
        .def_readonly("lower", &DressedDoublet::lower);

    m.def("kappa_from_quality", &kappa_from_quality, py::arg("omega"), py::arg("quality"));
    m.def("jc_splitting", &jc_splitting, py::arg("n"), py::arg("g0"));
    m.def("dressed_energies", &dressed_energies, py::arg("n"), py::arg("params"));
    m.def("interaction_time", &interaction_time, py::arg("waist"), py::arg("velocity"));
    m.def("rabi_frequency", &rabi_frequency, py::arg("params"));
    m.def("evolve_resonant", &evolve_resonant, py::arg("state"), py::arg("omega_rabi"), py::arg("t"));
    m.def("excited_probability", &excited_probability, py::arg("state"));
    m.def("frequency_grid", &frequency_grid, py::arg("start"), py::arg("stop"), py::arg("points"));
    m.def("vacuum_rabi_spectrum", &vacuum_rabi_spectrum, py::arg("params"), py::arg("atom_present"),
          py::arg("grid"));

    py::enum_<Transition>(m, "Transition")
        .value("cavity_eg", Transition::cavity_eg)
        .value("ramsey_eg", Transition::ramsey_eg)
        .value("ramsey_gi", Transition::ramsey_gi);

    py::enum_<RamseyPair>(m, "RamseyPair").value("eg", RamseyPair::eg).value("gi", RamseyPair::gi);

    py::class_<PulseSpec>(m, "PulseSpec")
        .def_readonly("transition", &PulseSpec::transition)
        .def_readonly("angle", &PulseSpec::angle)
        .def_readonly("phase", &PulseSpec::phase)
        .def_static("cavity", &PulseSpec::cavity, py::arg("angle"))
        .def_static("ramsey", &PulseSpec::ramsey, py::arg("pair"), py::arg("phase"))
        .def_static("ramsey_delayed", &PulseSpec::ramsey_delayed, py::arg("pair"),
                    py::arg("delta_omega"), py::arg("delay"));

    py::class_<DispersiveParams>(m, "DispersiveParams")
        .def(py::init<>())
        .def_readwrite("epsilon", &DispersiveParams::epsilon)
        .def_readwrite("delta", &DispersiveParams::delta)
        .def_readwrite("t_interaction", &DispersiveParams::t_interaction)
        .def_readwrite("omega_rabi_pos", &DispersiveParams::omega_rabi_pos)
        .def_readwrite("omega", &DispersiveParams::omega);

    py::class_<LightShiftDoublet>(m, "LightShiftDoublet")
        .def_readonly("upper", &LightShiftDoublet::upper)
        .def_readonly("lower", &LightShiftDoublet::lower);

    m.def("ramsey_pulse", &ramsey_pulse, py::arg("state"), py::arg("pair"), py::arg("phi"));
    m.def("cavity_pulse", &cavity_pulse, py::arg("state"), py::arg("angle"), py::arg("omega_rabi"));
    m.def("apply_pulse", &apply_pulse, py::arg("state"), py::arg("spec"), py::arg("omega_rabi"));
    m.def("dispersive_epsilon", &dispersive_epsilon, py::arg("params"));
    m.def("dispersive_interaction", &dispersive_interaction, py::arg("state"), py::arg("epsilon"));
    m.def("light_shift", &light_shift, py::arg("n"), py::arg("params"), py::arg("detuning_sign"));
    m.def("conditional_phase_gate", &conditional_phase_gate, py::arg("state"), py::arg("phi"));

    py::class_<BathParams>(m, "BathParams")
        .def(py::init<>())
        .def_readwrite("kappa", &BathParams::kappa)
        .def_readwrite("nbar", &BathParams::nbar)
        .def_readwrite("p1", &BathParams::p1)
        .def_static("from_p1", &BathParams::from_p1, py::arg("kappa"), py::arg("p1"))
        .def_static("from_nbar", &BathParams::from_nbar, py::arg("kappa"), py::arg("nbar"))
        .def("validate", &BathParams::validate);

    m.def("nbar_from_p1", &nbar_from_p1, py::arg("p1"));
    m.def("p1_from_nbar", &p1_from_nbar, py::arg("nbar"));

    py::enum_<JumpKind>(m, "JumpKind").value("birth", JumpKind::birth).value("death", JumpKind::death);

    py::class_<JumpEvent>(m, "JumpEvent")
        .def_readonly("time", &JumpEvent::time)
        .def_readonly("kind", &JumpEvent::kind);

    py::class_<ProbeEvent>(m, "ProbeEvent")
        .def_readonly("time", &ProbeEvent::time)
        .def_readonly("outcome", &ProbeEvent::outcome)
        .def_readonly("true_n", &ProbeEvent::true_n);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("jumps", &TrajectoryRecord::jumps)
        .def_readonly("probes", &TrajectoryRecord::probes)
        .def_readonly("duration", &TrajectoryRecord::duration)
        .def_readonly("seed", &TrajectoryRecord::seed)
        .def_readonly("initial_n", &TrajectoryRecord::initial_n)
        .def_readonly("final_n", &TrajectoryRecord::final_n)
        .def("occupied_time", &TrajectoryRecord::occupied_time)
        .def("death_count", &TrajectoryRecord::death_count);

    py::class_<ProbeConfig>(m, "ProbeConfig")
        .def(py::init<>())
        .def_readwrite("epsilon_per_photon", &ProbeConfig::epsilon_per_photon)
        .def_readwrite("r2_phase", &ProbeConfig::r2_phase)
        .def_readwrite("probe_interval", &ProbeConfig::probe_interval)
        .def_readwrite("dark_count_prob", &ProbeConfig::dark_count_prob)
        .def_readwrite("detection_efficiency", &ProbeConfig::detection_efficiency)
        .def("validate", &ProbeConfig::validate);

    m.def("probe_excited_probability", &probe_excited_probability, py::arg("photon_n"),
          py::arg("epsilon"), py::arg("r2_phase"));
    m.def("calibrate_r2_phase", &calibrate_r2_phase, py::arg("epsilon_per_photon"));
    m.def("calibrated", &calibrated, py::arg("probe"));
    m.def("probe_photon", &probe_photon, py::arg("photon_n"), py::arg("probe"), py::arg("rng"));
    m.def("qnd_trajectory", &qnd_trajectory, py::arg("bath"), py::arg("probe"), py::arg("duration"),
          py::arg("initial_n"), py::arg("rng"));
    m.def("damped_rabi_probability", &damped_rabi_probability, py::arg("t"), py::arg("omega_rabi"),
          py::arg("t2"));

    py::class_<ScanSpec>(m, "ScanSpec")
        .def(py::init<>())
        .def_readwrite("variable", &ScanSpec::variable)
        .def_readwrite("start", &ScanSpec::start)
        .def_readwrite("stop", &ScanSpec::stop)
        .def_readwrite("points", &ScanSpec::points);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("cavity", &ExperimentConfig::cavity)
        .def_readwrite("bath", &ExperimentConfig::bath)
        .def_readwrite("probe", &ExperimentConfig::probe)
        .def_readwrite("n_max", &ExperimentConfig::n_max)
        .def_readwrite("t2", &ExperimentConfig::t2)
        .def_readwrite("field_alpha", &ExperimentConfig::field_alpha)
        .def_readwrite("duration", &ExperimentConfig::duration)
        .def_readwrite("scan", &ExperimentConfig::scan)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("trajectories", &ExperimentConfig::trajectories)
        .def_readwrite("ideal", &ExperimentConfig::ideal)
        .def("validate", &ExperimentConfig::validate);

    py::class_<ResultTable>(m, "ResultTable")
        .def("columns", &table_columns)
        .def("metadata", &table_metadata)
        .def("rows", &ResultTable::rows)
        .def("to_csv", [](const ResultTable& table) { return to_csv(table); });

    py::class_<RamseyPhases>(m, "RamseyPhases")
        .def_readonly("first", &RamseyPhases::first)
        .def_readonly("second", &RamseyPhases::second);

    py::class_<CnotResult>(m, "CnotResult")
        .def_readonly("control_in", &CnotResult::control_in)
        .def_readonly("target_in", &CnotResult::target_in)
        .def_readonly("control_out", &CnotResult::control_out)
        .def_readonly("target_out", &CnotResult::target_out)
        .def_readonly("outcome_probability", &CnotResult::outcome_probability)
        .def_readonly("photon_dist_in", &CnotResult::photon_dist_in)
        .def_readonly("photon_dist_out", &CnotResult::photon_dist_out);

    py::class_<QndEnsembleStats>(m, "QndEnsembleStats")
        .def_readonly("trajectories", &QndEnsembleStats::trajectories)
        .def_readonly("occupancy_mean", &QndEnsembleStats::occupancy_mean)
        .def_readonly("occupancy_se", &QndEnsembleStats::occupancy_se)
        .def_readonly("dwell_mle", &QndEnsembleStats::dwell_mle)
        .def_readonly("births", &QndEnsembleStats::births)
        .def_readonly("deaths", &QndEnsembleStats::deaths)
        .def_readonly("probes", &QndEnsembleStats::probes)
        .def_readonly("probe_mismatches", &QndEnsembleStats::probe_mismatches);

    m.def("inject_coherent", &inject_coherent, py::arg("field"), py::arg("beta"));
    m.def("run_rabi_scan", &run_rabi_scan, py::arg("cfg"));
    m.def("run_mode_splitting", &run_mode_splitting, py::arg("cfg"));
    m.def("run_ramsey_fringes", &run_ramsey_fringes, py::arg("cfg"));
    m.def("run_phase_gate_fringes", &run_phase_gate_fringes, py::arg("cfg"));
    m.def("run_field_phase_experiment", &run_field_phase_experiment, py::arg("cfg"));
    m.def("calibrate_cnot_phases", &calibrate_cnot_phases, py::arg("n_max"), py::arg("omega_rabi"));
    m.def("cnot_map", &cnot_map, py::arg("state"), py::arg("phases"), py::arg("omega_rabi"));
    m.def("run_cnot", &run_cnot, py::arg("control_n"), py::arg("target"), py::arg("cfg"));
    m.def("run_cnot_table", &run_cnot_table, py::arg("cfg"));
    m.def("qnd_ensemble_stats",
          [](const BathParams& bath, const ProbeConfig& probe, double duration, int trajectories,
             std::uint64_t seed) {
              return qnd_ensemble_stats(bath, probe, duration, trajectories, seed);
          },
          py::arg("bath"), py::arg("probe"), py::arg("duration"), py::arg("trajectories"),
          py::arg("seed"));
    m.def("run_qnd", &run_qnd, py::arg("cfg"));

    m.def("default_config", &default_config);
    m.def("load_config", &load_config, py::arg("path"));
    m.def("config_documentation", &config_documentation);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("detail", &CheckResult::detail);

    m.def("run_validation", &run_validation, py::arg("seed"));
}

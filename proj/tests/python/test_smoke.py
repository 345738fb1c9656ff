import math

import numpy as np
import pytest

import cavityqed as cq


OMEGA_RABI = 2.0 * 2.0 * math.pi * 47e3


def test_pi_pulse_moves_the_excitation_into_the_field():
    e0 = cq.make_basis_state(cq.AtomLevel.e, 0, 5)
    out = cq.cavity_pulse(e0, math.pi, OMEGA_RABI)
    assert abs(out.amp(cq.AtomLevel.g, 1) - 1.0) < 1e-12
    assert cq.excited_probability(out) < 1e-24


def test_rabi_law_on_a_grid():
    e0 = cq.make_basis_state(cq.AtomLevel.e, 0, 5)
    for t in np.linspace(0.0, 3.0 * 2.0 * math.pi / OMEGA_RABI, 101):
        p = cq.excited_probability(cq.evolve_resonant(e0, OMEGA_RABI, float(t)))
        assert abs(p - 0.5 * (1.0 + math.cos(OMEGA_RABI * t))) < 1e-12


def test_coherent_state_and_fidelity():
    field = cq.coherent_field(1.0, 20)
    assert abs(abs(field.amps[0]) - math.exp(-0.5)) < 1e-12
    minus = cq.coherent_field(-1.0, 20)
    assert abs(cq.fidelity(field, minus) - math.exp(-4.0)) < 1e-9
    with pytest.raises(RuntimeError):
        cq.coherent_field(0.3, 1)


def test_cnot_truth_table():
    cfg = cq.default_config()
    cfg.ideal = True
    rows = {
        (0, cq.AtomLevel.g): cq.AtomLevel.g,
        (0, cq.AtomLevel.i): cq.AtomLevel.i,
        (1, cq.AtomLevel.g): cq.AtomLevel.i,
        (1, cq.AtomLevel.i): cq.AtomLevel.g,
    }
    for (control, target), expected in rows.items():
        result = cq.run_cnot(control, target, cfg)
        assert result.target_out == expected
        assert result.control_out == control


def test_qnd_trajectories_are_reproducible():
    bath = cq.BathParams.from_p1(1.0 / 0.13, 0.05)
    probe = cq.ProbeConfig()
    probe.epsilon_per_photon = math.pi / 2
    probe.probe_interval = 0.1
    probe = cq.calibrated(probe)
    a = cq.qnd_trajectory(bath, probe, 2.0, 0, cq.RngStream.substream(9, 0))
    b = cq.qnd_trajectory(bath, probe, 2.0, 0, cq.RngStream.substream(9, 0))
    assert [j.time for j in a.jumps] == [j.time for j in b.jumps]
    assert [p.outcome for p in a.probes] == [p.outcome for p in b.probes]


def test_experiment_tables_expose_columns_and_metadata():
    cfg = cq.default_config()
    cfg.scan.points = 41
    table = cq.run_ramsey_fringes(cfg)
    cols = table.columns()
    assert set(cols) >= {"phi", "p_e", "p_g", "p_e_expected"}
    np.testing.assert_allclose(cols["p_e"] + cols["p_g"], 1.0, atol=1e-12)
    np.testing.assert_allclose(cols["p_e"], np.sin(0.5 * cols["phi"]) ** 2, atol=1e-12)
    meta = table.metadata()
    assert meta["experiment"] == "ramsey"
    assert "config.seed" in meta
    assert table.to_csv().startswith("#")

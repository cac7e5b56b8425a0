"""End-to-end smoke tests for the Python bindings.

These exercise the binding surface, not the numerics; the C++ unit and
acceptance suites carry the quantitative checks.
"""

import json
import math

import numpy as np
import pytest

import cqnc


def matched_params():
    return cqnc.preset_base_params()


def test_version():
    assert cqnc.__version__ == "1.0.0"


def test_parameter_construction_and_validation():
    p = matched_params()
    p.check()  # canonical set must be self-consistent
    assert p.mechanical.omega_m == pytest.approx(2.0 * math.pi * 3.0e5)
    assert p.atomic.coupling_G == p.coupling_g

    bad = cqnc.MechanicalParams()
    bad.omega_m = -1.0
    bad.gamma_m = 1.0
    with pytest.raises(ValueError):
        bad.check()

    with pytest.raises(ValueError):
        cqnc.SqueezingParams.general(1.0, 5.0, 0.0).check()  # above saturation


def test_reference_limits():
    mech = matched_params().mechanical
    assert cqnc.sql(mech.omega_m, mech) == pytest.approx(1.0, rel=1e-12)
    for ratio in (0.7, 1.0, 1.3):
        omega = ratio * mech.omega_m
        assert cqnc.ultimate_limit(omega, mech) <= cqnc.sql(omega, mech) * (1 + 1e-12)


def test_breakdown_sums_to_total():
    p = matched_params()
    sq = cqnc.SqueezingParams.pure(10.0, 0.3)
    sb = cqnc.spectrum_exact(1.02 * p.mechanical.omega_m, p, sq)
    parts = sb.thermal + sb.field + sb.backaction + sb.atomic + sb.interference
    assert sb.total == pytest.approx(parts, rel=1e-13)
    assert sb.backaction == 0.0  # matched parameters null the backaction


def test_solver_matches_closed_form():
    p = matched_params()
    sq = cqnc.SqueezingParams.pure(10.0, 0.7)
    omega = 1.03 * p.mechanical.omega_m
    closed = cqnc.spectrum_exact(omega, p, sq).total
    solved = cqnc.estimator_spectrum(omega, p, sq).total
    assert solved == pytest.approx(closed, rel=1e-9)


def test_matrix_shapes():
    p = matched_params()
    drift = np.asarray(cqnc.build_drift(p))
    assert drift.shape == (6, 6)
    assert drift[0, 1] == pytest.approx(p.mechanical.omega_m)

    # pybind11 maps the fixed-size row vector to a 1-D array.
    weights = np.asarray(cqnc.estimator_weights(1.1 * p.mechanical.omega_m, p))
    assert weights.shape == (5,)
    assert weights[0] == pytest.approx(1.0, rel=1e-9)  # unit force gain

    report = cqnc.stability(p)
    assert report.stable
    assert len(report.eigenvalues) == 6


def test_validity_report():
    p = matched_params()
    wide = 100.0 * p.cavity.kappa
    report = cqnc.validate(p, cqnc.SqueezingParams.pure(10.0, 0.0, wide, wide))
    assert report.all_pass()
    assert any(c.name == "mechanical_quality" for c in report.checks)

    # Unspecified squeezer bandwidths cannot justify the white-noise limit.
    narrow = cqnc.validate(p, cqnc.SqueezingParams.pure(10.0, 0.0))
    failed = {c.name for c in narrow.checks if not c.pass_}
    assert failed == {"white_noise_bandwidths"}


def test_minimizer():
    res = cqnc.minimize_numeric(lambda x: (x - 3.0) ** 2 + 2.0, -10.0, 10.0)
    # Comparison-based minimizers localize a quadratic minimum only to about
    # sqrt(machine epsilon) in x; the value converges quadratically faster.
    assert res.x == pytest.approx(3.0, abs=1e-7)
    assert res.value == pytest.approx(2.0, abs=1e-12)


def test_sweep_roundtrip(tmp_path):
    spec = cqnc.SweepSpec()
    spec.params = matched_params()
    spec.squeezing = cqnc.SqueezingParams.pure(10.0, 0.0)
    spec.thermal = cqnc.ThermalModel.high_temperature
    spec.engine = cqnc.Engine.zero_detuning
    spec.axis = cqnc.SweepAxis.frequency
    grid = cqnc.SweepGrid()
    grid.minimum, grid.maximum, grid.count = 0.95, 1.05, 21
    spec.grid = grid
    spec.label = "smoke"
    result = cqnc.run_sweep(spec)
    assert result.axis_name == "omega_ratio"
    assert len(result.axis) == 21
    total = result.column("total")
    direct = cqnc.spectrum_zero_detuning(
        result.axis[10] * spec.params.mechanical.omega_m,
        spec.params,
        spec.squeezing,
        cqnc.ThermalModel.high_temperature,
    ).total
    assert total[10] == pytest.approx(direct, rel=1e-13)

    out = tmp_path / "smoke.csv"
    cqnc.emit_table(result, "csv", str(out))
    header = out.read_text().splitlines()[0]
    assert header.startswith("omega_ratio,total,")


def test_preset_run_and_metadata():
    result = cqnc.run_preset("fig2b")
    assert len(result.axis) == 2001
    assert result.column_names == ["n0", "n10", "n100", "sql"]
    meta = json.loads(result.metadata_json)
    assert meta["preset"] == "fig2b"
    assert meta["curves"]["n10"]["squeezing_n"] == 10.0
    with pytest.raises(ValueError):
        cqnc.run_preset("fig9")


def test_config_from_json_text():
    doc = {
        "mechanical": {"frequency_hz": 3.0e5, "damping_hz": 3.0e-2,
                       "temperature_k": 0.0},
        "cavity": {"linewidth_hz": 1.0e6, "single_photon_coupling_hz": 300.0},
        "coupling": {"mode": "fixed", "fixed_hz": 1000.0},
        "squeezing": {"n": 10.0, "phi_rad": 0.0},
        "engine": "zero_detuning",
        "sweep": {"axis": "frequency", "min": 0.9, "max": 1.1, "count": 11},
        "label": "pysmoke",
    }
    spec = cqnc.config_from_json_text(json.dumps(doc))
    assert spec.label == "pysmoke"
    assert spec.params.coupling_g == pytest.approx(2.0 * math.pi * 1000.0)
    result = cqnc.run_sweep(spec)
    assert len(result.axis) == 11

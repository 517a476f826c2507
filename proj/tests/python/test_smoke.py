"""Smoke tests of the python bindings: a thin pass over every main surface."""

import math

import numpy as np
import pytest

import rancca


def test_version():
    assert rancca.__version__


def test_standardize_known_column():
    values, record = rancca.standardize(np.array([[1.0], [2.0], [3.0]]))
    assert record.columns[0].mean == pytest.approx(2.0)
    assert record.columns[0].stddev == pytest.approx(math.sqrt(2.0 / 3.0))
    assert values[:, 0] == pytest.approx([-1.224744871391589, 0.0, 1.224744871391589])


def test_standardize_rejects_constant_column():
    with pytest.raises(rancca.DegenerateColumnError):
        rancca.standardize(np.array([[5.0], [5.0], [5.0]]), ["flat"])


def test_canonical_correlation_hand_value():
    u = np.array([1.0, 2.0, 3.0])
    v = np.array([1.0, 2.0, 4.0])
    assert rancca.canonical_correlation(u, v) == pytest.approx(math.sqrt(27.0 / 28.0))


def test_fit_reduces_to_pearson_at_p1_q1():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(40, 1))
    y = -x + 0.5 * rng.normal(size=(40, 1))
    data = rancca.PairedDataset.from_matrices(
        x, y, ["x0"], ["y0"], rancca.Arrangement.CrossCell, True
    )
    model = rancca.fit(data)
    expected = abs(np.corrcoef(x[:, 0], y[:, 0])[0, 1])
    assert model.rho[0] == pytest.approx(expected, abs=1e-10)


def test_full_pipeline(tmp_path):
    config = rancca.SimConfig()
    config.hours = 168
    trace = rancca.simulate(config)
    assert len(trace.shutdown_mask) == 168
    assert rancca.derive_shutdown_mask(config, trace.offered) == trace.shutdown_mask

    coverage_csv, capacity_csv = rancca.export_trace(trace, tmp_path)
    capacity = rancca.load_csv(capacity_csv, "capacity")
    coverage = rancca.load_csv(coverage_csv, "coverage")
    assert capacity.rows == 168

    data = rancca.pair_cross_cell(
        capacity,
        coverage,
        ["unavailable_time", "max_dl_tx_power", "avg_users"],
        ["dl_prb", "ul_prb", "throughput", "avg_users"],
    )
    assert (data.p, data.q) == (3, 4)

    with pytest.raises(rancca.SingularCovarianceError):
        rancca.fit(data)  # unavailable_time and tx power are exactly collinear

    model = rancca.fit(data, ridge=1e-6)
    assert 0.8 <= model.rho[0] <= 1.0

    report = rancca.build_report(model, data)
    text = rancca.render_json(report)
    assert text == rancca.render_json(rancca.build_report(model, data))
    parsed = rancca.parse_report_json(text)
    assert parsed.rho1 == report.rho1

    loadings = rancca.loadings(model, data, 0)
    strongest = int(np.argmax(np.abs(loadings.x_within)))
    assert data.x_labels[strongest] == "avg_users"


def test_oracle_agrees_with_solver():
    rng = np.random.default_rng(11)
    latent = rng.normal(size=(50, 2))
    x = latent + 0.5 * rng.normal(size=(50, 2))
    y = latent @ rng.normal(size=(2, 2)) + 0.5 * rng.normal(size=(50, 2))
    data = rancca.PairedDataset.from_matrices(
        x, y, ["x0", "x1"], ["y0", "y1"], rancca.Arrangement.CrossCell, True
    )
    solver = rancca.fit(data).rho[0]
    brute = rancca.grid_search_max_correlation(data.x, data.y, 2000)
    assert solver == pytest.approx(brute, abs=1e-3)


def test_alignment_error_maps_to_python():
    a = rancca.KpiFrame("a", [0, 1], [rancca.KpiColumn("k", values=[1.0, 2.0])])
    b = rancca.KpiFrame("b", [10, 11], [rancca.KpiColumn("k", values=[3.0, 4.0])])
    with pytest.raises(rancca.AlignmentError):
        rancca.align([a, b])
    assert issubclass(rancca.AlignmentError, rancca.Error)

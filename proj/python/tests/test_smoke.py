import json
import math

import pytest

import chaoskit as ck


def test_hermite_values():
    assert ck.hermite_1d(2, 1.5, 0.5) == pytest.approx(0.25 - 1.5)
    assert ck.hermite_multi([1, 2], 2.0, [1.0, 1.0]) == pytest.approx(-1.0)
    assert ck.complex_power_expectation([1, 2], 2.0, [1.0, 1.0]) == pytest.approx(-1.0)


def test_gauss_hermite_moments():
    nodes, weights = ck.gauss_hermite(12)
    assert sum(weights) == pytest.approx(1.0)
    assert sum(w * x**4 for x, w in zip(nodes, weights)) == pytest.approx(3.0)


def test_series_norms_and_semigroup():
    h = ck.HermiteSeries(1.0, 1)
    h.set([1], 1.0)
    assert ck.lp_norm(h, 2.0)["value"] == pytest.approx(1.0)
    assert ck.lp_norm(h, 1.0)["value"] == pytest.approx(math.sqrt(2 / math.pi))
    h.set([2], 3.0)
    assert ck.ou_apply(h, math.log(2)).coefficient([2]) == pytest.approx(0.75)
    assert ck.chaos_project(h, 2).terms() == {(2,): 3.0}
    rep = ck.check_hypercontractivity(ck.random_series(4, 1.0, 2, 3, 3), 2.0, 4.0, 0.5 * math.log(3))
    assert rep["passed"]


def test_widder_martingales():
    pair = ck.Measure([(0.5, [-1.0]), (0.5, [1.0])])
    assert pair.dim == 1 and len(pair) == 2
    assert ck.widder_martingale(pair, 1.0, [0.3]) == pytest.approx(math.exp(-0.5) * math.cosh(0.3))
    dipole = ck.Measure([(1.0, [1.0]), (-1.0, [-1.0])])
    phi = 0.5 * math.erfc(-1.0 / math.sqrt(2))
    assert ck.widder_l1_norm(dipole, 1.0)["value"] == pytest.approx(2 * (2 * phi - 1), rel=1e-9)
    assert ck.check_l1_norm_identity(dipole, [0.5, 5.0, 50.0])["passed"]
    assert ck.recover_measure_cf(pair, 1.0, [2.0]).real == pytest.approx(math.cos(2.0), abs=1e-9)
    assert ck.pollard_closed_form(1.0, 2.0) == pytest.approx(math.exp(1.0) / math.sqrt(2))
    assert ck.check_pollard_divergence()["passed"]


def test_runner(tmp_path):
    status, out, err = ck.run(["--output-dir", str(tmp_path), "pollard"])
    assert status == 0, err
    report = json.loads((tmp_path / "pollard.json").read_text())
    assert report["schema_version"] == ck.SCHEMA_VERSION
    assert report["seed"] == 20111223
    status, _, _ = ck.run(["--output-dir", str(tmp_path), "nonsense"])
    assert status == 2

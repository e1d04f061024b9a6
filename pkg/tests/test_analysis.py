import pytest

from savings_dynamics import analysis
from savings_dynamics.errors import ParameterError
from savings_dynamics.process import ProcessParams, chaotic_params

P2 = ProcessParams(r=-0.5, v1=1000.0, v2=500.0, rho=1500.0)
CFG = chaotic_params(2.0)


def test_detect_two_cycle():
    rep = analysis.detect_cycle(P2, 0.0, max_iter=5000)
    assert rep.found and rep.period == 2
    got = sorted(rep.cycle_points)
    assert got[0] == pytest.approx(4000.0 / 3.0, abs=1e-9)
    assert got[1] == pytest.approx(5000.0 / 3.0, abs=1e-9)
    assert rep.residual <= 1e-9


def test_detect_fixed_point():
    p = ProcessParams(r=-0.5, v1=500.0, v2=500.0, rho=1500.0)
    rep = analysis.detect_cycle(p, 0.0, max_iter=5000)
    assert rep.found and rep.period == 1
    assert rep.cycle_points[0] == pytest.approx(1000.0, abs=1e-9)


def test_detect_cycle_validation():
    with pytest.raises(ParameterError):
        analysis.detect_cycle(P2, 0.0, tol=-1.0)
    with pytest.raises(ParameterError):
        analysis.detect_cycle(P2, 0.0, max_iter=0)


def test_detect_cycle_inconclusive_budget():
    rep = analysis.detect_cycle(P2, 0.0, max_iter=40, max_period=1000)
    assert rep.status in ("found", "inconclusive")  # cannot cover 1000 periods in 40 steps
    if rep.status == "inconclusive":
        assert not rep.found


def test_omega_two_clusters():
    oa = analysis.omega_limit_approx(P2, 0.0, burn_in=200, samples=500, resolution=1.0)
    assert len(oa.points) == 2
    assert oa.points[0] == pytest.approx(4000.0 / 3.0, abs=1e-6)
    assert oa.points[1] == pytest.approx(5000.0 / 3.0, abs=1e-6)


def test_omega_separation_invariant():
    oa = analysis.omega_limit_approx(CFG, 1450.0, burn_in=2000, samples=5000, resolution=2.5)
    pts = oa.points
    assert all(b - a > oa.resolution for a, b in zip(pts, pts[1:]))


def test_omega_validation():
    with pytest.raises(ParameterError):
        analysis.omega_limit_approx(P2, 0.0, burn_in=10, samples=10, resolution=0.0)


def test_classify_two_cycle():
    verdict = analysis.classify_dichotomy(P2, max_iter=5000)
    assert verdict.kind == "periodic"
    assert verdict.periods == (2,)
    assert len(verdict.cycles) <= 2


def test_classify_equal_deposits():
    p = ProcessParams(r=-0.5, v1=500.0, v2=500.0, rho=1500.0)
    verdict = analysis.classify_dichotomy(p, max_iter=5000)
    assert verdict.kind == "periodic"
    assert verdict.periods == (1,)


def test_classify_chaotic():
    verdict = analysis.classify_dichotomy(CFG)
    assert verdict.kind == "cantor_like"
    counts = verdict.evidence["cluster_counts"]
    assert all(a < b for a, b in zip(counts, counts[1:]))


def test_sensitivity_wide_epsilon():
    # interval covers the threshold from step one; full separation still
    # takes ~50 splits because the float gap below eta closes geometrically
    lo, hi = CFG.interval_K()
    rep = analysis.sensitivity_probe(CFG, 1450.0, hi - lo, max_iter=100)
    assert rep.succeeded
    assert rep.witness_k <= 60
    assert abs(rep.witness_s0prime - 1450.0) <= hi - lo


def test_sensitivity_eta_value():
    rep = analysis.sensitivity_probe(CFG, 1450.0, 1e-6)
    assert rep.eta == 500.0  # 500 * b * (1 - 1/b) at b = 2


def test_sensitivity_validation():
    with pytest.raises(ParameterError):
        analysis.sensitivity_probe(CFG, 1450.0, 0.0)


def test_visit_frequency_full_line():
    rep = analysis.visit_frequency(P2, 321.0, 0.0, float("inf"), 100)
    assert rep.count == 100 and rep.freq == 1.0
    assert rep.predicted is None


def test_visit_frequency_prediction_attached():
    rep = analysis.visit_frequency(CFG, 1450.0, 1400.0, 1600.0, 150)
    assert rep.predicted is not None
    assert 0.0 <= rep.predicted.predicted <= 1.0
    assert 0 <= rep.count <= rep.N


def test_visit_frequency_validation():
    with pytest.raises(ParameterError):
        analysis.visit_frequency(P2, 0.0, 10.0, 5.0, 100)
    with pytest.raises(ParameterError):
        analysis.visit_frequency(P2, 0.0, 0.0, 1.0, 0)

import numpy as np
import pytest

from savings_dynamics import semiconjugacy as sc
from savings_dynamics.errors import DomainError, ParameterError, PrecisionUnreachableError
from savings_dynamics.process import chaotic_params
from savings_dynamics.words import GOLDEN_ALPHA

CFG = chaotic_params(2.0)
GS = sc.build_gap_system(b=2.0, order=60)


def test_first_gap():
    i = list(GS.ks).index(1)
    assert GS.lengths[i] == pytest.approx(0.5)  # eps_1 = 1 - 1/b
    assert GS.points[i] == pytest.approx(GOLDEN_ALPHA, abs=1e-15)


def test_build_validation():
    with pytest.raises(ParameterError):
        sc.build_gap_system(order=0)
    with pytest.raises(ParameterError):
        sc.build_gap_system(b=1.0)
    with pytest.raises(PrecisionUnreachableError):
        sc.build_gap_system(order=10**6)


def test_gap_mass_identity():
    for order in (10, 40, 60):
        gs = sc.build_gap_system(b=2.0, order=order)
        assert abs(gs.lengths.sum() - (1.0 - 2.0**-order)) <= 1e-12


def test_ordering_pairs():
    gs = sc.build_gap_system(b=2.0, order=40)
    # gaps sorted by left endpoint must be ordered like their orbit points;
    # truncated neighbours abut, hence <=
    assert np.all(np.diff(gs.points) > 0)
    for i in range(len(gs.points) - 1):
        assert gs.sups[i] <= gs.infs[i + 1] + 1e-15


def test_gaps_disjoint():
    assert np.all(GS.infs[1:] - GS.sups[:-1] >= -1e-15)


def test_h_endpoints_and_first_gap():
    assert sc.h_evaluate(GS, 0.0) == 0.0
    assert sc.h_evaluate(GS, 1.0) == 1.0
    i = list(GS.ks).index(1)
    mid = 0.5 * (GS.infs[i] + GS.sups[i])
    assert sc.h_evaluate(GS, mid) == pytest.approx(GOLDEN_ALPHA, abs=1e-15)


def test_h_monotone_grid():
    xs = np.linspace(0.0, 1.0, 10_001)
    vals = [sc.h_evaluate(GS, float(x)) for x in xs]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_h_domain():
    with pytest.raises(DomainError):
        sc.h_evaluate(GS, -0.1)


def test_h_constant_on_gaps():
    # only gaps wider than float resolution have an interior to sample
    for i in range(len(GS.ks)):
        lo, hi = GS.infs[i], GS.sups[i]
        if hi - lo < 1e-12:
            continue
        v = sc.h_evaluate(GS, 0.5 * (lo + hi))
        assert sc.h_evaluate(GS, lo + 0.25 * (hi - lo)) == v
        assert v == GS.points[i]


def test_residual_small_outside_band():
    g = CFG.normalized_map()
    worst = 0.0
    for x in np.linspace(0.001, 0.999, 1000):
        r = sc.semiconjugacy_residual(GS, g, float(x))
        if r is not None:
            worst = max(worst, r)
    assert worst <= 2.0 * GS.tail_mass + 1e-9


def test_residual_band_is_inconclusive():
    g = CFG.normalized_map()
    assert sc.semiconjugacy_residual(GS, g, g.breakpoint) is None


def test_residual_at_zero_knife_edge():
    # g(0) = delta is exactly the right endpoint of the first gap.  Stored
    # gaps abut under truncation, so delta resolves into the *next* gap and
    # the residual equals the orbit spacing just above alpha — the local
    # resolution of the truncated family, not a defect of h itself.
    g = CFG.normalized_map()
    r = sc.semiconjugacy_residual(GS, g, 0.0)
    assert r is not None
    # h(delta) sits at or just above alpha, within the local orbit spacing
    assert GOLDEN_ALPHA <= sc.h_evaluate(GS, CFG.delta) <= GOLDEN_ALPHA + 0.05
    assert r <= 0.05


def test_breakpoint_from_gaps():
    got = sc.breakpoint_from_gaps(GS)
    assert abs(got - CFG.b * (1.0 - CFG.delta)) <= 2.0 * GS.tail_mass + 1e-12
    g20 = sc.breakpoint_from_gaps(sc.build_gap_system(b=2.0, order=20))
    g40 = sc.breakpoint_from_gaps(sc.build_gap_system(b=2.0, order=40))
    assert abs(g20 - g40) <= 2.0**-18


def test_predict_disjoint_and_full():
    lo, hi = CFG.interval_K()
    assert sc.predict_frequency(GS, CFG, 0.0, lo - 1.0).predicted == 0.0
    assert sc.predict_frequency(GS, CFG, lo, hi).predicted == pytest.approx(1.0, abs=1e-12)


def test_predict_complement_sums_to_one():
    lo, hi = CFG.interval_K()
    mid = 1600.0
    left = sc.predict_frequency(GS, CFG, lo, mid)
    right = sc.predict_frequency(GS, CFG, mid, hi)
    budget = 2.0 * (left.truncation_error + right.truncation_error) + 1e-12
    assert abs(left.predicted + right.predicted - 1.0) <= budget


def test_predict_reference_window():
    # [1400, 1600] pulls back to the rotation arc (alpha^2, alpha), of length
    # alpha - alpha^2 = sqrt(5) - 2
    pred = sc.predict_frequency(GS, CFG, 1400.0, 1600.0)
    assert pred.predicted == pytest.approx(5.0**0.5 - 2.0, abs=1e-9)


def test_predict_rejects_empty():
    with pytest.raises(ParameterError):
        sc.predict_frequency(GS, CFG, 1600.0, 1400.0)

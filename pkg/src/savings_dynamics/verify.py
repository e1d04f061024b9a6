"""Self-verification suite: re-runs every module's documented invariants at
default budgets and reports per-check timing.

The suite doubles as a negative-control harness: forcing tol=0 must make the
tolerance-based checks fail, and a coarse gap-system truncation (for example
order 5) must make the semiconjugacy residual check fail loudly rather than
silently degrade.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import words
from .analysis import (
    classify_dichotomy,
    detect_cycle,
    omega_limit_approx,
    sensitivity_probe,
    visit_frequency,
)
from .process import (
    ProcessParams,
    absorbing_bound,
    chaotic_params,
    closed_form,
    conjugacy_L,
    normalized_step,
    simulate,
    step,
    transient_bound,
)
from .semiconjugacy import (
    breakpoint_from_gaps,
    build_gap_system,
    h_evaluate,
    predict_frequency,
    semiconjugacy_residual,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str


def _check(name: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"exception: {exc!r}"
    return CheckResult(name=name, passed=ok, seconds=time.perf_counter() - t0, detail=detail)


def run_checks(tol: float = 1e-9, gap_order: int = 60) -> list[CheckResult]:
    """Run the full invariant suite; returns one result per check."""
    cfg = chaotic_params(2.0)
    p2 = ProcessParams(r=-0.5, v1=1000.0, v2=500.0, rho=1500.0)
    rp = words.RotationParams()
    checks = []

    def word_prefix():
        w200 = words.fibonacci_word(200)
        ok = all(words.fibonacci_word(n) == w200[:n] for n in (1, 2, 3, 50, 199))
        return ok, "prefix property on sampled lengths"

    checks.append(_check("words.prefix", word_prefix))

    def word_coding():
        n = 2000
        coding = words.rotation_coding(rp, words.GOLDEN_ALPHA, n)
        target = words.fibonacci_word(n)
        ok = all(c - 1 == int(t) for c, t in zip(coding, target))
        return ok, f"coding of the orbit of alpha matches the word, n={n}"

    checks.append(_check("words.coding", word_coding))

    def word_rotation_drift():
        x = 0.0
        worst = 0.0
        for n in range(1, 10_001):
            x = words.rotation_step(x, rp)
            worst = max(worst, abs(x - words.rotation_iterate(rp, 0.0, n)))
        return worst <= 1e-12, f"max drift over 1e4 repeated steps = {worst:.3e}"

    checks.append(_check("words.rotation_drift", word_rotation_drift))

    def branch_contraction():
        worst_ulps = 0.0
        for x, y in [(0.0, 100.0), (100.0, 1499.0), (1500.0, 4000.0), (1600.0, 1600.5)]:
            got = abs(step(p2, x) - step(p2, y))
            want = (1.0 + p2.r) * abs(y - x)
            if want > 0:
                worst_ulps = max(worst_ulps, abs(got - want) / math.ulp(want))
        return worst_ulps <= 4.0, f"worst deviation = {worst_ulps:.2f} ulps"

    checks.append(_check("process.branch_contraction", branch_contraction))

    def absorption():
        for p in (p2, cfg.process_params(), ProcessParams(-0.25, 0.0, 100.0, 50.0)):
            m = absorbing_bound(p)
            for x in np.linspace(0.0, m, 101):
                if not 0.0 <= step(p, x) <= m:
                    return False, f"escape at x={x} for {p}"
            s0 = 10.0 * m
            bound = transient_bound(p, s0)
            orbit = simulate(p, s0, bound).values
            if orbit[-1] > m:
                return False, f"transient bound {bound} too small for {p}"
        return True, "absorbing interval and transient entry bound"

    checks.append(_check("process.absorption", absorption))

    def closed_form_equiv():
        v, r = 500.0, -0.5
        p = ProcessParams(r=r, v1=v, v2=v, rho=1.0)
        worst = 0.0
        for s0 in (0.0, 123.456, 1000.0, 3999.0):
            series = simulate(p, s0, 1000).values
            for n in (0, 1, 7, 100, 1000):
                want = closed_form(v, r, s0, n)
                worst = max(worst, abs(series[n] - want) / max(1.0, abs(want)))
        return worst <= max(tol, 0.0), f"worst relative deviation = {worst:.3e}"

    checks.append(_check("process.closed_form", closed_form_equiv))

    def conjugacy_residual():
        p = cfg.process_params()
        g = cfg.normalized_map()
        lo, hi = cfg.interval_K()
        worst = 0.0
        for x in np.linspace(lo, hi, 1000):
            worst = max(worst, abs(conjugacy_L(cfg, step(p, x)) - normalized_step(g, conjugacy_L(cfg, x))))
        return worst <= max(tol, 0.0), f"max |L(f(x)) - g(L(x))| = {worst:.3e}"

    checks.append(_check("process.conjugacy_residual", conjugacy_residual))

    def monotone_branches():
        g = cfg.normalized_map()
        xs = np.linspace(0.0, 1.0, 2001)
        for side in (xs[xs < g.breakpoint], xs[xs >= g.breakpoint]):
            vals = [normalized_step(g, float(x)) for x in side]
            if any(b <= a for a, b in zip(vals, vals[1:])):
                return False, "normalized branch not strictly increasing"
        for a, b in [(0.0, 1000.0), (1500.0, 2500.0)]:
            if step(p2, b) <= step(p2, a):
                return False, "process branch not strictly increasing"
        return True, "both maps strictly increasing on each branch"

    checks.append(_check("process.monotone_branches", monotone_branches))

    gs = build_gap_system(b=cfg.b, order=gap_order)
    gs40 = build_gap_system(b=cfg.b, order=40)

    def gap_ordering():
        # truncated neighbours abut exactly, hence <= rather than <
        for i, j in combinations(range(len(gs40.points)), 2):
            if not gs40.sups[i] <= gs40.infs[j] + 1e-15:
                return False, f"order violated for gap pair ({i},{j})"
        return True, f"all {len(gs40.points) * 39 // 2} ordered pairs consistent"

    checks.append(_check("gaps.ordering", gap_ordering))

    def gap_mass():
        total = float(gs40.lengths.sum())
        dev = abs(total - (1.0 - cfg.b ** (-40.0)))
        return dev <= 1e-12, f"|sum eps_k - (1 - b^-K)| = {dev:.3e}"

    checks.append(_check("gaps.mass", gap_mass))

    def h_monotone():
        xs = np.linspace(0.0, 1.0, 10_001)
        vals = [h_evaluate(gs, float(x)) for x in xs]
        ok = all(b >= a for a, b in zip(vals, vals[1:]))
        return ok, "h nondecreasing on a 1e4-point grid"

    checks.append(_check("semiconjugacy.h_monotone", h_monotone))

    def residual():
        g = cfg.normalized_map()
        worst = 0.0
        skipped = 0
        for x in np.linspace(0.001, 0.999, 1000):
            r = semiconjugacy_residual(gs, g, float(x))
            if r is None:
                skipped += 1
                continue
            worst = max(worst, r)
        bound = 2.0 * gs.tail_mass + max(tol, 0.0)
        return worst <= bound, f"max residual {worst:.3e} vs bound {bound:.3e} ({skipped} excluded)"

    checks.append(_check("semiconjugacy.residual", residual))

    def breakpoint_consistency():
        for sys in (gs, build_gap_system(b=cfg.b, order=20)):
            dev = abs(breakpoint_from_gaps(sys) - cfg.b * (1.0 - cfg.delta))
            if dev > 2.0 * sys.tail_mass + 1e-12:
                return False, f"deviation {dev:.3e} at order {sys.order}"
        return True, "gap-mass breakpoint matches b(1-delta) at orders 20 and 60"

    checks.append(_check("semiconjugacy.breakpoint", breakpoint_consistency))

    def prediction_complement():
        lo, hi = cfg.interval_K()
        mid = (lo + hi) / 2.0
        left = predict_frequency(gs, cfg, lo, mid)
        right = predict_frequency(gs, cfg, mid, hi)
        err = 2.0 * (left.truncation_error + right.truncation_error) + 1e-12
        dev = abs(left.predicted + right.predicted - 1.0)
        return dev <= err, f"|c_left + c_right - 1| = {dev:.3e}"

    checks.append(_check("semiconjugacy.complement", prediction_complement))

    def cycle_oracle():
        rep = detect_cycle(p2, 0.0, max_iter=5000, tol=max(tol, 0.0))
        if not (rep.found and rep.period == 2):
            return False, f"status={rep.status} period={rep.period}"
        want = sorted((4000.0 / 3.0, 5000.0 / 3.0))
        got = sorted(rep.cycle_points)
        dev = max(abs(a - b) for a, b in zip(got, want))
        return dev <= max(tol, 1e-12), f"2-cycle point deviation = {dev:.3e}"

    checks.append(_check("analysis.cycle_oracle", cycle_oracle))

    def classifier_periodic():
        verdict = classify_dichotomy(p2, max_iter=5000)
        ok = verdict.kind == "periodic" and 1 <= len(verdict.cycles) <= 2
        return ok, f"kind={verdict.kind} periods={verdict.periods}"

    checks.append(_check("analysis.classifier_periodic", classifier_periodic))

    def cluster_containment():
        lo, hi = cfg.interval_K()
        # the image of K misses this middle interval; no accumulation point
        # may fall inside it
        forbidden = (step(cfg.process_params(), hi), step(cfg.process_params(), lo) )
        oa = omega_limit_approx(cfg, 1450.0, burn_in=2000, samples=20_000, resolution=1.0)
        for pt in oa.points:
            if not lo - 1e-9 <= pt <= hi + 1e-9:
                return False, f"cluster {pt} outside the trapping interval"
            if forbidden[0] + 1e-9 < pt < forbidden[1] - 1e-9:
                return False, f"cluster {pt} inside the forbidden middle gap"
        return True, f"{len(oa.points)} clusters inside K, none in the middle gap"

    checks.append(_check("analysis.cluster_containment", cluster_containment))

    def freq_agreement():
        seeds = (1450.0, 1380.0, 1023.0, 1900.0, 800.0)
        reports = [visit_frequency(cfg, s, 1400.0, 1600.0, 100_000) for s in seeds]
        freqs = [r.freq for r in reports]
        spread = max(freqs) - min(freqs)
        if spread > 2e-3:
            return False, f"pairwise spread {spread:.3e} > 2e-3"
        pred = reports[0].predicted
        dev = max(abs(f - pred.predicted) for f in freqs)
        bound = pred.truncation_error + 1e-3
        return dev <= bound, f"spread {spread:.2e}, worst |freq - c_J| = {dev:.3e}"

    checks.append(_check("analysis.freq_agreement", freq_agreement))

    def sensitivity_from_clusters():
        oa = omega_limit_approx(cfg, 1450.0, burn_in=500, samples=1500, resolution=0.5)
        for s0 in oa.points[:4]:
            rep = sensitivity_probe(cfg, s0, 1e-8, max_iter=4000)
            if not rep.succeeded:
                return False, f"no witness from s0={s0} (best {rep.achieved_separation})"
        return True, "witnesses at eps=1e-8 from 4 cluster seeds"

    checks.append(_check("analysis.sensitivity_clusters", sensitivity_from_clusters))

    return checks

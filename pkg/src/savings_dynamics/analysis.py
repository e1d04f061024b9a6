"""Orbit diagnostics: cycle detection, omega-limit approximation, the
periodic-vs-Cantor classifier, sensitivity probing, and visit frequencies.

Precision notes, learned the hard way:

* A binary64-rounded chaotic threshold is a dyadic rational, and the map
  with such a threshold is mode-locked: orbits collapse onto exact cycles
  (period 34 at binary64, Fibonacci periods at higher precision) no matter
  how precisely the *orbit* is carried.  Every diagnostic that must see the
  aperiodic dynamics therefore re-derives the threshold from b at working
  precision via the word series (threshold_at_precision).

* Distances between orbit points at word-lag N shrink like b^(-j) with j up
  to ~phi^2*sqrt(5)*N, so resolving "no cycle of period <= P" needs about
  6*P bits at b = 2.  detect_cycle sizes its working precision accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, ParameterError
from .process import (
    ChaoticConfig,
    ProcessParams,
    absorbing_bound,
    simulate,
    step,
    threshold_at_precision,
    transient_bound,
)
from .semiconjugacy import FrequencyPrediction, build_gap_system, predict_frequency

ParamsLike = ProcessParams | ChaoticConfig


def _resolve(p: ParamsLike) -> tuple[ProcessParams, ChaoticConfig | None]:
    if isinstance(p, ChaoticConfig):
        return p.process_params(), p
    return p, None


def _orbit_buffer(p: ParamsLike, s0: float, n: int, precision_bits: int | None) -> np.ndarray:
    """S_0..S_n as binary64 samples; chaotic configs at extended precision
    get their threshold re-derived from b (see module docstring)."""
    params, chaotic = _resolve(p)
    if precision_bits is None or chaotic is None:
        return np.array(simulate(params, s0, n).values)
    with mp.workprec(precision_bits):
        rho = threshold_at_precision(chaotic.b, precision_bits)
        inv_b = 1 / mpf(chaotic.b)
        v1, v2 = mpf(params.v1), mpf(params.v2)
        x = mpf(s0)
        out = np.empty(n + 1)
        out[0] = s0
        for i in range(1, n + 1):
            x = inv_b * x + (v1 if x < rho else v2)
            out[i] = float(x)
    return out


@dataclass(frozen=True)
class CycleReport:
    """Result of a bounded-budget cycle search."""

    status: str  # "found" | "no_cycle" | "inconclusive"
    period: int | None
    cycle_points: tuple[float, ...]
    transient_length: int | None
    residual: float | None

    @property
    def found(self) -> bool:
        return self.status == "found"


def detect_cycle(
    p: ParamsLike,
    s0: float,
    max_iter: int = 100_000,
    tol: float = 1e-9,
    max_period: int = 1000,
) -> CycleReport:
    """Search for an asymptotic cycle of period <= max_period.

    Burns in past the absorption transient, then scans lags N = 1..max_period
    for |S_{n+N} - S_n| <= tol holding over the final window of length
    max(3N, 1000) of the budget; the first (hence minimal) such N is
    reported.  Distinguishes a clean no-cycle verdict from an inconclusive
    one where the budget could not cover all requested periods.
    """
    if tol < 0.0:
        raise ParameterError("tol must be non-negative")
    if max_iter < 1 or max_period < 1:
        raise ParameterError("budgets must be positive")
    params, chaotic = _resolve(p)
    burn = transient_bound(params, s0) + min(1000, max_iter // 4)
    total = max(burn + 8, max_iter)
    bits = 6 * max_period + 128 if chaotic is not None else None
    orbit = _orbit_buffer(p, s0, total, bits)
    buf = orbit[burn:]
    n_samples = len(buf)
    period_cap = min(max_period, (n_samples - 1) // 4)
    for period in range(1, period_cap + 1):
        d = np.abs(buf[period:] - buf[:-period])
        window = min(max(3 * period, 1000), len(d))
        tail = d[-window:]
        if np.all(tail <= tol):
            bad = np.nonzero(d > tol)[0]
            settled = int(bad[-1]) + 1 if len(bad) else 0
            return CycleReport(
                status="found",
                period=period,
                cycle_points=tuple(float(v) for v in buf[-period:]),
                transient_length=burn + settled,
                residual=float(tail.max()),
            )
    status = "no_cycle" if period_cap == max_period else "inconclusive"
    return CycleReport(
        status=status, period=None, cycle_points=(), transient_length=None, residual=None
    )


@dataclass(frozen=True)
class OmegaApprox:
    """Clustered approximation of an orbit's accumulation set."""

    points: tuple[float, ...]
    resolution: float
    burn_in: int
    samples: int


def omega_limit_approx(
    p: ParamsLike, s0: float, burn_in: int, samples: int, resolution: float
) -> OmegaApprox:
    """Cluster the post-burn-in orbit at the given radius.

    Single-linkage on the sorted samples (exact in one dimension); each
    cluster is represented by its smallest member, an actually-visited
    balance.  Representatives of distinct clusters are separated by more
    than the resolution.  The burn-in is raised to the absorption transient
    if the caller's value falls short.
    """
    if resolution <= 0.0:
        raise ParameterError("resolution must be positive")
    if samples < 1:
        raise ParameterError("samples must be positive")
    params, _ = _resolve(p)
    burn = max(burn_in, transient_bound(params, s0))
    orbit = _orbit_buffer(p, s0, burn + samples, None)
    window = np.sort(orbit[burn : burn + samples])
    reps = [float(window[0])]
    for prev, cur in zip(window, window[1:]):
        if cur - prev > resolution:
            reps.append(float(cur))
    return OmegaApprox(
        points=tuple(reps), resolution=resolution, burn_in=burn, samples=samples
    )


@dataclass(frozen=True)
class DichotomyVerdict:
    """Outcome of the periodic-vs-Cantor classification."""

    kind: str  # "periodic" | "cantor_like" | "inconclusive"
    cycles: tuple[CycleReport, ...]
    evidence: dict

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(c.period for c in self.cycles if c.period is not None)


def _same_cycle(a: CycleReport, b: CycleReport, tol: float) -> bool:
    if a.period != b.period:
        return False
    pa, pb = sorted(a.cycle_points), sorted(b.cycle_points)
    return all(abs(x - y) <= tol for x, y in zip(pa, pb))


def classify_dichotomy(
    p: ParamsLike,
    max_iter: int = 20_000,
    tol: float = 1e-9,
    max_period: int = 500,
    cluster_samples: int = 20_000,
) -> DichotomyVerdict:
    """Decide between finitely many cycles and a Cantor-like attractor.

    Every orbit's accumulation set is contained in that of one of the two
    one-sided critical orbits, so cycle detection runs from the two images
    of the threshold: the first-branch formula evaluated *at* the threshold
    (the limit from below) and the actual second-branch image.  If neither
    recurs, Cantor-likeness is corroborated by cluster counts that keep
    growing as the clustering resolution is halved.  Finite budgets make
    inconclusive a first-class verdict, not an error.
    """
    params, _ = _resolve(p)
    seed_lo = (1.0 + params.r) * params.rho + params.v1  # below-threshold branch at rho
    seed_hi = step(params, params.rho)
    reports = [
        detect_cycle(p, seed, max_iter=max_iter, tol=tol, max_period=max_period)
        for seed in (seed_lo, seed_hi)
    ]
    if all(r.found for r in reports):
        cycles = [reports[0]]
        if not _same_cycle(reports[0], reports[1], max(tol * 10.0, 1e-8)):
            cycles.append(reports[1])
        return DichotomyVerdict(kind="periodic", cycles=tuple(cycles), evidence={})
    if all(r.status == "no_cycle" for r in reports):
        base = absorbing_bound(params) / 400.0
        resolutions = [base / 2.0**i for i in range(4)]
        counts = [
            len(
                omega_limit_approx(
                    params, seed_lo, burn_in=2000, samples=cluster_samples, resolution=res
                ).points
            )
            for res in resolutions
        ]
        growing = all(a < b for a, b in zip(counts, counts[1:]))
        evidence = {"resolutions": resolutions, "cluster_counts": counts}
        if growing:
            return DichotomyVerdict(kind="cantor_like", cycles=(), evidence=evidence)
        return DichotomyVerdict(kind="inconclusive", cycles=(), evidence=evidence)
    return DichotomyVerdict(kind="inconclusive", cycles=(), evidence={})


@dataclass(frozen=True)
class SensitivityReport:
    """Outcome of a perturbation-separation probe."""

    s0: float
    epsilon: float
    eta: float
    witness_s0prime: float | None
    witness_k: int | None
    achieved_separation: float

    @property
    def succeeded(self) -> bool:
        return self.witness_s0prime is not None and self.achieved_separation >= self.eta


def sensitivity_probe(
    c: ChaoticConfig,
    s0: float,
    epsilon: float,
    max_iter: int = 3000,
    grid_points: int = 1000,
) -> SensitivityReport:
    """Find a perturbed start within epsilon whose orbit separates by eta.

    Tracks the exact affine image of the perturbation interval at extended
    precision; whenever the image straddles the threshold, the far-side grid
    point nearest the crossing is co-iterated one step against s0's orbit
    and checked for separation >= eta = 500 b (1 - 1/b).  The same-coding
    subinterval survives each straddle; when it shrinks below the grid
    spacing, a fresh grid of the same size is laid over it (deterministic
    throughout, no randomness).
    """
    if epsilon <= 0.0:
        raise ParameterError("epsilon must be positive")
    if s0 < 0.0:
        raise DomainError("s0 must be non-negative")
    if grid_points < 2:
        raise ParameterError("grid_points must be at least 2")
    eta = 500.0 * c.b * (1.0 - 1.0 / c.b)
    prec = max_iter + 96
    best = 0.0
    witness = None
    witness_k = None
    with mp.workprec(prec):
        rho = threshold_at_precision(c.b, prec)
        b = mpf(c.b)
        v1, v2 = mpf(c.v1), mpf(c.v2)
        lo, hi = max(0.0, s0 - epsilon), s0 + epsilon

        def linspace(a: float, z: float) -> list[float]:
            h = (z - a) / (grid_points - 1)
            return [a + i * h for i in range(grid_points)]

        grid = linspace(lo, hi)
        spacing = (hi - lo) / (grid_points - 1)
        glo, ghi = mpf(lo), mpf(hi)
        scale, shift = mpf(1), mpf(0)  # current orbit map: x -> scale*x + shift
        base = mpf(s0)
        for k in range(max_iter):
            val = scale * base + shift
            side = val >= rho
            lo_side = scale * glo + shift >= rho
            hi_side = scale * ghi + shift >= rho
            if lo_side != hi_side:
                cross = (rho - shift) / scale
                cross_f = float(cross)
                far = [
                    g
                    for g in grid
                    if glo <= g <= ghi and (scale * mpf(g) + shift >= rho) != side
                ]
                if not far:
                    # the far sliver can be narrower than any grid spacing
                    # (near-returns of the threshold orbit); fall back to the
                    # representable point just beyond the crossing
                    toward = float(ghi) if hi_side != side else float(glo)
                    w = math.nextafter(cross_f, toward)
                    while (scale * mpf(w) + shift >= rho) == side and (
                        min(cross_f, toward) <= w <= max(cross_f, toward)
                    ):
                        w = math.nextafter(w, toward)
                    if glo <= w <= ghi and (scale * mpf(w) + shift >= rho) != side:
                        far = [w]
                if far:
                    w = min(far, key=lambda g: abs(g - cross_f))
                    wval = scale * mpf(w) + shift
                    nxt = val / b + (v2 if side else v1)
                    wnxt = wval / b + (v2 if not side else v1)
                    sep = float(abs(nxt - wnxt))
                    if sep > best:
                        best, witness, witness_k = sep, w, k + 1
                    if sep >= eta:
                        break
                if lo_side == side:
                    ghi = cross
                else:
                    glo = cross
                if float(ghi - glo) < 2.0 * spacing:
                    nlo, nhi = float(glo), float(ghi)
                    if nhi > nlo:
                        grid = linspace(nlo, nhi)
                        spacing = (nhi - nlo) / (grid_points - 1)
            scale = scale / b
            shift = shift / b + (v2 if side else v1)
    return SensitivityReport(
        s0=s0,
        epsilon=epsilon,
        eta=eta,
        witness_s0prime=witness,
        witness_k=witness_k,
        achieved_separation=best,
    )


@dataclass(frozen=True)
class FrequencyReport:
    """Empirical visit frequency of a balance interval."""

    lo: float
    hi: float
    N: int
    count: int
    freq: float
    predicted: FrequencyPrediction | None


def visit_frequency(
    p: ParamsLike, s0: float, lo: float, hi: float, N: int, gap_order: int = 60
) -> FrequencyReport:
    """Count S_0..S_{N-1} in [lo, hi] (closed); attach the ergodic
    prediction when chaotic parameters are supplied."""
    if N < 1:
        raise ParameterError("N must be at least 1")
    if hi < lo:
        raise ParameterError("interval is empty (hi < lo)")
    params, chaotic = _resolve(p)
    orbit = np.array(simulate(params, s0, N - 1).values)
    count = int(np.count_nonzero((orbit >= lo) & (orbit <= hi)))
    predicted = None
    if chaotic is not None:
        gs = build_gap_system(b=chaotic.b, order=gap_order)
        predicted = predict_frequency(gs, chaotic, lo, hi)
    return FrequencyReport(lo=lo, hi=hi, N=N, count=count, freq=count / N, predicted=predicted)

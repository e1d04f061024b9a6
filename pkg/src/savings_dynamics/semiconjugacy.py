"""Gap system and the monotone semiconjugacy h onto the circle rotation.

The attractor of the normalized map g is a Cantor set obtained from [0,1] by
removing one open gap G_k per rotation orbit point p_k = T^k(0), k >= 1, of
length eps_k = (1 - 1/b) b^(-(k-1)).  The gaps are laid out in the same order
as the orbit points:

    inf G_k = sum of eps_l over l with p_l < p_k,   sup G_k = inf G_k + eps_k

(truncated here to l <= K, with the leftover mass b^(-K) reported as
tail_mass).  Collapsing every gap to its orbit point defines the monotone
surjection h with h(g(x)) = T(h(x)); numerically h is evaluated as the orbit
point of the containing gap, or the nearest-left gap's point for the (measure
tail_mass) remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, PrecisionUnreachableError
from .process import ChaoticConfig, NormalizedMap, conjugacy_L, normalized_step
from .words import GOLDEN_ALPHA, RotationParams, rotation_iterate, rotation_step

ORDER_CAP = 10_000


@dataclass(frozen=True)
class GapSystem:
    """Truncated gap family, stored sorted by left endpoint.

    Parallel arrays: ks[i] is the orbit index of the i-th gap from the left,
    points[i] = T^{ks[i]}(0), lengths[i] its gap length, infs[i]/sups[i] its
    endpoints.  Because gap order equals orbit order, points[] is increasing.
    """

    alpha: float
    b: float
    order: int
    ks: np.ndarray
    points: np.ndarray
    lengths: np.ndarray
    infs: np.ndarray
    sups: np.ndarray
    tail_mass: float


def build_gap_system(alpha: float = GOLDEN_ALPHA, b: float = 2.0, order: int = 60) -> GapSystem:
    """Construct the first `order` gaps for rotation angle alpha and base b."""
    if order < 1:
        raise ParameterError("order must be at least 1")
    if order > ORDER_CAP:
        raise PrecisionUnreachableError(f"order {order} exceeds cap {ORDER_CAP}")
    if b <= 1.0:
        raise ParameterError("b must exceed 1")
    rp = RotationParams(alpha=alpha)
    ks = np.arange(1, order + 1)
    points = np.array([rotation_iterate(rp, 0.0, int(k)) for k in ks])
    lengths = (1.0 - 1.0 / b) * b ** (-(ks - 1.0))
    sort = np.argsort(points)
    ks, points, lengths = ks[sort], points[sort], lengths[sort]
    infs = np.concatenate(([0.0], np.cumsum(lengths)[:-1]))
    return GapSystem(
        alpha=alpha,
        b=b,
        order=order,
        ks=ks,
        points=points,
        lengths=lengths,
        infs=infs,
        sups=infs + lengths,
        tail_mass=b ** (-order),
    )


def h_evaluate(gs: GapSystem, x: float) -> float:
    """The collapsing map h at x.

    Inside a stored gap this is that gap's orbit point; elsewhere it is the
    largest orbit point among gaps entirely to the left (a left-continuous
    monotone extension, within tail_mass of the true h).  h(0)=0, h(1)=1.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    i = int(np.searchsorted(gs.infs, x, side="right")) - 1
    if i < 0:
        return 0.0
    return float(gs.points[i])


def gap_index(gs: GapSystem, x: float) -> int | None:
    """Orbit index k of the stored gap containing x, or None."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    i = int(np.searchsorted(gs.infs, x, side="right")) - 1
    if i >= 0 and x <= gs.sups[i]:
        return int(gs.ks[i])
    return None


def semiconjugacy_residual(gs: GapSystem, m: NormalizedMap, x: float) -> float | None:
    """|h(g(x)) - T(h(x))|, or None inside the breakpoint exclusion band.

    Within tail_mass of the breakpoint the truncated h cannot resolve which
    branch the true map takes, so the check is inconclusive there rather
    than failed.
    """
    if abs(x - m.breakpoint) <= gs.tail_mass:
        return None
    rp = RotationParams(alpha=gs.alpha)
    lhs = h_evaluate(gs, normalized_step(m, x))
    rhs = rotation_step(h_evaluate(gs, x), rp)
    return abs(lhs - rhs)


def breakpoint_from_gaps(gs: GapSystem) -> float:
    """Total gap mass left of the rotation's cut point 1 - alpha.

    Equals the normalized map's breakpoint b(1 - delta) up to the truncation
    tail — an end-to-end consistency check between the word series and the
    gap layout.
    """
    return float(gs.lengths[gs.points < 1.0 - gs.alpha].sum())


@dataclass(frozen=True)
class FrequencyPrediction:
    """Ergodic visit-frequency prediction for a balance interval."""

    lo: float
    hi: float
    predicted: float
    truncation_error: float


def predict_frequency(gs: GapSystem, c: ChaoticConfig, lo: float, hi: float) -> FrequencyPrediction:
    """Predicted long-run visit frequency of [lo, hi].

    The interval is mapped into normalized coordinates, clipped to [0,1], and
    pushed through h; unique ergodicity of the rotation makes the image
    length the almost-sure visit frequency.  Endpoints that fall outside the
    stored gaps contribute tail_mass each to the error budget, on top of the
    2*tail_mass unresolved by truncation.
    """
    if hi < lo:
        raise ParameterError("interval is empty (hi < lo)")
    a = min(1.0, max(0.0, conjugacy_L(c, lo)))
    z = min(1.0, max(0.0, conjugacy_L(c, hi)))
    if z <= a:
        return FrequencyPrediction(lo=lo, hi=hi, predicted=0.0, truncation_error=2.0 * gs.tail_mass)
    resolution = sum(
        0.0 if (e in (0.0, 1.0) or gap_index(gs, e) is not None) else gs.tail_mass
        for e in (a, z)
    )
    c_j = h_evaluate(gs, z) - h_evaluate(gs, a)
    return FrequencyPrediction(
        lo=lo,
        hi=hi,
        predicted=max(0.0, c_j),
        truncation_error=2.0 * gs.tail_mass + resolution,
    )

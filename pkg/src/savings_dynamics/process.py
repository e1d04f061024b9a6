"""The savings process map, simulation, closed forms, and the chaotic
parameter construction.

The process is the two-branch piecewise-affine contraction

    f(x) = (1+r) x + v1   if x <  rho
           (1+r) x + v2   if x >= rho

with monthly rate r in (-1, 0) and deposits v1, v2 >= 0.  Writing b = 1/(1+r),
the chaotic construction picks the deposits v1 = 1000, v2 = 500 and derives the
threshold rho from the Fibonacci word so that the induced symbolic dynamics is
the golden-rotation coding:

    delta = 1 - 1/b + (1/b)(1 - 1/b) * sum_k w_k b^(-k)
    rho   = (500 b / (b-1)) * (b (1 - delta) + 1)

The series is summed in extended precision (mpmath) and rounded once at the
end; the truncation order is chosen so that the rho-level error — the series
tail *amplified* by d(rho)/d(delta) = 500 b^2/(b-1) — meets the requested
target.  The tail bound uses the fact that the Fibonacci word never has two
adjacent 1s, so sum_{k>K} w_k b^(-k) <= b^(-K)/(b+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import (
    DegenerateProcessError,
    DomainError,
    ParameterError,
    PrecisionUnreachableError,
    SingularRateError,
)
from .words import fibonacci_word

CHAOTIC_V1 = 1000.0
CHAOTIC_V2 = 500.0

#: Hard cap on the series truncation order (guards b -> 1+ requests).
ORDER_CAP = 10_000


@dataclass(frozen=True)
class ProcessParams:
    """Parameters (r, v1, v2, rho) of the savings map."""

    r: float
    v1: float
    v2: float
    rho: float

    def __post_init__(self) -> None:
        if not -1.0 < self.r < 0.0:
            raise ParameterError(f"r must lie in (-1, 0), got {self.r}")
        if self.v1 < 0.0 or self.v2 < 0.0:
            raise ParameterError("deposits must be non-negative")
        if self.rho <= 0.0:
            raise ParameterError("threshold rho must be positive")


@dataclass(frozen=True)
class TimeSeries:
    """A simulated balance trajectory S_0 .. S_n."""

    s0: float
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)


def step(p: ProcessParams, x: float) -> float:
    """One month: interest then the threshold-dependent deposit.

    The tie x == rho takes the second branch.
    """
    if x < 0.0:
        raise DomainError("balance must be non-negative")
    if x < p.rho:
        return (1.0 + p.r) * x + p.v1
    return (1.0 + p.r) * x + p.v2


def simulate(
    p: ProcessParams, s0: float, n: int, precision_bits: int | None = None
) -> TimeSeries:
    """Iterate the map n times from s0, returning S_0 .. S_n.

    With precision_bits set, the state is carried as an mpmath float of that
    precision and rounded to binary64 per recorded sample; parameters are
    taken at their binary64 values either way.
    """
    if s0 < 0.0:
        raise DomainError("initial balance must be non-negative")
    if n < 0:
        raise ParameterError("step count must be non-negative")
    if precision_bits is None:
        values = [s0]
        x = s0
        for _ in range(n):
            x = step(p, x)
            values.append(x)
        return TimeSeries(s0=s0, values=tuple(values))
    with mp.workprec(precision_bits):
        shrink = 1 + mpf(p.r)
        v1, v2, rho = mpf(p.v1), mpf(p.v2), mpf(p.rho)
        x = mpf(s0)
        values = [s0]
        for _ in range(n):
            x = shrink * x + (v1 if x < rho else v2)
            values.append(float(x))
    return TimeSeries(s0=s0, values=tuple(values))


def closed_form(v: float, r: float, s0: float, n: int) -> float:
    """S_n for equal deposits: (1+r)^n s0 + ((1+r)^n - 1)/r * v."""
    if r == 0.0:
        raise SingularRateError("closed form divides by r")
    if not -1.0 < r < 0.0:
        raise ParameterError("r must lie in (-1, 0)")
    if v < 0.0 or s0 < 0.0:
        raise DomainError("v and s0 must be non-negative")
    growth = (1.0 + r) ** n
    return growth * s0 + (growth - 1.0) / r * v


def limit_value(v: float, r: float) -> float:
    """Equal-deposit equilibrium -v/r."""
    if not -1.0 < r < 0.0:
        raise ParameterError("r must lie in (-1, 0)")
    return -v / r


def absorbing_bound(p: ProcessParams) -> float:
    """M = -2 max(v1, v2)/r; the map sends [0, M] into itself."""
    v_max = max(p.v1, p.v2)
    if v_max == 0.0:
        raise DegenerateProcessError("both deposits are zero")
    return -2.0 * v_max / p.r


def transient_bound(p: ProcessParams, s0: float) -> int:
    """Steps until an orbit from s0 is inside [0, M] (0 if already there).

    From the geometric decay of the interest factor: the deposit part stays
    below M/2, so the excess above M/2 shrinks by (1+r) each month.
    """
    m = absorbing_bound(p)
    if s0 <= m:
        return 0
    return math.ceil(math.log(m / (2.0 * s0)) / math.log1p(p.r)) + 1


@dataclass(frozen=True)
class NormalizedMap:
    """The rescaled map g on [0,1]: x/b + delta below the breakpoint
    x1 = b(1 - delta), x/b + delta - 1 from x1 on."""

    b: float
    delta: float
    breakpoint: float

    def __post_init__(self) -> None:
        if not 0.0 < self.breakpoint < 1.0:
            raise ParameterError("breakpoint must lie in (0, 1)")


def normalized_step(m: NormalizedMap, x: float) -> float:
    """One step of g; the tie x == breakpoint takes the wrapped branch."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    if x < m.breakpoint:
        y = x / m.b + m.delta
    else:
        y = x / m.b + m.delta - 1.0
    # affine rounding can stray an ulp outside [0,1] at the edges
    return min(1.0, max(0.0, y))


@dataclass(frozen=True)
class ChaoticConfig:
    """Derived chaotic parameters for a given b > 1.

    truncation_bound is an upward-rounded bound on the delta series tail
    sum_{k>K} w_k b^(-k) scaled by the series prefactor.
    """

    b: float
    delta: float
    rho: float
    truncation_order: int
    truncation_bound: float
    v1: float = CHAOTIC_V1
    v2: float = CHAOTIC_V2

    def process_params(self) -> ProcessParams:
        return ProcessParams(r=1.0 / self.b - 1.0, v1=self.v1, v2=self.v2, rho=self.rho)

    def normalized_map(self) -> NormalizedMap:
        return NormalizedMap(
            b=self.b, delta=self.delta, breakpoint=self.b * (1.0 - self.delta)
        )

    def interval_K(self) -> tuple[float, float]:
        """The invariant interval trapping every orbit tail."""
        scale = 500.0 * self.b / (self.b - 1.0)
        return (scale * (2.0 - self.delta), scale * (3.0 - self.delta - 1.0 / self.b))


def _delta_series(b: mpf, terms: int) -> mpf:
    """delta at the current mpmath precision, summing `terms` word digits."""
    word = fibonacci_word(terms)
    acc = mpf(0)
    for digit in reversed(word):
        acc = acc / b
        if digit == "1":
            acc += 1
    # acc = sum_k w_k b^(-k); the k=0 term vanishes since w_0 = 0
    return 1 - 1 / b + (1 / b) * (1 - 1 / b) * acc


def threshold_at_precision(b: float, precision_bits: int) -> mpf:
    """rho derived from b with the series summed at precision_bits.

    High-precision consumers must not round rho through binary64: a binary64
    rho is a dyadic rational whose map is typically asymptotically periodic
    (mode-locked), which destroys the aperiodic dynamics the construction
    exists to produce.
    """
    if b <= 1.0:
        raise ParameterError("b must exceed 1")
    with mp.workprec(precision_bits):
        bb = mpf(b)
        delta = _delta_series(bb, precision_bits + 16)
        return 500 * bb / (bb - 1) * (bb * (1 - delta) + 1)


def chaotic_params(
    b: float, precision_target: float = 1e-13, order_cap: int = ORDER_CAP
) -> ChaoticConfig:
    """Build the chaotic configuration for b > 1.

    The truncation order K is chosen so that the *rho-level* error bound

        (500 b^2 / (b-1)) * b^(-K) * b / (b^2 - 1)  <=  precision_target

    holds; the first factor is |d(rho)/d(delta)| and the rest is the series
    tail bound sum_{k>K} w_k b^(-k) (no two adjacent word digits are 1).
    """
    if b <= 1.0:
        raise ParameterError("b must exceed 1")
    if precision_target <= 0.0:
        raise ParameterError("precision_target must be positive")
    amplifier = 500.0 * b * b / (b - 1.0) * b / (b * b - 1.0)
    order = max(1, math.ceil(math.log(amplifier / precision_target) / math.log(b)))
    if order > order_cap:
        raise PrecisionUnreachableError(
            f"target {precision_target} needs truncation order {order} > cap {order_cap}"
        )
    workbits = math.ceil(order * math.log2(b)) + 64
    with mp.workprec(workbits):
        bb = mpf(b)
        delta = _delta_series(bb, order + 1)  # digits w_0 .. w_K
        rho = 500 * bb / (bb - 1) * (bb * (1 - delta) + 1)
        delta_f = float(delta)
        rho_f = float(rho)
    tail = (1.0 / b) * (1.0 - 1.0 / b) * b ** (-order) / (b - 1.0)
    return ChaoticConfig(
        b=b,
        delta=delta_f,
        rho=rho_f,
        truncation_order=order,
        truncation_bound=math.nextafter(tail, math.inf),
    )


def conjugacy_L(c: ChaoticConfig, x: float) -> float:
    """Affine change of coordinates sending the trapping interval onto [0,1]."""
    return x / 500.0 + c.b * (c.delta - 2.0) / (c.b - 1.0)

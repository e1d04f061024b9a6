"""Fibonacci word and golden-rotation codings.

The Fibonacci word is generated digit-by-digit from the golden ratio,
    w_i = 2 + floor((i+1)*phi) - floor((i+2)*phi),
with the floors evaluated in exact integer arithmetic: for phi = (1+sqrt(5))/2,

    floor(m*phi) = (m + isqrt(5*m^2)) // 2

because m*phi = (m + m*sqrt(5))/2 and isqrt(5*m^2) = floor(m*sqrt(5)).  This
sidesteps the classic near-integer hazard of floating-point Beatty sequences —
a single wrong floor would corrupt every quantity derived from the word.

The same trick gives the fractional part of n*alpha for the rotation angle
alpha = (3 - sqrt(5))/2 without accumulated drift, so codings stay exact for
large n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError

PHI = (1.0 + math.sqrt(5.0)) / 2.0

#: Rotation angle of the golden rotation, alpha = 2 - phi.
GOLDEN_ALPHA = (3.0 - math.sqrt(5.0)) / 2.0


def floor_golden_multiple(m: int) -> int:
    """Exact floor(m * phi) for a non-negative integer m."""
    if m < 0:
        raise DomainError("m must be non-negative")
    return (m + math.isqrt(5 * m * m)) // 2


def fibonacci_word(n: int) -> str:
    """First n digits of the Fibonacci word as a '0'/'1' string."""
    if n < 1:
        raise ParameterError("word length must be at least 1")
    floors = [floor_golden_multiple(i) for i in range(1, n + 2)]
    return "".join(str(2 + floors[i] - floors[i + 1]) for i in range(n))


def frac_golden_multiple(n: int) -> float:
    """Fractional part of n * alpha for alpha = (3 - sqrt(5))/2, n >= 0.

    Exact reduction: with m5 = floor(n*sqrt(5)) and f5 = frac(n*sqrt(5)),
    n*alpha = (3n - m5 - f5)/2, so the fractional part is (1 - f5)/2 when
    3n - m5 is odd and 1 - f5/2 when it is even.  f5 is computed from the
    integer remainder 5n^2 - m5^2, which keeps the only rounding in a single
    well-conditioned division.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return 0.0
    m5 = math.isqrt(5 * n * n)
    f5 = (5 * n * n - m5 * m5) / (n * math.sqrt(5.0) + m5)
    if (3 * n - m5) % 2 == 1:
        return (1.0 - f5) / 2.0
    return 1.0 - f5 / 2.0


@dataclass(frozen=True)
class RotationParams:
    """Angle of the circle rotation T(x) = x + alpha (mod 1)."""

    alpha: float = GOLDEN_ALPHA

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError("alpha must lie in (0, 1)")


def rotation_step(x: float, rp: RotationParams) -> float:
    """One rotation step: x + alpha if x < 1 - alpha, else x + alpha - 1.

    The boundary point 1 - alpha takes the wrapped branch (closed left
    endpoint of the second interval).
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError("x must lie in [0, 1]")
    if x < 1.0 - rp.alpha:
        return x + rp.alpha
    return x + rp.alpha - 1.0


def _frac_multiple(rp: RotationParams, n: int) -> float:
    """frac(n * alpha), exact for the golden angle, fmod otherwise."""
    if rp.alpha == GOLDEN_ALPHA:
        return frac_golden_multiple(n)
    return math.fmod(n * rp.alpha, 1.0)


def rotation_iterate(rp: RotationParams, x0: float, n: int) -> float:
    """T^n(x0), computed as frac(x0 + n*alpha) to avoid drift."""
    if not 0.0 <= x0 <= 1.0:
        raise DomainError("x0 must lie in [0, 1]")
    y = x0 + _frac_multiple(rp, n)
    return y - 1.0 if y >= 1.0 else y


def rotation_coding(rp: RotationParams, x0: float, n: int) -> list[int]:
    """Symbols 1/2 of the orbit T^k(x0), k = 0..n-1, against [0, 1-alpha).

    Symbol k is 1 when T^k(x0) lands in [0, 1-alpha) and 2 otherwise.  For
    x0 = alpha at the golden angle the coding minus one is the Fibonacci word.
    """
    if n < 1:
        raise ParameterError("coding length must be at least 1")
    cut = 1.0 - rp.alpha
    out = []
    for k in range(n):
        out.append(1 if rotation_iterate(rp, x0, k) < cut else 2)
    return out

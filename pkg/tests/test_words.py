import pytest
from hypothesis import given, strategies as st

from savings_dynamics import words
from savings_dynamics.errors import DomainError, ParameterError

WORD51 = "010010100100101001010010010100100101001010010010100"


def test_first_digits():
    assert words.fibonacci_word(1) == "0"
    assert words.fibonacci_word(3) == "010"


def test_word_51():
    assert words.fibonacci_word(51) == WORD51


def test_empty_request_rejected():
    with pytest.raises(ParameterError):
        words.fibonacci_word(0)


@given(st.integers(min_value=1, max_value=500))
def test_prefix_stability(n):
    assert words.fibonacci_word(n + 1)[:n] == words.fibonacci_word(n)


@given(st.integers(min_value=3, max_value=2000))
def test_forbidden_factors(n):
    w = words.fibonacci_word(n)
    assert "11" not in w
    assert "000" not in w


@given(st.integers(min_value=1, max_value=10**9))
def test_floor_golden_multiple_exact(m):
    # f = floor(m*phi) iff 2f - m <= m*sqrt(5) < 2f - m + 2, squared exactly
    f = words.floor_golden_multiple(m)
    lo = 2 * f - m
    assert lo >= 0 and lo * lo <= 5 * m * m < (lo + 2) * (lo + 2)


def test_rotation_step_branches():
    rp = words.RotationParams()
    a = words.GOLDEN_ALPHA
    assert words.rotation_step(0.0, rp) == a
    assert words.rotation_step(1.0 - a, rp) == pytest.approx(0.0, abs=1e-15)
    x = 0.0
    for _ in range(3):
        x = words.rotation_step(x, rp)
    assert x == pytest.approx(3 * a - 1.0, abs=1e-15)


def test_rotation_step_domain():
    rp = words.RotationParams()
    with pytest.raises(DomainError):
        words.rotation_step(-0.1, rp)
    with pytest.raises(DomainError):
        words.rotation_step(1.1, rp)


def test_rotation_params_validation():
    with pytest.raises(ParameterError):
        words.RotationParams(alpha=0.0)
    with pytest.raises(ParameterError):
        words.RotationParams(alpha=1.0)


def test_frac_golden_multiple_exactness():
    rp = words.RotationParams()
    x = 0.0
    for n in range(1, 10_001):
        x = words.rotation_step(x, rp)
        assert abs(x - words.frac_golden_multiple(n)) <= 1e-12


def test_coding_of_alpha_is_the_word():
    rp = words.RotationParams()
    coding = words.rotation_coding(rp, words.GOLDEN_ALPHA, 51)
    assert "".join(str(c - 1) for c in coding) == WORD51


def test_coding_long():
    rp = words.RotationParams()
    n = 10_000
    coding = words.rotation_coding(rp, words.GOLDEN_ALPHA, n)
    assert "".join(str(c - 1) for c in coding) == words.fibonacci_word(n)


def test_coding_boundary_symbols():
    rp = words.RotationParams()
    assert words.rotation_coding(rp, 0.0, 1) == [1]
    assert words.rotation_coding(rp, 1.0 - words.GOLDEN_ALPHA, 1) == [2]

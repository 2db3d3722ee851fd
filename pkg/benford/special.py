"""Regularized incomplete gamma functions and the chi-square survival function.

P(a, x) uses the power series below x = a + 1 and Q(a, x) the continued
fraction (modified Lentz) above it; each is obtained from the other as 1 - ·.
"""

import math
import sys

ACCURACY = 1.0e-15
MAX_ITERATIONS = 10_000
_TINY = sys.float_info.min / sys.float_info.epsilon


class ConvergenceError(ArithmeticError):
    """Raised when a series or continued fraction fails to converge."""

    pass


def _prefactor(a: float, x: float) -> float:
    return math.exp(-x + a * math.log(x) - math.lgamma(a))


def _series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(MAX_ITERATIONS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * ACCURACY:
            return total * _prefactor(a, x)
    raise ConvergenceError(f"Series for P({a}, {x}) did not converge")


def _continued_fraction(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITERATIONS + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < ACCURACY:
            return h * _prefactor(a, x)
    raise ConvergenceError(f"Continued fraction for Q({a}, {x}) did not converge")


def _check(a: float, x: float) -> None:
    if a <= 0.0:
        raise ValueError(f"Shape a must be positive, got {a}")
    if x < 0.0 or math.isnan(x):
        raise ValueError(f"Argument x must be non-negative, got {x}")


def regularized_gamma_p(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x) = γ(a, x) / Γ(a).

    Raises:
        ValueError: If a <= 0 or x < 0.
    """
    _check(a, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _series(a, x)
    return 1.0 - _continued_fraction(a, x)


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x).

    Raises:
        ValueError: If a <= 0 or x < 0.
    """
    _check(a, x)
    if x == 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return 1.0 - _series(a, x)
    return _continued_fraction(a, x)


def chi2_sf(statistic: float, df: int) -> float:
    """Survival function of the chi-square distribution with df degrees of freedom.

    Args:
        statistic: Observed chi-square value, >= 0.
        df: Degrees of freedom, >= 1.

    Returns:
        P(χ²_df >= statistic), clipped to [0, 1].
    """
    if df < 1:
        raise ValueError(f"Degrees of freedom must be at least 1, got {df}")
    if statistic <= 0.0:
        return 1.0
    return min(1.0, max(0.0, regularized_gamma_q(df / 2.0, statistic / 2.0)))

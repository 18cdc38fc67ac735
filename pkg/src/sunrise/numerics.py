"""Special functions and exact binomial quantities.

Everything runs in log space through an accurate log-beta, so counts in the
millions (the 2,190,000-sunrise example) lose no precision.  The scalar
kernels come from the compiled ``_ckernels`` extension when it was built and
from ``_pykernels`` otherwise; set ``SUNRISE_PURE_PYTHON=1`` to force the
fallback.  ``BACKEND`` names the one in use.

Boundary convention: ``0**0 == 1``, so binomial likelihoods at theta in
{0, 1} are exact.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

from . import _pykernels

if os.environ.get("SUNRISE_PURE_PYTHON"):
    _kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _kernels
        BACKEND = "cython"
    except ImportError:
        _kernels = _pykernels
        BACKEND = "python"


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


def _check_shape(name: str, value: float) -> None:
    if not (value > 0.0) or math.isinf(value):
        raise DomainError(f"{name} must be a positive finite real, got {value!r}")


def _check_theta(theta) -> None:
    if not (0 <= theta <= 1):
        raise DomainError(f"theta must lie in [0, 1], got {theta!r}")


def _check_counts(n: int, t: int) -> None:
    if n < 0 or t < 0 or t > n:
        raise DomainError(f"need 0 <= t <= n, got n={n!r}, t={t!r}")


def log_beta(x: float, y: float) -> float:
    """Natural log of the Beta function b(x, y) = G(x)G(y)/G(x+y).

    Uses Stirling-remainder differences once an argument reaches 10, which
    keeps the relative error near machine precision where the naive
    ``lgamma`` sum cancels catastrophically.
    """
    _check_shape("x", x)
    _check_shape("y", y)
    return _kernels.lbeta(float(x), float(y))


def beta_function(x: float, y: float) -> float:
    return math.exp(log_beta(x, y))


def regularized_incomplete_beta(theta: float, a: float, b: float) -> float:
    """I_theta(a, b), the Beta(a, b) cdf at theta.

    Continued fraction (modified Lentz, tolerance 1e-14) with the symmetry
    switch ``I_x(a, b) = 1 - I_{1-x}(b, a)`` for ``x > a/(a+b)``.
    """
    _check_theta(theta)
    _check_shape("a", a)
    _check_shape("b", b)
    return _kernels.betainc(float(theta), float(a), float(b))


def beta_logpdf(theta: float, a: float, b: float) -> float:
    _check_theta(theta)
    _check_shape("a", a)
    _check_shape("b", b)
    if (theta == 0.0 and a != 1.0) or (theta == 1.0 and b != 1.0):
        edge = a if theta == 0.0 else b
        return math.inf if edge < 1.0 else -math.inf
    if theta == 0.0 or theta == 1.0:
        return -log_beta(a, b)
    return (a - 1.0) * math.log(theta) + (b - 1.0) * math.log1p(-theta) - log_beta(a, b)


def beta_pdf(theta: float, a: float, b: float) -> float:
    return math.exp(beta_logpdf(theta, a, b))


def _pmf_exact(n: int, t: int, theta: Fraction) -> Fraction:
    return math.comb(n, t) * theta**t * (1 - theta) ** (n - t)


def binomial_pmf(n: int, t: int, theta):
    """C(n, t) theta^t (1 - theta)^(n - t).

    A :class:`fractions.Fraction` theta is evaluated exactly in rational
    arithmetic; floats go through log space.
    """
    _check_counts(n, t)
    _check_theta(theta)
    if isinstance(theta, Fraction):
        return _pmf_exact(n, t, theta)
    return math.exp(_kernels.binom_logpmf(n, t, float(theta)))


def binomial_right_tail(n: int, t: int, theta):
    """P(T_n >= t | theta) summed term by term; exactly 1 when t == 0."""
    _check_counts(n, t)
    _check_theta(theta)
    if isinstance(theta, Fraction):
        return sum((_pmf_exact(n, y, theta) for y in range(t, n + 1)), Fraction(0))
    return _kernels.binom_tail(n, t, float(theta))


def binomial_left_tail(n: int, t: int, theta):
    """P(T_n <= t | theta); accepts t = -1 (empty sum)."""
    if t == -1:
        _check_theta(theta)
        return Fraction(0) if isinstance(theta, Fraction) else 0.0
    _check_counts(n, t)
    _check_theta(theta)
    if isinstance(theta, Fraction):
        return sum((_pmf_exact(n, y, theta) for y in range(0, t + 1)), Fraction(0))
    if t == n:
        return 1.0
    theta = float(theta)
    return min(1.0, math.fsum(math.exp(_kernels.binom_logpmf(n, y, theta)) for y in range(t + 1)))

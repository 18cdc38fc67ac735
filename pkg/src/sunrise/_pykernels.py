"""Pure-Python scalar kernels.

Mirror of ``_ckernels.pyx``; the two must stay numerically identical up to
floating-point evaluation order.  Arguments are assumed validated by
:mod:`sunrise.numerics`.
"""
import math

LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Bernoulli-number coefficients B_2k / (2k (2k - 1)) of the Stirling series.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

CF_EPS = 1e-14
CF_MIN_ITER = 500
_TINY = 1e-300


def lgammacor(x):
    """Stirling remainder lgamma(x) - [(x-1/2)log x - x + log sqrt(2 pi)], x >= 10."""
    inv = 1.0 / x
    inv2 = inv * inv
    total = 0.0
    for c in reversed(_STIRLING):
        total = total * inv2 + c
    return total * inv


def lbeta(x, y):
    p = min(x, y)
    q = max(x, y)
    if p >= 10.0:
        corr = lgammacor(p) + lgammacor(q) - lgammacor(p + q)
        return (-0.5 * math.log(q) + LN_SQRT_2PI + corr
                + (p - 0.5) * math.log(p / (p + q)) + q * math.log1p(-p / (p + q)))
    if q >= 10.0:
        corr = lgammacor(q) - lgammacor(p + q)
        return (math.lgamma(p) + corr + p - p * math.log(p + q)
                + (q - 0.5) * math.log1p(-p / (p + q)))
    return math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q)


def _betacf(x, a, b):
    # modified Lentz evaluation of the incomplete-beta continued fraction
    max_iter = max(CF_MIN_ITER, int(10.0 * math.sqrt(a + b)))
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(x, a, b):
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x > a / (a + b):
        return 1.0 - betainc(1.0 - x, b, a)
    log_front = a * math.log(x) + b * math.log1p(-x) - lbeta(a, b)
    return math.exp(log_front) * _betacf(x, a, b) / a


def binom_logpmf(n, t, theta):
    if theta <= 0.0:
        return 0.0 if t == 0 else -math.inf
    if theta >= 1.0:
        return 0.0 if t == n else -math.inf
    lchoose = -math.log(n + 1.0) - lbeta(n - t + 1.0, t + 1.0)
    return lchoose + t * math.log(theta) + (n - t) * math.log1p(-theta)


def binom_tail(n, t, theta):
    """P(T >= t) by direct summation of the pmf."""
    if t <= 0:
        return 1.0
    if theta <= 0.0:
        return 0.0
    if theta >= 1.0:
        return 1.0
    total = 0.0
    for y in range(n, t - 1, -1):
        total += math.exp(binom_logpmf(n, y, theta))
    return min(total, 1.0)

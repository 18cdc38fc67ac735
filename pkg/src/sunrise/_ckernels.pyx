# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; see ``_pykernels.py`` for the reference twin."""
from libc.math cimport exp, log, log1p, lgamma, sqrt, fabs, INFINITY

cdef double LN_SQRT_2PI = 0.918938533204672741780329736406
cdef double CF_EPS = 1e-14
cdef int CF_MIN_ITER = 500
cdef double TINY = 1e-300

cdef double[8] STIRLING = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
]


cdef double _lgammacor(double x) nogil:
    cdef double inv = 1.0 / x
    cdef double inv2 = inv * inv
    cdef double total = 0.0
    cdef int i
    for i in range(7, -1, -1):
        total = total * inv2 + STIRLING[i]
    return total * inv


cdef double _lbeta(double x, double y) nogil:
    cdef double p = x if x < y else y
    cdef double q = y if x < y else x
    cdef double corr
    if p >= 10.0:
        corr = _lgammacor(p) + _lgammacor(q) - _lgammacor(p + q)
        return (-0.5 * log(q) + LN_SQRT_2PI + corr
                + (p - 0.5) * log(p / (p + q)) + q * log1p(-p / (p + q)))
    if q >= 10.0:
        corr = _lgammacor(q) - _lgammacor(p + q)
        return (lgamma(p) + corr + p - p * log(p + q)
                + (q - 0.5) * log1p(-p / (p + q)))
    return lgamma(p) + lgamma(q) - lgamma(p + q)


cdef int _betacf(double x, double a, double b, double* out) nogil:
    cdef int max_iter = <int>(10.0 * sqrt(a + b))
    if max_iter < CF_MIN_ITER:
        max_iter = CF_MIN_ITER
    cdef double qab = a + b
    cdef double qap = a + 1.0
    cdef double qam = a - 1.0
    cdef double c = 1.0
    cdef double d = 1.0 - qab * x / qap
    cdef double h, aa, delta
    cdef int m, m2
    if fabs(d) < TINY:
        d = TINY
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if fabs(c) < TINY:
            c = TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < TINY:
            d = TINY
        c = 1.0 + aa / c
        if fabs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < CF_EPS:
            out[0] = h
            return 0
    return -1


cdef double _betainc(double x, double a, double b) except? -1.0:
    cdef double cf
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x > a / (a + b):
        return 1.0 - _betainc(1.0 - x, b, a)
    if _betacf(x, a, b, &cf) != 0:
        raise ArithmeticError(
            f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")
    return exp(a * log(x) + b * log1p(-x) - _lbeta(a, b)) * cf / a


cdef double _binom_logpmf(long n, long t, double theta) nogil:
    cdef double lchoose
    if theta <= 0.0:
        return 0.0 if t == 0 else -INFINITY
    if theta >= 1.0:
        return 0.0 if t == n else -INFINITY
    lchoose = -log(n + 1.0) - _lbeta(n - t + 1.0, t + 1.0)
    return lchoose + t * log(theta) + (n - t) * log1p(-theta)


cdef double _binom_tail(long n, long t, double theta) nogil:
    cdef double total = 0.0
    cdef long y
    if t <= 0:
        return 1.0
    if theta <= 0.0:
        return 0.0
    if theta >= 1.0:
        return 1.0
    for y in range(n, t - 1, -1):
        total += exp(_binom_logpmf(n, y, theta))
    return total if total < 1.0 else 1.0


def lgammacor(double x):
    return _lgammacor(x)


def lbeta(double x, double y):
    return _lbeta(x, y)


def betainc(double x, double a, double b):
    return _betainc(x, a, b)


def binom_logpmf(long n, long t, double theta):
    return _binom_logpmf(n, t, theta)


def binom_tail(long n, long t, double theta):
    return _binom_tail(n, t, theta)

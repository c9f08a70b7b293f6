"""Terminating Gauss hypergeometric sums, 0F1, and Bessel J0/J1."""

from __future__ import annotations

import math

import numpy as np

from . import _dd

EPS = np.finfo(float).eps

_RESCALE_BITS = 300
_RESCALE = 2.0 ** -_RESCALE_BITS
_BIG = 2.0 ** _RESCALE_BITS
RESCALE_LOG = _RESCALE_BITS * math.log(2.0)


class ConvergenceError(ArithmeticError):
    pass


def pochhammer(c: float, n: int) -> float:
    out = 1.0
    for k in range(n):
        out *= c + k
    return out


def _neumaier(s, comp, t):
    tot = s + t
    big = np.abs(s) >= np.abs(t)
    comp = comp + np.where(big, (s - tot) + t, (t - tot) + s)
    return tot, comp


def _check_poles(m, c):
    # (c)_n vanishes for some n < m iff c is a non-positive integer > -m
    bad = (c <= 0) & (c == np.round(c)) & (-c < m)
    if np.any(bad):
        raise ValueError("lower parameter c hits a pole inside the terminating sum")


def hyp2f1_scaled(m, b, c, x, *, extended: bool = False):
    """Vectorised ``2F1(-m, b; c; x)`` in rescaled form.

    Returns ``(mantissa, exponent, abs_sum)`` with the value equal to
    ``mantissa * exp(exponent * RESCALE_LOG)`` and ``abs_sum`` the sum of
    term magnitudes on the same scale (for cancellation error bounds).

    ``extended=True`` accumulates in double-double; ``x`` must then be
    real and may be given as a ``(hi, lo)`` pair.
    """
    x_pair = None
    if extended and isinstance(x, tuple):
        x_pair = (np.asarray(x[0], dtype=float), np.asarray(x[1], dtype=float))
        x = x_pair[0]
    m, b, c, x = np.broadcast_arrays(np.asarray(m), np.asarray(b, dtype=float),
                                     np.asarray(c, dtype=float), np.asarray(x))
    if np.any(m < 0) or np.any(m != np.round(m)):
        raise ValueError("m must be a non-negative integer")
    m = m.astype(np.int64)
    _check_poles(m, c)
    nmax = int(m.max()) if m.size else 0
    shape = m.shape
    exponent = np.zeros(shape, dtype=np.int64)

    if extended:
        if np.iscomplexobj(x):
            raise TypeError("extended precision path supports real x only")
        if x_pair is None:
            xh, xl = _dd.from_float(x)
        else:
            xh = np.broadcast_to(x_pair[0], shape).astype(float)
            xl = np.broadcast_to(x_pair[1], shape).astype(float)
        th, tl = np.ones(shape), np.zeros(shape)
        sh, sl = np.ones(shape), np.zeros(shape)
        abs_sum = np.ones(shape)
        for n in range(nmax):
            active = n < m
            # ratio = (n - m)(b + n) x / ((c + n)(n + 1)); integers are exact
            bh, bl = _dd.two_sum(b, float(n))
            ch, cl = _dd.two_sum(c, float(n))
            nh, nl = _dd.mul(bh, bl, (n - m).astype(float), 0.0)
            nh, nl = _dd.mul(nh, nl, xh, xl)
            dh, dl = _dd.mul(ch, cl, float(n + 1), 0.0)
            rh, rl = _dd.div(nh, nl, np.where(active, dh, 1.0), np.where(active, dl, 0.0))
            rh = np.where(active, rh, 0.0)
            rl = np.where(active, rl, 0.0)
            th, tl = _dd.mul(th, tl, rh, rl)
            big = np.abs(th) > _BIG
            if np.any(big):
                f = np.where(big, _RESCALE, 1.0)
                th, tl, sh, sl = th * f, tl * f, sh * f, sl * f
                abs_sum = abs_sum * f
                exponent = exponent + big
            sh, sl = _dd.add(sh, sl, th, tl)
            abs_sum = abs_sum + np.abs(th)
        return sh + sl, exponent, abs_sum

    dtype = complex if np.iscomplexobj(x) else float
    term = np.ones(shape, dtype=dtype)
    s = np.ones(shape, dtype=dtype)
    comp = np.zeros(shape, dtype=dtype)
    abs_sum = np.ones(shape)
    for n in range(nmax):
        active = n < m
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = (n - m) * (b + n) / ((c + n) * (n + 1)) * x
        term = term * np.where(active, ratio, 0.0)
        big = np.abs(term) > _BIG
        if np.any(big):
            f = np.where(big, _RESCALE, 1.0)
            term, s, comp, abs_sum = term * f, s * f, comp * f, abs_sum * f
            exponent = exponent + big
        if dtype is complex:
            sr, cr = _neumaier(s.real, comp.real, term.real)
            si, ci = _neumaier(s.imag, comp.imag, term.imag)
            s, comp = sr + 1j * si, cr + 1j * ci
        else:
            s, comp = _neumaier(s, comp, term)
        abs_sum = abs_sum + np.abs(term)
    return s + comp, exponent, abs_sum


def hyp2f1_terminating(m: int, b: float, c: float, x, *, extended: bool = False):
    """``2F1(-m, b; c; x) = sum_{n<=m} (-m)_n (b)_n / ((c)_n n!) x^n``.

    Accepts broadcastable arrays; scalar inputs give a scalar result.
    The result overflows to inf only if the true value does.
    """
    mant, expo, _ = hyp2f1_scaled(m, b, c, x, extended=extended)
    with np.errstate(over="ignore"):
        out = mant * np.exp(expo * RESCALE_LOG)
    return out[()] if np.ndim(out) == 0 else out


def hyp0f1(c: float, x: float, max_terms: int = 10_000) -> float:
    """``0F1(; c; x)`` by direct summation."""
    if c <= 0 and c == round(c):
        raise ValueError("c must not be a non-positive integer")
    term = 1.0
    total = 1.0
    for n in range(max_terms):
        term *= x / ((c + n) * (n + 1))
        total += term
        if abs(term) < 1e-17 * abs(total):
            return total
    raise ConvergenceError(f"0F1 did not converge in {max_terms} terms (x={x})")


def pfaff_kummer_check(alpha: float, beta: float, gamma: float, z: float) -> tuple[float, float]:
    """Both sides of 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a,c-b;c;z/(z-1)) for a = -m."""
    if z == 1:
        raise ValueError("z = 1 is excluded")
    m = -alpha
    if m < 0 or m != round(m):
        raise ValueError("alpha must be a non-positive integer")
    m = int(round(m))
    lhs = float(hyp2f1_terminating(m, beta, gamma, z))
    rhs = (1 - z) ** m * float(hyp2f1_terminating(m, gamma - beta, gamma, z / (z - 1)))
    return lhs, rhs


def poly_identity_y6_check(j: int, k: int, a: float, s: float) -> tuple[float, float]:
    """Both sides of the degree-swap identity

    2F1(-j,-k;a+1;1/s^2) = k!/((k-j)! (a+1)_j) s^{-2j} 2F1(-j-a,-j;1+k-j;s^2),  j <= k.
    """
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    if s == 0:
        raise ValueError("s must be non-zero")
    lhs = float(hyp2f1_terminating(j, -k, a + 1, 1.0 / (s * s)))
    log_pref = math.lgamma(k + 1) - math.lgamma(k - j + 1) - math.log(pochhammer(a + 1, j)) \
        - 2 * j * math.log(abs(s))
    rhs = math.exp(log_pref) * float(hyp2f1_terminating(j, -j - a, 1 + k - j, s * s))
    return lhs, rhs


# --- Bessel functions J0, J1 -------------------------------------------------

_SERIES_MAX = 8.0
_MILLER_MAX = 25.0


def _bessel_series(order: int, x: np.ndarray) -> np.ndarray:
    h2 = -(x / 2) ** 2
    term = (x / 2) ** order / math.factorial(order)
    total = term.copy()
    for k in range(1, 60):
        term = term * h2 / (k * (k + order))
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.maximum(np.abs(total), 1e-300)):
            break
    return total


def _bessel_miller(order: int, x: np.ndarray) -> np.ndarray:
    # backward recurrence from well above x, normalised by J0 + 2 sum J_{2k} = 1
    start = int(x.max() + 12 * x.max() ** (1 / 3) + 30)
    start += start % 2
    jp1 = np.zeros_like(x)
    j = np.full_like(x, 1e-300)
    norm = np.zeros_like(x)
    for k in range(start, 0, -1):
        jm1 = 2 * k / x * j - jp1
        jp1, j = j, jm1
        if k > 1 and (k - 1) % 2 == 0:
            norm = norm + 2 * j
        big = np.abs(j) > 1e250
        if np.any(big):
            f = np.where(big, 1e-250, 1.0)
            j, jp1, norm = j * f, jp1 * f, norm * f
    # j now holds J_0 and jp1 holds J_1, on a common scale
    norm = norm + j
    return (j if order == 0 else jp1) / norm


def _bessel_asymptotic(order: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * order * order
    z = 8.0 * x
    p = np.ones_like(x)
    q = (mu - 1) / z
    term_p = np.ones_like(x)
    term_q = q.copy()
    k = 1
    while True:
        # P uses even indices, Q odd; term ratios from the standard expansion
        term_p = -term_p * (mu - (4 * k - 3) ** 2) * (mu - (4 * k - 1) ** 2) / ((2 * k - 1) * (2 * k) * z * z)
        term_q = -term_q * (mu - (4 * k - 1) ** 2) * (mu - (4 * k + 1) ** 2) / ((2 * k) * (2 * k + 1) * z * z)
        p = p + term_p
        q = q + term_q
        k += 1
        if np.all(np.abs(term_p) < 1e-17) and np.all(np.abs(term_q) < 1e-17) or k > 30:
            break
    chi = x - (order / 2 + 0.25) * math.pi
    return np.sqrt(2 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def bessel_j(order: int, x):
    """Bessel function of the first kind, order 0 or 1, for x >= 0.

    Power series up to x = 8, Miller backward recurrence on (8, 25),
    Hankel asymptotic expansion beyond.
    """
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x must be non-negative")
    flat = x.ravel()
    out = np.empty_like(flat)
    lo = flat <= _SERIES_MAX
    hi = flat >= _MILLER_MAX
    mid = ~lo & ~hi
    if np.any(lo):
        out[lo] = _bessel_series(order, flat[lo])
    if np.any(mid):
        out[mid] = _bessel_miller(order, flat[mid])
    if np.any(hi):
        out[hi] = _bessel_asymptotic(order, flat[hi])
    out = out.reshape(x.shape)
    return float(out) if out.ndim == 0 else out

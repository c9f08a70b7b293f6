"""Laplace-Fourier transforms of Laguerre and Hermite products.

    I_jk(s) = int_0^inf L_j^(a)(x) L_k^(a)(x) x^a e^{(s-1)x} dx
            = Gamma(a+1) (a+1)_j/j! (a+1)_k/k! (1-s)^{-(a+1)}
              (-s/(1-s))^{j+k} 2F1(-k, -j; a+1; 1/s^2)

Everything is assembled in log-magnitude and phase; the hypergeometric
factor comes back from ``hyp2f1_scaled`` as mantissa times 2^(300 e).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import gammaln, roots_genlaguerre

from . import _dd, orthopoly
from ._quad import adaptive_gl
from .hypergeom import EPS, RESCALE_LOG, hyp2f1_scaled
from .kernels import KernelSpec, density


@dataclass(frozen=True)
class TransformValue:
    """Complex value with its log-magnitude and phase.

    ``value`` may be 0 or inf when the magnitude is not representable;
    ``log_mag`` and ``phase`` are always meaningful.
    """

    value: complex
    log_mag: float
    phase: float

    @classmethod
    def from_polar(cls, log_mag: float, phase: float) -> "TransformValue":
        if log_mag == -math.inf:
            return cls(0j, -math.inf, 0.0)
        phase = math.remainder(phase, 2 * math.pi)
        try:
            mag = math.exp(log_mag)
        except OverflowError:
            mag = math.inf
        return cls(complex(mag * math.cos(phase), mag * math.sin(phase)), log_mag, phase)

    @classmethod
    def from_complex(cls, z: complex) -> "TransformValue":
        z = complex(z)
        if z == 0:
            return cls(0j, -math.inf, 0.0)
        return cls(z, math.log(abs(z)), cmath.phase(z))


def _check_s(s: complex) -> complex:
    s = complex(s)
    if not s.real < 1:
        raise ValueError(f"Re s must be < 1 for convergence, got s={s}")
    return s


def laguerre_transform(j: int, k: int, a: float, s: complex) -> TransformValue:
    """Closed form of ``I_jk(s)`` for the generalised Laguerre weight."""
    if j < 0 or k < 0 or int(j) != j or int(k) != k:
        raise ValueError("j and k must be non-negative integers")
    if not a > -1:
        raise ValueError("a must exceed -1")
    j, k = int(j), int(k)
    s = _check_s(s)
    if s == 0:
        if j != k:
            return TransformValue(0j, -math.inf, 0.0)
        return TransformValue.from_polar(math.lgamma(j + a + 1) - math.lgamma(j + 1), 0.0)
    lg = (math.lgamma(j + a + 1) + math.lgamma(k + a + 1) - math.lgamma(a + 1)
          - math.lgamma(j + 1) - math.lgamma(k + 1))
    one_m = 1 - s
    ratio = -s / one_m
    log_mag = lg - (a + 1) * math.log(abs(one_m)) + (j + k) * math.log(abs(ratio))
    phase = -(a + 1) * cmath.phase(one_m) + (j + k) * cmath.phase(ratio)
    x = 1 / (s * s)
    if x.imag == 0:
        x = x.real
    mant, expo, _ = hyp2f1_scaled(min(j, k), -max(j, k), a + 1, x)
    mant = complex(mant)
    if mant == 0:
        return TransformValue(0j, -math.inf, 0.0)
    log_mag += math.log(abs(mant)) + int(expo) * RESCALE_LOG
    phase += cmath.phase(mant)
    return TransformValue.from_polar(log_mag, phase)


def laguerre_transform_oracle(j: int, k: int, a: float, s: complex) -> TransformValue:
    """``I_jk(s)`` by generalised Gauss-Laguerre quadrature (test oracle).

    The ray of integration is rotated onto ``y = (1 - s) x``, which turns
    the integrand into ``L_j L_k`` at ``y / (1 - s)`` against the plain
    weight ``y^a e^{-y}``. A Gauss rule with more than ``(j + k) / 2``
    nodes is then exact, and the sum is carried out in 40-digit
    arithmetic because it cancels heavily when ``|I_jk|`` is small.
    The Laguerre polynomials come from their explicit sums, independent
    of the recurrence and of the closed form.
    """
    if j > 40 or k > 40 or j < 0 or k < 0:
        raise ValueError("oracle is certified for 0 <= j, k <= 40")
    s = _check_s(s)
    n = (j + k) // 2 + 2
    with mpmath.workdps(40):
        x, w = _gauss_laguerre_mp(n, float(a))
        sm = mpmath.mpc(s.real, s.imag)
        rot = 1 / (1 - sm)
        total = mpmath.mpf(0)
        for xi, wi in zip(x, w):
            z = xi * rot
            total += wi * _laguerre_mp(j, a, z) * _laguerre_mp(k, a, z)
        total *= rot ** (mpmath.mpf(a) + 1)
        val = complex(total)
        if total == 0:
            return TransformValue(0j, -math.inf, 0.0)
        return TransformValue(val, float(mpmath.log(abs(total))), float(mpmath.arg(total)))


@lru_cache(maxsize=512)
def _laguerre_coeffs(n: int, a: float):
    am = mpmath.mpf(a)
    return tuple((-1) ** i * mpmath.gamma(n + am + 1)
                 / (mpmath.factorial(n - i) * mpmath.gamma(am + i + 1) * mpmath.factorial(i))
                 for i in range(n + 1))


def _laguerre_mp(n: int, a: float, z):
    out = mpmath.mpf(0)
    for c in reversed(_laguerre_coeffs(n, float(a))):
        out = out * z + c
    return out


@lru_cache(maxsize=256)
def _gauss_laguerre_mp(n: int, a: float):
    """Nodes and weights for ``x^a e^{-x}``, Newton-polished to working precision."""
    x0, _ = roots_genlaguerre(n, a)
    am = mpmath.mpf(a)

    def lag(m, x):
        prev, cur = mpmath.mpf(0), mpmath.mpf(1)
        for i in range(m):
            prev, cur = cur, ((2 * i + 1 + am - x) * cur - (i + am) * prev) / (i + 1)
        return cur, prev

    nodes, weights = [], []
    for guess in x0:
        x = mpmath.mpf(guess)
        for _ in range(100):
            ln, lm = lag(n, x)
            dl = (n * ln - (n + am) * lm) / x
            step = ln / dl
            x -= step
            if abs(step) < abs(x) * mpmath.mpf(10) ** (-mpmath.mp.dps + 3):
                break
        lnp1, _ = lag(n + 1, x)
        wt = mpmath.gamma(n + am + 1) * x / (mpmath.factorial(n) * (n + 1) ** 2 * lnp1 ** 2)
        nodes.append(x)
        weights.append(wt)
    return tuple(nodes), tuple(weights)


def density_fl_transform(N: int, a: float, s: complex) -> TransformValue:
    """``int_0^inf t rho(t) e^{s t} dt`` for the N-point Laguerre ensemble.

    Equals ``N (N + a) (1 - s)^{-(2N + a)} 2F1(1 - N - a, 1 - N; 2; s^2)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    s = _check_s(s)
    x = s * s
    if x.imag == 0:
        x = x.real
    mant, expo, _ = hyp2f1_scaled(N - 1, 1 - N - a, 2.0, x)
    mant = complex(mant)
    if mant == 0:
        return TransformValue(0j, -math.inf, 0.0)
    one_m = 1 - s
    log_mag = (math.log(N * (N + a)) - (2 * N + a) * math.log(abs(one_m))
               + math.log(abs(mant)) + int(expo) * RESCALE_LOG)
    phase = -(2 * N + a) * cmath.phase(one_m) + cmath.phase(mant)
    return TransformValue.from_polar(log_mag, phase)


def density_fl_quadrature(N: int, a: float, s: complex, *, moment: int = 1) -> complex:
    """``int t^moment rho(t) e^{s t} dt`` by adaptive panels on the kernel density."""
    s = _check_s(s)
    ks = KernelSpec.lue(N, a)
    decay = 1 - s.real
    hi = (4 * N + 2 * a + 60) / min(decay, 1.0) + 40
    split = min(1.0, hi)

    def f(t):
        return t ** moment * density(ks, t) * np.exp(s * t)

    # graded first panel for the t^a edge behaviour
    v0, _ = adaptive_gl(f, 0.0, split, rtol=1e-14, initial=4)
    v1, _ = adaptive_gl(f, split, hi, rtol=1e-14, initial=32)
    return complex(v0 + v1)


def hermite_transform_oracle(j: int, k: int, s: complex) -> TransformValue:
    """``int e^{s x} H_j(x) H_k(x) e^{-x^2} dx`` by Gauss-Hermite quadrature.

    The integration line is shifted to pass through ``s/2``, where the
    integrand becomes ``e^{s^2/4}`` times a polynomial, so a rule with
    ``(j + k)/2 + 1`` or more nodes is exact up to rounding.
    """
    if j > 40 or k > 40 or j < 0 or k < 0:
        raise ValueError("oracle is certified for 0 <= j, k <= 40")
    s = complex(s)
    n = (j + k) // 2 + 40
    y, w = np.polynomial.hermite.hermgauss(n)
    z = y + s / 2
    cj = np.zeros(j + 1)
    cj[j] = 1.0
    ck = np.zeros(k + 1)
    ck[k] = 1.0
    vals = np.polynomial.hermite.hermval(z, cj) * np.polynomial.hermite.hermval(z, ck)
    total = complex(math.fsum(w * vals.real), math.fsum(w * vals.imag))
    if total == 0:
        return TransformValue(0j, -math.inf, 0.0)
    return TransformValue.from_polar(math.log(abs(total)) + (s * s / 4).real,
                                     cmath.phase(total) + (s * s / 4).imag)


# --- batched form for the structure-function sum ------------------------------

def scaled_matrix_ik(N: int, a: float, k: float, *, extended: bool = False):
    """Magnitudes of ``M_jl = j! l! I_jl(ik) / sqrt(h_j h_l)`` for j, l < N.

    ``M`` is the matrix of ``e^{ikx}`` in the orthonormal Laguerre basis.
    Returns ``(abs_M, abs_err)`` where ``abs_err`` bounds the rounding
    error of each entry coming from cancellation in the alternating
    hypergeometric sum.
    """
    if k == 0:
        return np.eye(N), np.zeros((N, N))
    j = np.arange(N)
    J, L = np.meshgrid(j, j, indexing="ij")
    lo = np.minimum(J, L)
    hi = np.maximum(J, L)
    sys = orthopoly.PolySystem.laguerre(a)
    log_h = np.array([orthopoly.log_norm(sys, n) for n in range(N)])
    # j! l! Gamma(a+1) (a+1)_j (a+1)_l / (j! l!) over sqrt(h_j h_l)
    lg_pref = (gammaln(J + a + 1) + gammaln(L + a + 1) - gammaln(a + 1.0)
               - 0.5 * (log_h[J] + log_h[L]))
    k2 = k * k
    # |1 - ik| = sqrt(1 + k^2); |ik / (1 - ik)| = k / sqrt(1 + k^2)
    log_one_m = 0.5 * math.log1p(k2)
    log_ratio = math.log(k) - log_one_m
    lg_pref = lg_pref - (a + 1) * log_one_m + (J + L) * log_ratio
    if extended:
        kh, kl = _dd.two_prod(np.float64(k), np.float64(k))
        xh, xl = _dd.div(-1.0, 0.0, kh, kl)
        mant, expo, abs_sum = hyp2f1_scaled(lo, -hi.astype(float), a + 1, (xh, xl), extended=True)
        unit = 2.0 ** -100
    else:
        mant, expo, abs_sum = hyp2f1_scaled(lo, -hi.astype(float), a + 1, -1.0 / k2)
        unit = EPS
    log_scale = lg_pref + expo * RESCALE_LOG
    with np.errstate(over="ignore", under="ignore", divide="ignore"):
        absM = np.abs(mant) * np.exp(log_scale)
        err = abs_sum * (lo + 2) * unit * np.exp(log_scale)
    # exp() of a large log prefactor carries a relative error of eps * |log|
    err = err + absM * EPS * (4 + np.abs(log_scale))
    return absM, err


def hermite_transform_matrix(N: int, s: complex) -> np.ndarray:
    """``int e^{s x} u_j(x) u_l(x) dx`` for j, l < N, with ``u_j`` the
    normalised Hermite functions, by the same shifted Gauss-Hermite rule
    as ``hermite_transform_oracle``."""
    s = complex(s)
    y, w = np.polynomial.hermite.hermgauss(N + 40)
    z = y + s / 2
    rows = np.empty((N, z.size), dtype=complex)
    for j in range(N):
        c = np.zeros(j + 1)
        c[j] = 1.0
        log_norm = 0.5 * (0.5 * math.log(math.pi) + j * math.log(2.0) + math.lgamma(j + 1))
        rows[j] = np.polynomial.hermite.hermval(z, c) * math.exp(-log_norm)
    return cmath.exp(s * s / 4) * ((rows * w) @ rows.T)

"""Exact finite-N structure functions.

For the Laguerre ensemble the structure function

    S_N(k) = <|sum_j e^{i k x_j}|^2> - |<sum_j e^{i k x_j}>|^2

is computed along three independent routes:

* ``s_lue_kernel_sum``: ``N - sum_{j,l<N} |M_jl|^2`` with ``M`` the matrix
  of ``e^{ikx}`` in the orthonormal Laguerre basis, from the closed-form
  transform;
* ``s_lue_jue``: the integral of the Jacobi(a, 0) density over
  ``(1/(1+k^2), 1)``;
* ``s_lue_lhs_quadrature``: tensor Gauss-Laguerre quadrature of the
  double integral of ``e^{ik(x-y)} K_N(x, y)^2``, which equals ``N - S_N``.

The Gaussian ensemble (weight ``e^{-x^2}``) is handled by the integral
of the a = 0 Laguerre density over ``(0, k^2/2)`` and by a direct
Hermite-basis oracle.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_genlaguerre, roots_jacobi

from . import orthopoly
from ._quad import adaptive_gl, gauss_legendre
from .hypergeom import EPS
from .kernels import KernelSpec, density, diag_reduced, laguerre_kernel_complex
from .transforms import hermite_transform_matrix, laguerre_transform, scaled_matrix_ik

DOUBLE_MAX_N = 60
DOUBLE_TOL = 1e-9
LHS_MAX_N = 15
HERMITE_ORACLE_MAX_N = 40


class Method(enum.Enum):
    KERNEL_SUM = "kernel"
    JUE_QUADRATURE = "jue"
    LHS_QUADRATURE = "lhs"
    BREZIN_HIKAMI = "brezin-hikami"
    HERMITE_ORACLE = "hermite-oracle"


class PrecisionError(ValueError):
    """Requested size is beyond what the chosen precision certifies."""


@dataclass(frozen=True)
class StructureQuery:
    N: int
    a: float = 0.0
    k: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        if not self.a > -1:
            raise ValueError(f"a must exceed -1, got {self.a!r}")
        if not math.isfinite(self.k):
            raise ValueError("k must be finite")
        if not self.gamma >= 0:
            raise ValueError("gamma must be non-negative")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "k", abs(float(self.k)))


@dataclass(frozen=True)
class StructureResult:
    value: float
    method: Method
    est_error: float


def _no_gamma(q: StructureQuery):
    if q.gamma != 0:
        raise ValueError("the structure-function routes take gamma = 0; use dip_term for gamma > 0")


# --- LUE ----------------------------------------------------------------------

def s_lue_kernel_sum(q: StructureQuery, *, extended: bool = False) -> StructureResult:
    """``N - sum |M_jl|^2`` with the closed-form transform matrix.

    Double precision is accepted for N <= 60 and only when the error
    bound stays below ``DOUBLE_TOL`` relative; otherwise ``PrecisionError``
    asks for the double-double path (``extended=True``). ``est_error`` is
    a first-order bound built from the per-entry cancellation estimates.
    """
    _no_gamma(q)
    if q.N > DOUBLE_MAX_N and not extended:
        raise PrecisionError(f"N={q.N} exceeds {DOUBLE_MAX_N}; pass extended=True")
    if q.k == 0:
        return StructureResult(0.0, Method.KERNEL_SUM, 0.0)
    absM, err = scaled_matrix_ik(q.N, q.a, q.k, extended=extended)
    total = math.fsum((absM * absM).ravel())
    bound = math.fsum((2 * absM * err + err * err).ravel()) + 4 * q.N * EPS
    if bound > DOUBLE_TOL * max(1.0, q.N - total):
        # the alternating hypergeometric sums cancel too much near k ~ 1
        hint = "use s_lue_jue" if extended else "pass extended=True"
        raise PrecisionError(f"error bound {bound:.3g} too large at N={q.N}, k={q.k}; {hint}")
    return StructureResult(float(q.N - total), Method.KERNEL_SUM, float(bound))


def _jue_upper(ks: KernelSpec, d: float, n: int) -> float:
    x, w = gauss_legendre(n)
    nodes = d + (1 - d) * (x + 1) / 2
    return (1 - d) / 2 * math.fsum(w * density(ks, nodes))


def _jue_lower(ks: KernelSpec, d: float, n: int) -> float:
    # int_0^d x^a R(x) dx with R polynomial: Gauss-Jacobi in t, x = d (1 + t) / 2
    a = ks.sys.a
    t, w = roots_jacobi(n, 0.0, a)
    nodes = d * (1 + t) / 2
    mant_r = diag_reduced(ks, nodes)
    log_pre = (a + 1) * math.log(d / 2)
    return math.fsum(w * mant_r * math.exp(log_pre))


def s_lue_jue(q: StructureQuery) -> StructureResult:
    """Integral of the Jacobi(a, 0) density over ``(1/(1+k^2), 1)``.

    For ``d = 1/(1+k^2) >= 1/2`` the interval is integrated directly with
    Gauss-Legendre; the factor ``x^a`` is smooth there. Otherwise the
    complement ``N - int_0^d`` is used, where a Gauss-Jacobi rule
    carrying ``x^a`` integrates the remaining polynomial exactly.
    The node count is doubled until two estimates agree.
    """
    _no_gamma(q)
    if q.k == 0:
        return StructureResult(0.0, Method.JUE_QUADRATURE, 0.0)
    ks = KernelSpec.jue(q.N, q.a, 0.0)
    d = 1.0 / (1.0 + q.k * q.k)
    n = q.N + int(math.ceil(q.a / 2)) + 20
    if d >= 0.5:
        def rule(m):
            return _jue_upper(ks, d, m)
    else:
        def rule(m):
            return q.N - _jue_lower(ks, d, m)
    # the first rule is already exact up to the x^a factor; one doubling
    # confirms it, further doublings only if the two disagree
    prev = rule(n)
    for _ in range(3):
        n *= 2
        cur = rule(n)
        diff = abs(cur - prev)
        if diff <= 1e-10 * max(1.0, abs(cur)):
            break
        prev = cur
    est = diff + 8 * q.N * EPS
    return StructureResult(float(cur), Method.JUE_QUADRATURE, float(est))


def s_lue_lhs_quadrature(q: StructureQuery) -> StructureResult:
    """``-iint e^{ik(x-y)} rho_2^T(x, y)`` by tensor Gauss-Laguerre quadrature.

    The x and y rays are rotated to ``x = t/(1-ik)`` and ``y = u/(1+ik)``
    so that the exponential is absorbed into the Laguerre weight and the
    remaining integrand is a polynomial; the tensor rule is then exact
    once it has N nodes per axis. Returns ``N - S_N``.
    """
    _no_gamma(q)
    if q.N > LHS_MAX_N:
        raise ValueError(f"tensor quadrature oracle supports N <= {LHS_MAX_N}")
    N, a, k = q.N, q.a, q.k
    sys = orthopoly.PolySystem.laguerre(a)

    def tensor(n):
        t, w = roots_genlaguerre(n, a)
        x = t / complex(1, -k)
        y = t / complex(1, k)
        rx = orthopoly.orthonormal_rows(sys, N - 1, x)
        ry = orthopoly.orthonormal_rows(sys, N - 1, y)
        phx = rx.m * np.exp(rx.log_scale)
        phy = ry.m * np.exp(ry.log_scale)
        kern = phx.T @ phy
        total = (w @ (kern * kern) @ w)
        return total.real / (1 + k * k) ** (a + 1), abs(total.imag)

    n = N + 8
    v1, _ = tensor(n)
    v2, imag = tensor(2 * n)
    return StructureResult(float(v2), Method.LHS_QUADRATURE, float(abs(v2 - v1) + imag + 8 * N * EPS))


# --- GUE ----------------------------------------------------------------------

def s_gue_brezin_hikami(N: int, k: float) -> StructureResult:
    """Gaussian-ensemble structure function as ``int_0^{k^2/2}`` of the
    a = 0 Laguerre density (equivalently ``int_0^k t K(t^2/2, t^2/2) dt``)."""
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    k = abs(float(k))
    if k == 0:
        return StructureResult(0.0, Method.BREZIN_HIKAMI, 0.0)
    ks = KernelSpec.lue(int(N), 0.0)
    top = min(k * k / 2, laguerre_upper_cutoff(int(N), 0.0))
    panels = max(4, int(top / 4))
    val, err = adaptive_gl(lambda u: density(ks, u), 0.0, top, rtol=1e-14, initial=panels)
    return StructureResult(float(val), Method.BREZIN_HIKAMI, float(err + 8 * N * EPS))


def s_gue_direct_oracle(N: int, k: float) -> StructureResult:
    """``N - sum |<psi_j, e^{ikx} psi_l>|^2 / (h_j h_l)`` in the Hermite basis."""
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    if N > HERMITE_ORACLE_MAX_N:
        raise ValueError(f"Hermite oracle supports N <= {HERMITE_ORACLE_MAX_N}")
    k = abs(float(k))
    if k == 0:
        return StructureResult(0.0, Method.HERMITE_ORACLE, 0.0)
    M = hermite_transform_matrix(int(N), 1j * k)
    total = math.fsum((np.abs(M) ** 2).ravel())
    return StructureResult(float(N - total), Method.HERMITE_ORACLE, float(16 * N * N * EPS))


def cov_gue(N: int, k1: complex, k2: complex) -> complex:
    """Gaussian-ensemble covariance of ``sum e^{i k1 x}`` and ``sum e^{-i k2 x}``.

    Evaluated as the line integral from 0 to ``k2`` of
    ``((t1 + t2)/2) K(t1^2/2, t2^2/2)`` with ``t1 = k1 - k2 + s``,
    ``t2 = s``, using the a = 0 Laguerre kernel continued to complex
    arguments. ``k1 = k + i G`` and ``k2 = k - i G`` with ``G >= 0``.
    """
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    k1, k2 = complex(k1), complex(k2)
    if (k1 - k2).imag < 0:
        raise ValueError("k1 - k2 must have non-negative imaginary part (regulator G >= 0)")
    if k2 == 0:
        return 0j
    shift = k1 - k2

    def integrand(u):
        s = k2 * u
        t1 = shift + s
        kern = laguerre_kernel_complex(int(N), t1 * t1 / 2, s * s / 2)
        return (t1 + s) / 2 * kern * k2

    val, _ = adaptive_gl(integrand, 0.0, 1.0, rtol=1e-13, initial=max(4, int(abs(k2))))
    return complex(val)


# --- the squared-mean term ----------------------------------------------------

def laguerre_upper_cutoff(N: int, a: float) -> float:
    """Point beyond which the Laguerre density is negligible (< e^{-80})."""
    edge = (math.sqrt(N + a) + math.sqrt(N)) ** 2
    return edge + 40.0 * (N + a) ** (1 / 3) + 100.0


def mean_exp(N: int, a: float, s: complex) -> complex:
    """``int rho(t) e^{s t} dt`` for the Laguerre ensemble, Re s <= 0.

    Direct quadrature of the density: a Gauss-Jacobi rule carrying
    ``t^a`` on ``[0, 1]`` and adaptive Gauss-Legendre panels beyond.
    The integrand is bounded by the density, so there is no cancellation
    beyond that of the oscillation itself.
    """
    s = complex(s)
    if s.real > 0:
        raise ValueError("Re s must be <= 0")
    ks = KernelSpec.lue(N, a)
    t, w = roots_jacobi(N + 40, 0.0, a)
    nodes = (1 + t) / 2
    head = (0.5 ** (a + 1)) * np.sum(w * diag_reduced(ks, nodes) * np.exp(-nodes + s * nodes))
    top = laguerre_upper_cutoff(N, a)
    # about four panels per oscillation period to start with
    panels = max(8, int(top * (abs(s.imag) + 1) / 4))
    tail, _ = adaptive_gl(lambda u: density(ks, u) * np.exp(s * u), 1.0, top,
                          rtol=1e-13, atol=1e-14, initial=panels)
    return complex(head + tail)


def mean_exp_trace(N: int, a: float, s: complex) -> complex:
    """Same quantity as the trace ``sum_j (j!)^2 I_jj(s) / h_j`` of the
    closed-form transform. Cancels badly once N and |s| grow; kept for
    small-N cross-checks."""
    sys = orthopoly.PolySystem.laguerre(a)
    terms = []
    for j in range(N):
        tv = laguerre_transform(j, j, a, s)
        lm = tv.log_mag + 2 * math.lgamma(j + 1) - orthopoly.log_norm(sys, j)
        terms.append(cmath.rect(math.exp(lm), tv.phase))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def dip_term(q: StructureQuery) -> float:
    """``|int rho(t) e^{(-G + ik) t} dt|^2``: the squared mean of the statistic."""
    if q.k == 0 and q.gamma == 0:
        return float(q.N * q.N)
    return abs(mean_exp(q.N, q.a, complex(-q.gamma, q.k))) ** 2

"""Christoffel-Darboux kernels, densities and two-point functions.

With orthonormal polynomials ``phi_n`` (``p_n / sqrt(h_n)``) and
``u_n = sqrt(w) phi_n``, the kernel of an N-point ensemble is

    K_N(x, y) = sum_{j<N} u_j(x) u_j(y)
              = b_N (u_N(x) u_{N-1}(y) - u_{N-1}(x) u_N(y)) / (x - y),

where ``b_N = sqrt(h_N / h_{N-1})``. On (and very near) the diagonal the
confluent form ``w(x) b_N (phi_N'(x) phi_{N-1}(x) - phi_{N-1}'(x) phi_N(x))``
replaces the 0/0 ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import orthopoly
from .orthopoly import Family, PolySystem


@dataclass(frozen=True)
class KernelSpec:
    sys: PolySystem
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))

    @classmethod
    def lue(cls, N: int, a: float = 0.0) -> "KernelSpec":
        return cls(PolySystem.laguerre(a), N)

    @classmethod
    def jue(cls, N: int, a: float = 0.0, b: float = 0.0) -> "KernelSpec":
        return cls(PolySystem.jacobi(a, b), N)

    @classmethod
    def gue(cls, N: int) -> "KernelSpec":
        return cls(PolySystem.hermite(), N)


def cd_eps(x):
    """Near-diagonal switch-over distance."""
    return 1e-6 * np.maximum(1.0, np.abs(x))


def _b(ks: KernelSpec) -> float:
    _, beta = orthopoly.recurrence_coefficients(ks.sys, ks.N + 1)
    return math.sqrt(beta[ks.N])


def _log_diag_reduced(ks: KernelSpec, x: np.ndarray):
    """``K_N(x, x) / w(x)`` as ``(mantissa, log_scale)`` arrays."""
    rows = orthopoly.orthonormal_rows(ks.sys, ks.N, x, derivative=True, first=ks.N - 1)
    m0, m1 = rows.m[0], rows.m[1]
    d0, d1 = rows.dm[0], rows.dm[1]
    mant = _b(ks) * (d1 * m0 - d0 * m1)
    return mant, rows.log_scale[0] + rows.log_scale[1]


def diag_reduced(ks: KernelSpec, x):
    """``K_N(x, x) / w(x)``: the density with the weight divided out.

    Finite wherever the polynomials are; useful for product-Gauss rules
    that carry the weight themselves.
    """
    x = np.asarray(x, dtype=float)
    mant, ls = _log_diag_reduced(ks, x)
    with np.errstate(over="ignore", under="ignore"):
        out = mant * np.exp(ls)
    return out if out.ndim else float(out)


def density(ks: KernelSpec, x):
    """One-point density ``rho(x) = K_N(x, x)``; zero off the support."""
    x = np.asarray(x, dtype=float)
    lw = orthopoly.log_weight(ks.sys, x)
    inside = np.isfinite(lw)
    out = np.zeros(x.shape)
    if np.any(inside):
        mant, ls = _log_diag_reduced(ks, x[inside])
        with np.errstate(over="ignore", under="ignore"):
            out[inside] = mant * np.exp(ls + np.asarray(lw)[inside])
    return out if out.ndim else float(out)


def _u_pair(ks: KernelSpec, x: np.ndarray):
    u = orthopoly.orthonormal_functions(ks.sys, ks.N, x, first=ks.N - 1)
    return u[0], u[1]


def cd_kernel(ks: KernelSpec, x, y):
    """``K_N(x, y)``; vectorised over broadcastable ``x`` and ``y``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.empty(x.shape)
    near = np.abs(x - y) <= cd_eps(x)
    far = ~near
    if np.any(far):
        xf, yf = x[far], y[far]
        ux0, ux1 = _u_pair(ks, xf)
        uy0, uy1 = _u_pair(ks, yf)
        out[far] = _b(ks) * (ux1 * uy0 - ux0 * uy1) / (xf - yf)
    if np.any(near):
        xn, yn = x[near], y[near]
        # the weight is taken at x and y separately, the polynomial part at the midpoint
        mid = 0.5 * (xn + yn)
        lw = 0.5 * (orthopoly.log_weight(ks.sys, xn) + orthopoly.log_weight(ks.sys, yn))
        lw = np.asarray(lw, dtype=float)
        inside = np.isfinite(lw)
        vals = np.zeros(xn.shape)
        if np.any(inside):
            mant, ls = _log_diag_reduced(ks, mid[inside])
            with np.errstate(over="ignore", under="ignore"):
                vals[inside] = mant * np.exp(ls + lw[inside])
        out[near] = vals
    return out if out.ndim else float(out)


def kernel_sum(ks: KernelSpec, x, y):
    """``K_N(x, y)`` as the plain N-term sum; reference for the CD form."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ux = orthopoly.orthonormal_functions(ks.sys, ks.N - 1, x)
    uy = orthopoly.orthonormal_functions(ks.sys, ks.N - 1, y)
    out = np.sum(ux * uy, axis=0)
    return out if out.ndim else float(out)


def rho2_truncated(ks: KernelSpec, x, y):
    """Connected two-point function ``-K_N(x, y)^2``."""
    return -np.square(cd_kernel(ks, x, y))


def laguerre_kernel_complex(N: int, x, y, a: float = 0.0):
    """Laguerre kernel continued to complex ``x, y``.

    Uses the N-term sum with ``sqrt(w(x) w(y)) = (x y)^{a/2} e^{-(x+y)/2}``
    (principal branch). No diagonal special case is needed.
    """
    sys = PolySystem.laguerre(a)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(y, dtype=complex))
    rx = orthopoly.orthonormal_rows(sys, N - 1, x)
    ry = orthopoly.orthonormal_rows(sys, N - 1, y)
    logw = -(x + y) / 2
    if a != 0:
        logw = logw + 0.5 * a * (np.log(x) + np.log(y))
    terms = rx.m * ry.m * np.exp(rx.log_scale + ry.log_scale + logw)
    out = np.sum(terms, axis=0)
    return out if out.ndim else complex(out)


def _monic_psi_log(sys: PolySystem, n: int, x: float) -> tuple[float, float]:
    v = orthopoly.psi(sys, n, x)
    return v.sign, v.log_abs


def verify_prop2(ks: KernelSpec, x: float, y: float, h: float = 1e-5) -> tuple[float, float]:
    """Scaling-derivative identity for the Laguerre kernel.

    LHS: ``(x d/dx + y d/dy) sqrt(x y) K_N(x, y)`` by central differences.
    RHS: ``-sqrt(x y) / (2 h_{N-1}) (psi_N(x) psi_{N-1}(y) + psi_{N-1}(x) psi_N(y))``
    with monic ``psi_n = sqrt(w) p_n``.
    """
    if ks.sys.family is not Family.LAGUERRE:
        raise ValueError("identity holds for the Laguerre kernel")
    if x <= 0 or y <= 0:
        raise ValueError("x and y must be positive")
    if x == y:
        raise ValueError("x and y must differ")

    def f(u, v):
        return math.sqrt(u * v) * cd_kernel(ks, u, v)

    lhs = x * (f(x + h, y) - f(x - h, y)) / (2 * h) + y * (f(x, y + h) - f(x, y - h)) / (2 * h)
    N = ks.N
    lh = orthopoly.log_norm(ks.sys, N - 1)
    total = 0.0
    for (n1, n2) in ((N, N - 1), (N - 1, N)):
        s1, l1 = _monic_psi_log(ks.sys, n1, x)
        s2, l2 = _monic_psi_log(ks.sys, n2, y)
        total += s1 * s2 * math.exp(l1 + l2 - lh)
    rhs = -0.5 * math.sqrt(x * y) * total
    return lhs, rhs


def verify_prop4(a: float, N: int, s: float, h: float = 1e-5) -> tuple[float, float]:
    """Derivative of ``s (1 - s) K_N(s, s)`` for the Jacobi(a, 0) kernel.

    LHS by central differences; RHS is
    ``-(2N + a) / h_{N-1} * w(s) p_N(s) p_{N-1}(s)``.
    """
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    ks = KernelSpec.jue(N, a, 0.0)

    def g(t):
        return t * (1 - t) * density(ks, t)

    lhs = (g(s + h) - g(s - h)) / (2 * h)
    pn = orthopoly.eval_monic(ks.sys, N, s)
    pm = orthopoly.eval_monic(ks.sys, N - 1, s)
    lw = orthopoly.log_weight(ks.sys, s)
    lh = orthopoly.log_norm(ks.sys, N - 1)
    rhs = -(2 * N + a) * pn.sign * pm.sign * math.exp(pn.log_abs + pm.log_abs + lw - lh)
    return lhs, rhs

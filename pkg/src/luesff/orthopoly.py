"""Monic Laguerre, Jacobi and Hermite polynomial systems.

Weights:

    Laguerre(a):   x^a e^{-x}          on (0, inf)
    Jacobi(a, b):  x^a (1 - x)^b       on (0, 1)
    Hermite:       e^{-x^2}            on R

Polynomials are evaluated with the monic three-term recurrence

    p_{n+1}(x) = (x - alpha_n) p_n(x) - beta_n p_{n-1}(x),

and, for the kernel code, in orthonormal form with a running per-point
log scale so that degrees of several hundred neither overflow nor
underflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

PARAM_FLOOR = -0.9

# rescaling step for the recurrences, an exact power of two
_RESCALE_BITS = 300
_RESCALE = 2.0 ** -_RESCALE_BITS
_RESCALE_LOG = _RESCALE_BITS * math.log(2.0)
_BIG = 2.0 ** _RESCALE_BITS


class Family(enum.Enum):
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"
    HERMITE = "hermite"


@dataclass(frozen=True)
class PolySystem:
    family: Family
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, Family):
            raise TypeError(f"family must be a Family, got {self.family!r}")
        if self.family is Family.HERMITE:
            # parameters are ignored; normalise so equal systems compare equal
            object.__setattr__(self, "a", 0.0)
            object.__setattr__(self, "b", 0.0)
            return
        if not math.isfinite(self.a) or self.a < PARAM_FLOOR:
            raise ValueError(f"parameter a={self.a} below the supported floor {PARAM_FLOOR}")
        if self.family is Family.LAGUERRE:
            object.__setattr__(self, "b", 0.0)
        elif not math.isfinite(self.b) or self.b < PARAM_FLOOR:
            raise ValueError(f"parameter b={self.b} below the supported floor {PARAM_FLOOR}")

    @classmethod
    def laguerre(cls, a: float = 0.0) -> "PolySystem":
        return cls(Family.LAGUERRE, float(a))

    @classmethod
    def jacobi(cls, a: float = 0.0, b: float = 0.0) -> "PolySystem":
        return cls(Family.JACOBI, float(a), float(b))

    @classmethod
    def hermite(cls) -> "PolySystem":
        return cls(Family.HERMITE)

    @property
    def support(self) -> tuple[float, float]:
        if self.family is Family.LAGUERRE:
            return (0.0, math.inf)
        if self.family is Family.JACOBI:
            return (0.0, 1.0)
        return (-math.inf, math.inf)


@dataclass(frozen=True)
class PolyValue:
    """A real number stored as ``mantissa * exp(log_scale)``.

    ``|mantissa|`` lies in [1, e) unless the value is zero, in which case
    both fields are 0.
    """

    mantissa: float
    log_scale: float

    @classmethod
    def from_log(cls, sign: float, log_abs: float) -> "PolyValue":
        if sign == 0 or log_abs == -math.inf:
            return cls(0.0, 0.0)
        scale = math.floor(log_abs)
        mant = math.copysign(math.exp(log_abs - scale), sign)
        return cls(mant, float(scale))

    @classmethod
    def from_float(cls, value: float) -> "PolyValue":
        if value == 0:
            return cls(0.0, 0.0)
        log_abs = math.log(abs(value))
        scale = math.floor(log_abs)
        mant = value / math.exp(scale)
        # rounding in exp() can leave the mantissa a hair outside [1, e)
        if abs(mant) >= math.e or abs(mant) < 1.0:
            return cls.from_log(math.copysign(1.0, value), log_abs)
        return cls(mant, float(scale))

    @property
    def sign(self) -> float:
        return 0.0 if self.mantissa == 0 else math.copysign(1.0, self.mantissa)

    @property
    def log_abs(self) -> float:
        if self.mantissa == 0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.log_scale

    @property
    def value(self) -> float:
        if self.mantissa == 0:
            return 0.0
        return self.mantissa * math.exp(self.log_scale)

    def __float__(self) -> float:
        return self.value

    def __mul__(self, other: "PolyValue") -> "PolyValue":
        return PolyValue.from_log(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "PolyValue") -> "PolyValue":
        if other.mantissa == 0:
            raise ZeroDivisionError("division by a zero PolyValue")
        return PolyValue.from_log(self.sign * other.sign, self.log_abs - other.log_abs)


def _check_degree(n: int) -> int:
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


@lru_cache(maxsize=256)
def _coefficients(sys: PolySystem, n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n, dtype=float)
    if sys.family is Family.LAGUERRE:
        alpha = 2 * k + sys.a + 1
        beta = k * (k + sys.a)
    elif sys.family is Family.HERMITE:
        alpha = np.zeros(n)
        beta = k / 2
    else:
        a, b = sys.a, sys.b
        s = 2 * k + a + b
        with np.errstate(divide="ignore", invalid="ignore"):
            at = (b * b - a * a) / (s * (s + 2))
            bt = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1))
        # n = 0 and n = 1 have removable 0/0s when a + b is 0 or -1
        if n > 0:
            at[0] = (b - a) / (a + b + 2)
            bt[0] = 0.0
        if n > 1:
            at[1] = (b * b - a * a) / ((a + b + 2) * (a + b + 4))
            bt[1] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        # map t = 1 - 2x from [-1, 1] onto (0, 1)
        alpha = (1 - at) / 2
        beta = bt / 4
    alpha.setflags(write=False)
    beta.setflags(write=False)
    return alpha, beta


def recurrence_coefficients(sys: PolySystem, n: int) -> tuple[np.ndarray, np.ndarray]:
    """First ``n`` monic recurrence coefficients ``(alpha_k, beta_k)``.

    ``beta_0`` is reported as 0; for k >= 1, ``beta_k = h_k / h_{k-1}``.
    """
    return _coefficients(sys, _check_degree(n))


def log_norm(sys: PolySystem, n: int) -> float:
    """``log h_n`` with ``h_n = int w p_n^2``."""
    n = _check_degree(n)
    a, b = sys.a, sys.b
    if sys.family is Family.LAGUERRE:
        return math.lgamma(n + 1) + math.lgamma(n + a + 1)
    if sys.family is Family.HERMITE:
        return 0.5 * math.log(math.pi) + math.lgamma(n + 1) - n * math.log(2.0)
    if n == 0:
        return math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2)
    return (
        math.lgamma(n + 1)
        + math.lgamma(n + a + 1)
        + math.lgamma(n + b + 1)
        + math.lgamma(n + a + b + 1)
        - math.log(2 * n + a + b + 1)
        - 2 * math.lgamma(2 * n + a + b + 1)
    )


def norm(sys: PolySystem, n: int) -> PolyValue:
    return PolyValue.from_log(1.0, log_norm(sys, n))


def log_weight(sys: PolySystem, x):
    """``log w(x)``; ``-inf`` off the open support. Accepts arrays."""
    x = np.asarray(x, dtype=float)
    if sys.family is Family.HERMITE:
        out = -x * x
    else:
        out = np.full(x.shape, -np.inf)
        if sys.family is Family.LAGUERRE:
            inside = x > 0
            xi = x[inside]
            out[inside] = sys.a * np.log(xi) - xi
        else:
            inside = (x > 0) & (x < 1)
            xi = x[inside]
            out[inside] = sys.a * np.log(xi) + sys.b * np.log1p(-xi)
    return out if out.ndim else float(out)


def weight(sys: PolySystem, x):
    return np.exp(log_weight(sys, x))


def eval_monic(sys: PolySystem, n: int, x: float) -> PolyValue:
    n = _check_degree(n)
    x = float(x)
    alpha, beta = _coefficients(sys, n)
    prev, cur = 0.0, 1.0
    scale = 0.0
    for k in range(n):
        prev, cur = cur, (x - float(alpha[k])) * cur - float(beta[k]) * prev
        if abs(cur) > _BIG or abs(prev) > _BIG:
            prev *= _RESCALE
            cur *= _RESCALE
            scale += _RESCALE_LOG
    if scale == 0.0:
        return PolyValue.from_float(cur)
    if cur == 0:
        return PolyValue(0.0, 0.0)
    return PolyValue.from_log(cur, math.log(abs(cur)) + scale)


def psi(sys: PolySystem, n: int, x: float) -> PolyValue:
    """``sqrt(w(x)) p_n(x)``, zero outside the support."""
    lw = log_weight(sys, float(x))
    if lw == -math.inf:
        return PolyValue(0.0, 0.0)
    p = eval_monic(sys, n, x)
    return PolyValue.from_log(p.sign, p.log_abs + 0.5 * lw)


@dataclass
class ScaledRows:
    """Orthonormal polynomial values ``phi_n(x) = m[n] * exp(log_scale[n])``.

    ``dm`` (when requested) holds the x-derivatives on the same scale.
    Row ``n`` of each array corresponds to degree ``n``.
    """

    m: np.ndarray
    log_scale: np.ndarray
    dm: np.ndarray | None = None


def orthonormal_rows(sys: PolySystem, nmax: int, x, *, derivative: bool = False,
                     first: int = 0) -> ScaledRows:
    """Orthonormal polynomials ``phi_first .. phi_nmax`` at the points ``x``.

    ``x`` may be real or complex (complex only makes sense where the
    weight is continued analytically by the caller).
    """
    nmax = _check_degree(nmax)
    first = _check_degree(first)
    if first > nmax:
        raise ValueError("first row beyond nmax")
    x = np.asarray(x)
    if not np.iscomplexobj(x):
        x = x.astype(float)
    alpha, beta = _coefficients(sys, nmax + 1)
    sb = np.sqrt(beta)
    ls = np.full(x.shape, -0.5 * log_norm(sys, 0))
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    dprev = np.zeros_like(x)
    dcur = np.zeros_like(x)
    nrows = nmax - first + 1
    m = np.empty((nrows,) + x.shape, dtype=x.dtype)
    lsr = np.empty((nrows,) + x.shape)
    dm = np.empty((nrows,) + x.shape, dtype=x.dtype) if derivative else None

    def store(k):
        if k >= first:
            m[k - first] = cur
            lsr[k - first] = ls
            if derivative:
                dm[k - first] = dcur

    store(0)
    for k in range(nmax):
        shifted = x - alpha[k]
        nxt = (shifted * cur - sb[k] * prev) / sb[k + 1]
        if derivative:
            dnxt = (shifted * dcur + cur - sb[k] * dprev) / sb[k + 1]
            dprev, dcur = dcur, dnxt
        prev, cur = cur, nxt
        big = np.maximum(np.abs(cur), np.abs(prev)) > _BIG
        if np.any(big):
            cur = np.where(big, cur * _RESCALE, cur)
            prev = np.where(big, prev * _RESCALE, prev)
            if derivative:
                dcur = np.where(big, dcur * _RESCALE, dcur)
                dprev = np.where(big, dprev * _RESCALE, dprev)
            ls = ls + np.where(big, _RESCALE_LOG, 0.0)
        store(k + 1)
    return ScaledRows(m, lsr, dm)


def orthonormal_functions(sys: PolySystem, nmax: int, x, *, first: int = 0) -> np.ndarray:
    """Rows ``sqrt(w(x)) phi_n(x)`` for n = first..nmax as plain floats.

    These are the normalised functions (unit L^2 norm), bounded on the
    support, so they are representable even when ``phi_n`` alone is not.
    """
    x = np.asarray(x, dtype=float)
    rows = orthonormal_rows(sys, nmax, x, first=first)
    lw = log_weight(sys, x)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = rows.m * np.exp(rows.log_scale + 0.5 * lw)
    return np.where(np.isfinite(lw), out, 0.0)


def laguerre_series(n: int, a: float, x: float) -> float:
    """Generalised Laguerre ``L_n^{(a)}(x)`` from its explicit finite sum.

    Independent of the recurrence; used as a cross-check.
    """
    n = _check_degree(n)
    # c_j = (-1)^j binom(n + a, n - j) / j!, built by exact ratios
    c = math.exp(gammaln(n + a + 1) - gammaln(n + 1) - gammaln(a + 1)) if a != int(a) else \
        float(math.comb(n + int(a), n))
    terms = []
    for j in range(n + 1):
        terms.append(c * x ** j)
        c *= -(n - j) / ((a + j + 1) * (j + 1))
    return math.fsum(terms)

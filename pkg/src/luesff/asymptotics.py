"""Closed-form large-N limits of the Laguerre structure function.

Global scaling uses ``lambda = 4 N x`` and a Laguerre parameter ``a = alpha N``.
With ``c = (alpha / (2 + alpha))^2`` and ``d = 1 / (1 + k^2)``, the limit
of ``S_N(k) / N`` is the Wachter mass of ``(d, 1)``, which reaches 1 at
``k_c = sqrt((1 - c) / c)``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from ._quad import adaptive_gl
from .hypergeom import bessel_j, hyp0f1
from .kernels import KernelSpec, density


class Regime(enum.Enum):
    SMALL_K = "small-k"
    LARGE_K = "large-k"
    NEAR_KC = "near-kc"


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not alpha >= 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    return alpha


@dataclass(frozen=True)
class ScalingParams:
    alpha: float

    def __post_init__(self):
        _check_alpha(self.alpha)

    @property
    def c(self) -> float:
        return (self.alpha / (2 + self.alpha)) ** 2

    @property
    def k_c(self) -> float:
        return kc(self.alpha) if self.alpha > 0 else math.inf

    @property
    def c_plus(self) -> float:
        return (math.sqrt(self.alpha + 1) + 1) / 2

    @property
    def c_minus(self) -> float:
        return (math.sqrt(self.alpha + 1) - 1) / 2


def kc(alpha: float) -> float:
    """Transition wavenumber where the limiting curve reaches its plateau."""
    alpha = _check_alpha(alpha)
    if alpha == 0:
        raise ValueError("k_c is infinite at alpha = 0")
    c = ScalingParams(alpha).c
    return math.sqrt((1 - c) / c)


def _scalar_or_array(out):
    return float(out) if np.ndim(out) == 0 else out


# --- densities ----------------------------------------------------------------

def mp_density(x, alpha: float):
    """Marchenko-Pastur density in the variable ``x = lambda / 4N``."""
    p = ScalingParams(_check_alpha(alpha))
    lo, hi = p.c_minus ** 2, p.c_plus ** 2
    x = np.asarray(x, dtype=float)
    inside = (x > lo) & (x < hi)
    xs = np.where(inside, x, 0.5 * (lo + hi))
    out = np.where(inside, 2 / (np.pi * xs) * np.sqrt((hi - xs) * (xs - lo)), 0.0)
    return _scalar_or_array(out)


def wachter_density(x, alpha: float):
    """Limiting Jacobi(a = alpha N, b = 0) density on ``(c, 1)``."""
    c = ScalingParams(_check_alpha(alpha)).c
    x = np.asarray(x, dtype=float)
    inside = (x > c) & (x < 1)
    xs = np.where(inside, x, 0.5 * (c + 1))
    out = np.where(inside, np.sqrt((xs - c) / (1 - xs)) / (np.pi * (1 - math.sqrt(c)) * xs), 0.0)
    return _scalar_or_array(out)


def wachter_mass(lo: float, hi: float, alpha: float) -> float:
    """Integral of the Wachter density over ``(lo, hi)``.

    Uses ``x = c + (1 - c) sin^2(theta)``, which removes the square-root
    singularities at both ends of the support.
    """
    c = ScalingParams(_check_alpha(alpha)).c
    lo, hi = max(lo, c), min(hi, 1.0)
    if hi <= lo:
        return 0.0

    def theta(x):
        return math.asin(math.sqrt(min(1.0, max(0.0, (x - c) / (1 - c)))))

    pref = 2 * (1 - c) / (np.pi * (1 - math.sqrt(c)))

    def f(t):
        s2 = np.sin(t) ** 2
        return pref * s2 / (c + (1 - c) * s2)

    val, _ = adaptive_gl(f, theta(lo), theta(hi), rtol=1e-14)
    return float(val)


def mp_integral(f, alpha: float) -> float:
    """``int f(x) mp_density(x) dx`` with the edge singularities mapped out."""
    p = ScalingParams(_check_alpha(alpha))
    lo, width = p.c_minus ** 2, p.c_plus ** 2 - p.c_minus ** 2

    def g(t):
        s2 = np.sin(t) ** 2
        x = lo + width * s2
        # sqrt((hi - x)(x - lo)) dx = 2 width^2 sin^2 cos^2 dtheta
        return f(x) * (2 / np.pi) * 2 * width ** 2 * s2 * np.cos(t) ** 2 / x

    val, _ = adaptive_gl(g, 0.0, math.pi / 2, rtol=1e-14, initial=4)
    return complex(val) if np.iscomplexobj(val) else float(val)


def hard_edge_density(x):
    """``(J0(sqrt x)^2 + J1(sqrt x)^2) / 4``."""
    x = np.asarray(x, dtype=float)
    v = np.sqrt(x)
    out = 0.25 * (np.square(bessel_j(0, v)) + np.square(bessel_j(1, v)))
    return _scalar_or_array(out)


def hard_edge_first_order(x):
    """``d/dx [x hard_edge_density(x)] = J0(sqrt x)^2 / 4``."""
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(0.25 * np.square(bessel_j(0, np.sqrt(x))))


# --- limiting structure functions ---------------------------------------------

def s_inf(k, alpha: float):
    """Limit of ``S_N(k) / N`` with ``a = alpha N``."""
    alpha = _check_alpha(alpha)
    k = np.abs(np.asarray(k, dtype=float))
    if alpha == 0:
        return _scalar_or_array(2 / np.pi * np.arctan(k))
    c = ScalingParams(alpha).c
    rc = math.sqrt(c)
    k2 = k * k
    # 1 - d and d - c formed without cancellation
    one_m_d = k2 / (1 + k2)
    d_m_c = ((1 - c) - c * k2) / (1 + k2)
    ramp = d_m_c > 0
    u = np.where(ramp, np.clip(d_m_c / (1 - c), 0.0, 1.0), 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        # arctan and arcsin of the complementary arguments; near the
        # plateau these are small, so the difference from 1 stays accurate
        t_far = np.arctan(np.sqrt(np.where(ramp, c * one_m_d / np.maximum(d_m_c, 1e-300), 0.0)))
        t_near = np.arctan(np.sqrt(np.where(ramp, d_m_c / (c * np.maximum(one_m_d, 1e-300)), 0.0)))
    pref = 2 / (np.pi * (1 - rc))
    val_far = pref * (-rc * t_far + np.arcsin(np.sqrt(np.clip(one_m_d / (1 - c), 0.0, 1.0))))
    val_near = 1 - pref * (np.arcsin(np.sqrt(u)) - rc * t_near)
    val = np.where(u < 0.5, val_near, val_far)
    return _scalar_or_array(np.where(ramp, np.clip(val, 0.0, 1.0), 1.0))


def s_inf_expansion(k: float, alpha: float, regime: Regime) -> float:
    """Leading terms of ``s_inf`` at small k, large k (alpha = 0 only) or
    just below ``k_c`` (alpha > 0 only)."""
    alpha = _check_alpha(alpha)
    regime = Regime(regime)
    if regime is Regime.SMALL_K:
        if alpha == 0:
            return 2 * k / math.pi - 2 * k ** 3 / (3 * math.pi)
        return 2 * math.sqrt(1 + alpha) / math.pi * k
    if regime is Regime.LARGE_K:
        if alpha != 0:
            raise ValueError("the large-k expansion applies to alpha = 0 only")
        return 1 - 2 / (math.pi * k) + 2 / (3 * math.pi * k ** 3)
    if alpha == 0:
        raise ValueError("the near-k_c expansion needs alpha > 0")
    c = ScalingParams(alpha).c
    kc2 = (1 - c) / c
    if k * k > kc2:
        raise ValueError("the near-k_c expansion applies below k_c")
    t = (kc2 - k * k) / ((1 + k * k) * (1 + kc2))
    return 1 - 2 / (3 * math.pi * (1 - math.sqrt(c))) / (c * math.sqrt(1 - c)) * t ** 1.5


def s_global_inf(k: float) -> float:
    """``int_0^{k^2} hard_edge_density``, by quadrature in ``t = sqrt(x)``."""
    k = abs(float(k))
    if k == 0:
        return 0.0

    def f(t):
        return 0.5 * t * (np.square(bessel_j(0, t)) + np.square(bessel_j(1, t)))

    val, _ = adaptive_gl(f, 0.0, k, rtol=1e-14, initial=max(1, int(k)))
    return float(val)


def gue_global_limit(tau: float) -> float:
    """Limit of ``S_N / N`` for the Gaussian ensemble at ``k = 2 sqrt(2N) tau``."""
    tau = abs(float(tau))
    if tau >= 1:
        return 1.0
    return 2 / math.pi * (tau * math.sqrt(1 - tau * tau) + math.asin(tau))


def sine_kernel_slope(k):
    """``(2/pi) / (1 + k^2)``, the slope of ``s_inf(k, 0)``."""
    k = np.asarray(k, dtype=float)
    return _scalar_or_array(2 / np.pi / (1 + k * k))


# --- means of linear statistics -----------------------------------------------

def global_mean_0f1(s: float, alpha: float) -> float:
    """Limit of ``(1/N) <sum a_s(lambda_j / 4N)>`` for ``a_s(x) = x e^{s x}``.

    Equals ``((1 + alpha)/4) e^{(s/2)(1 + alpha/2)} 0F1(2; (1 + alpha)(s/4)^2)``,
    the closed form of ``int x e^{s x} mp_density(x) dx``.
    """
    alpha = _check_alpha(alpha)
    return (1 + alpha) / 4 * math.exp(s / 2 * (1 + alpha / 2)) * hyp0f1(2.0, (1 + alpha) * (s / 4) ** 2)


def global_mean_quadrature(s: float, alpha: float) -> float:
    """``int x e^{s x} mp_density(x) dx`` by quadrature."""
    return mp_integral(lambda x: x * np.exp(s * x), alpha)


@dataclass(frozen=True)
class DipAmplitude:
    """Leading large-N behaviour of ``<sum_j e^{i k lambda_j}>``.

    ``value`` is the complex amplitude when it is known in closed form
    (alpha = 0). For alpha > 0 only the scale ``envelope`` and the two
    edge phases are known; the edge constants are not. Always asymptotic,
    with no error bound.
    """

    value: complex | None
    envelope: float
    phases: tuple[complex, ...]


def dip_amplitude(N: int, k: float, alpha: float) -> DipAmplitude:
    alpha = _check_alpha(alpha)
    if not k > 0:
        raise ValueError("k must be positive")
    if alpha == 0:
        # stationary contribution of the x^{-1/2} hard edge
        val = cmath.sqrt(1j * N / (math.pi * k))
        return DipAmplitude(val, abs(val), ())
    p = ScalingParams(alpha)
    phases = tuple(cmath.exp(1j * cpm ** 2 * 4 * N * k) for cpm in (p.c_plus, p.c_minus))
    return DipAmplitude(None, N ** -0.5 * k ** -1.5, phases)


# --- hard-edge rate -----------------------------------------------------------

def scaled_jue_density(N: int, x, b: float = 0.0, scale: float = 4.0):
    """``rho(x / (scale N^2)) / (scale N^2)`` for the Jacobi(0, b) ensemble."""
    ks = KernelSpec.jue(N, 0.0, b)
    u = scale * N * N
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(density(ks, x / u) / u)


def hard_edge_rate_check(N: int, x: float, b: float, *, scale: float = 4.0) -> tuple[float, float]:
    """Residual of the scaled Jacobi(0, b) density against the hard-edge
    limit, and its predicted first-order term ``(b/N) d/dx[x rho_hard(x)]``.
    Their ratio tends to 1 as N grows."""
    if N < 10:
        raise ValueError("N must be >= 10")
    if not 0 < x < 50:
        raise ValueError("x must lie in (0, 50)")
    resid = scaled_jue_density(N, x, b, scale) - hard_edge_density(x)
    return float(resid), float(b / N * hard_edge_first_order(x))

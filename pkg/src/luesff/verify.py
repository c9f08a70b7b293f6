"""Cross-route consistency checks run by ``luesff verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import asymptotics, hypergeom, kernels, structure, transforms
from .structure import StructureQuery


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _rel(x, y) -> float:
    return abs(x - y) / max(abs(y), 1e-300)


def check_kernel_vs_jue(quick: bool) -> tuple[bool, str]:
    Ns = (2, 5) if quick else (2, 5, 10, 20)
    worst = 0.0
    for N in Ns:
        for a in (0.0, 1.0, 2.5):
            for k in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
                q = StructureQuery(N, a, k)
                ker = structure.s_lue_kernel_sum(q).value
                jue = structure.s_lue_jue(q).value
                worst = max(worst, _rel(ker, jue))
    return worst < 1e-8, f"max relative difference {worst:.2e}"


def check_complementarity(quick: bool) -> tuple[bool, str]:
    Ns = (1, 3) if quick else (1, 3, 6, 10)
    worst = 0.0
    for N in Ns:
        for a in (0.0, 1.5):
            for k in (0.3, 1.0, 4.0):
                q = StructureQuery(N, a, k)
                lhs = structure.s_lue_lhs_quadrature(q).value
                worst = max(worst, abs(lhs + structure.s_lue_jue(q).value - N))
    return worst < 1e-7, f"max |lhs + jue - N| {worst:.2e}"


def check_differential_identities(quick: bool) -> tuple[bool, str]:
    rng = np.random.default_rng(2024)
    points = 10 if quick else 50
    worst2 = worst4 = 0.0
    for _ in range(points):
        N = int(rng.integers(1, 11))
        a = float(rng.uniform(0, 3))
        x, y = rng.uniform(0.2, 2 * N + 4, size=2)
        lhs, rhs = kernels.verify_prop2(kernels.KernelSpec.lue(N, a), x, y)
        worst2 = max(worst2, abs(lhs - rhs))
        lhs, rhs = kernels.verify_prop4(a, N, float(rng.uniform(0.05, 0.95)))
        worst4 = max(worst4, abs(lhs - rhs))
    ok = worst2 < 1e-6 and worst4 < 1e-6
    return ok, f"Laguerre scaling identity {worst2:.2e}, Jacobi derivative identity {worst4:.2e}"


def check_transforms(quick: bool) -> tuple[bool, str]:
    jmax = 6 if quick else 15
    worst3 = 0.0
    for a in (0.0, 0.5, 2.0):
        for s in (0.3, -0.7, 0.5j, 0.2 + 0.4j):
            for j in range(0, jmax + 1, 3 if quick else 1):
                for k in range(j, jmax + 1, 3 if quick else 1):
                    v = transforms.laguerre_transform(j, k, a, s).value
                    o = transforms.laguerre_transform_oracle(j, k, a, s).value
                    worst3 = max(worst3, _rel(v, o))
    worst5 = 0.0
    for N in ((1, 4) if quick else (1, 2, 4, 7, 10)):
        for a in (0.0, 1.5):
            for s in (-0.3, 0.4j, -0.2 + 0.7j):
                v = transforms.density_fl_transform(N, a, s).value
                o = transforms.density_fl_quadrature(N, a, s)
                worst5 = max(worst5, _rel(v, o))
    ok = worst3 < 1e-9 and worst5 < 1e-8
    return ok, f"transform vs oracle {worst3:.2e}, density transform vs quadrature {worst5:.2e}"


def check_gue(quick: bool) -> tuple[bool, str]:
    worst = 0.0
    for N in ((1, 5) if quick else (1, 2, 5, 10, 20)):
        for k in (0.2, 1.0, 3.0, 8.0):
            bh = structure.s_gue_brezin_hikami(N, k).value
            orc = structure.s_gue_direct_oracle(N, k).value
            worst = max(worst, abs(bh - orc))
    one = max(abs(structure.s_gue_brezin_hikami(1, k).value - (1 - math.exp(-k * k / 2)))
              for k in (0.1, 1.0, 2.5))
    return worst < 1e-8 and one < 1e-12, f"routes differ by {worst:.2e}; N=1 closed form {one:.2e}"


def check_hypergeometric_identities(quick: bool) -> tuple[bool, str]:
    worst = 0.0
    for al, be, ga, z in ((-3, 1.5, 2.5, 0.3), (-7, 0.5, 1.25, -0.8), (-12, 2.0, 3.5, 0.45)):
        lhs, rhs = hypergeom.pfaff_kummer_check(al, be, ga, z)
        worst = max(worst, _rel(lhs, rhs))
    for j, k, a, s in ((2, 3, 0.0, 0.4), (5, 5, 1.5, -0.6), (6, 9, 2.0, 0.25)):
        lhs, rhs = hypergeom.poly_identity_y6_check(j, k, a, s)
        worst = max(worst, _rel(lhs, rhs))
    return worst < 1e-10, f"max relative mismatch {worst:.2e}"


def check_convergence(quick: bool) -> tuple[bool, str]:
    """Finite-N error against the limiting curve.

    The error oscillates in N, so the check compares envelopes: the
    largest error over the larger sizes must sit below the largest over
    the smaller ones. Errors already at rounding level count as converged.
    """
    Ns = (25, 50, 100, 200)
    bad = []
    for alpha in (0.0, 1.0):
        for k in (0.3, 1.0, 3.0):
            lim = asymptotics.s_inf(k, alpha)
            errs = [abs(structure.s_lue_jue(StructureQuery(N, alpha * N, k)).value / N - lim) for N in Ns]
            if max(errs) <= 1e-12:
                continue
            if not max(errs[2:]) < max(errs[:2]):
                bad.append((alpha, k))
    return not bad, "all envelopes shrink" if not bad else f"no decrease at (alpha, k) = {bad}"


def check_sine_slope(quick: bool) -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    h = 1e-5
    worst = 0.0
    for k in rng.uniform(0.0, 10.0, size=5 if quick else 20):
        fd = (asymptotics.s_inf(k + h, 0) - asymptotics.s_inf(k - h, 0)) / (2 * h)
        worst = max(worst, abs(fd - asymptotics.sine_kernel_slope(k)))
    return worst < 1e-8, f"max deviation {worst:.2e}"


CHECKS: list[tuple[str, Callable[[bool], tuple[bool, str]]]] = [
    ("kernel-sum-vs-jue", check_kernel_vs_jue),
    ("complementarity-lhs-plus-jue", check_complementarity),
    ("differential-identities", check_differential_identities),
    ("transform-closed-forms", check_transforms),
    ("gue-brezin-hikami-vs-hermite", check_gue),
    ("pfaff-kummer-and-polynomial-identity", check_hypergeometric_identities),
    ("finite-n-convergence", check_convergence),
    ("sine-kernel-slope", check_sine_slope),
]


def run_checks(quick: bool = False, only: list[str] | None = None) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS:
        if only is not None and name not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn(quick)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return out

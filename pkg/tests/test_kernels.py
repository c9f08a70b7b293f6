import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import roots_genlaguerre, roots_hermite, roots_jacobi

from luesff import kernels, orthopoly
from luesff.kernels import KernelSpec, cd_kernel, density, kernel_sum, rho2_truncated
from luesff.orthopoly import Family


def gauss_rule(ks, n):
    sys = ks.sys
    if sys.family is Family.LAGUERRE:
        return roots_genlaguerre(n, sys.a)
    if sys.family is Family.HERMITE:
        return roots_hermite(n)
    t, w = roots_jacobi(n, sys.b, sys.a)
    return (t + 1) / 2, w / 2 ** (sys.a + sys.b + 1)


SPECS = [KernelSpec.lue(1), KernelSpec.lue(6, 1.5), KernelSpec.lue(10), KernelSpec.jue(4, 0, 0),
         KernelSpec.jue(9, 2.0, 0.5), KernelSpec.gue(3), KernelSpec.gue(10)]


class TestExamples:
    def test_lue_single(self):
        assert cd_kernel(KernelSpec.lue(1), 1.0, 1.0) == pytest.approx(math.exp(-1), rel=1e-14)
        assert cd_kernel(KernelSpec.lue(1), 1.0, 2.0) == pytest.approx(math.exp(-1.5), rel=1e-14)

    def test_outside_support(self):
        assert cd_kernel(KernelSpec.lue(4, 1), -1.0, 2.0) == 0.0
        assert cd_kernel(KernelSpec.jue(3), 0.5, 1.2) == 0.0
        assert density(KernelSpec.jue(3), 1.5) == 0.0
        assert rho2_truncated(KernelSpec.lue(3), 1.0, -2.0) == 0.0

    def test_jue_single(self):
        x = np.array([0.1, 0.5, 0.9])
        assert np.allclose(cd_kernel(KernelSpec.jue(1), x[:, None], x[None, :]), 1.0, atol=1e-15)
        assert np.allclose(density(KernelSpec.jue(1), x), 1.0, atol=1e-15)

    def test_lue_density_single(self):
        t = np.array([1e-12, 0.3, 2.0, 9.0])
        assert np.allclose(density(KernelSpec.lue(1), t), np.exp(-t), rtol=1e-14)

    def test_rho2(self):
        ks = KernelSpec.lue(5, 0.5)
        assert rho2_truncated(ks, 2.0, 2.0) == pytest.approx(-density(ks, 2.0) ** 2, rel=1e-12)
        assert rho2_truncated(KernelSpec.lue(1), 1.0, 2.0) == pytest.approx(-math.exp(-3), rel=1e-14)

    def test_rejects_n(self):
        with pytest.raises(ValueError):
            KernelSpec.lue(0)


@pytest.mark.parametrize("ks", SPECS, ids=lambda k: f"{k.sys.family.value}-{k.N}")
def test_cd_matches_sum(ks):
    rng = np.random.default_rng(ks.N)
    lo, hi = {Family.LAGUERRE: (0.01, 4 * ks.N + 10), Family.JACOBI: (0.01, 0.99),
              Family.HERMITE: (-2 * math.sqrt(ks.N) - 2, 2 * math.sqrt(ks.N) + 2)}[ks.sys.family]
    x, y = rng.uniform(lo, hi, (2, 200))
    y[:20] = x[:20] + 1e-8 * rng.standard_normal(20)  # near-diagonal branch
    ref = kernel_sum(ks, x, y)
    scale = np.sqrt(kernel_sum(ks, x, x) * kernel_sum(ks, y, y))
    assert np.max(np.abs(cd_kernel(ks, x, y) - ref) / np.maximum(scale, 1e-300)) < 1e-11


@pytest.mark.parametrize("ks", SPECS, ids=lambda k: f"{k.sys.family.value}-{k.N}")
def test_exact_symmetry(ks):
    rng = np.random.default_rng(3)
    x, y = rng.uniform(0.02, 0.98, (2, 50))
    assert np.array_equal(cd_kernel(ks, x, y), cd_kernel(ks, y, x))


@pytest.mark.parametrize("ks", SPECS, ids=lambda k: f"{k.sys.family.value}-{k.N}")
def test_reproducing(ks):
    z, w = gauss_rule(ks, ks.N + 8)
    wz = orthopoly.weight(ks.sys, z)
    for x, y in ((0.3, 0.7), (0.2, 0.2), (0.9, 0.15)):
        if ks.sys.family is Family.LAGUERRE:
            x, y = 3 * x, 5 * y
        val = np.sum(w * cd_kernel(ks, x, z) * cd_kernel(ks, z, y) / wz)
        ref = cd_kernel(ks, x, y)
        scale = math.sqrt(density(ks, x) * density(ks, y))
        assert abs(val - ref) <= 1e-8 * max(abs(ref), 1e-3 * scale)


@pytest.mark.parametrize("N", [1, 5, 20, 50])
@pytest.mark.parametrize("family", ["lue", "jue", "gue"])
def test_density_normalisation(N, family):
    ks = {"lue": KernelSpec.lue(N, 0.7), "jue": KernelSpec.jue(N, 1.0, 0.5), "gue": KernelSpec.gue(N)}[family]
    z, w = gauss_rule(ks, N + 10)
    total = np.sum(w * density(ks, z) / orthopoly.weight(ks.sys, z))
    assert total == pytest.approx(N, rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10), st.floats(0.0, 3.0), st.floats(0.2, 30.0))
def test_diagonal_derivative_identity(N, a, t):
    """d/dt [t K(t, t)] = -psi_N psi_{N-1} / h_{N-1} for the Laguerre kernel."""
    ks = KernelSpec.lue(N, a)
    h = 1e-5
    lhs = ((t + h) * density(ks, t + h) - (t - h) * density(ks, t - h)) / (2 * h)
    sys = ks.sys
    p1, p0 = orthopoly.psi(sys, N, t), orthopoly.psi(sys, N - 1, t)
    rhs = -p1.sign * p0.sign * math.exp(p1.log_abs + p0.log_abs - orthopoly.log_norm(sys, N - 1))
    assert abs(lhs - rhs) < 1e-6


class TestLaguerreScalingIdentity:
    def test_examples(self):
        lhs, rhs = kernels.verify_prop2(KernelSpec.lue(1, 0), 1.0, 2.0)
        assert abs(lhs - rhs) < 1e-7
        lhs, rhs = kernels.verify_prop2(KernelSpec.lue(5, 1), 3.0, 7.0)
        assert abs(lhs - rhs) < 1e-6
        lhs, rhs = kernels.verify_prop2(KernelSpec.lue(2, 0), 2.0, 2.0 + 1e-3)
        assert abs(lhs - rhs) < 1e-5
        lhs, rhs = kernels.verify_prop2(KernelSpec.lue(2, 0), 2.0, 2.0 - 1e-3)
        assert abs(lhs - rhs) < 1e-5

    def test_rejects(self):
        with pytest.raises(ValueError):
            kernels.verify_prop2(KernelSpec.lue(2), 1.0, 1.0)
        with pytest.raises(ValueError):
            kernels.verify_prop2(KernelSpec.jue(2), 0.2, 0.4)


class TestJacobiDerivativeIdentity:
    def test_examples(self):
        lhs, rhs = kernels.verify_prop4(0.0, 1, 0.5)
        assert abs(lhs) < 1e-9 and rhs == 0.0
        lhs, rhs = kernels.verify_prop4(0.0, 3, 0.3)
        assert abs(lhs - rhs) < 1e-6
        lhs, rhs = kernels.verify_prop4(2.0, 2, 0.8)
        assert abs(lhs - rhs) < 1e-6

    def test_rejects(self):
        with pytest.raises(ValueError):
            kernels.verify_prop4(0.0, 3, 1.0)


def test_complex_kernel_matches_real():
    x = np.array([0.4, 2.0, 7.5])
    y = np.array([1.1, 2.0, 0.3])
    for a in (0.0, 1.5):
        c = kernels.laguerre_kernel_complex(6, x, y, a)
        assert np.allclose(c.real, cd_kernel(KernelSpec.lue(6, a), x, y), rtol=1e-12, atol=1e-15)
        assert np.max(np.abs(c.imag)) == 0

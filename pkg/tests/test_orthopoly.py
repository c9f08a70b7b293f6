import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import (eval_genlaguerre, eval_hermite, eval_jacobi, gammaln,
                           roots_genlaguerre, roots_hermite, roots_jacobi)

from luesff import orthopoly
from luesff.orthopoly import Family, PolySystem, PolyValue


def monic_oracle(sys, n, x):
    """Monic polynomials from scipy's classical normalisations."""
    if sys.family is Family.LAGUERRE:
        return (-1) ** n * math.factorial(n) * eval_genlaguerre(n, sys.a, x)
    if sys.family is Family.HERMITE:
        return eval_hermite(n, x) / 2.0 ** n
    al, be = sys.b, sys.a  # x^a sits at t = -1
    lead = math.exp(gammaln(2 * n + al + be + 1) - gammaln(n + al + be + 1) - gammaln(n + 1))
    return eval_jacobi(n, al, be, 2 * x - 1) / lead


SYSTEMS = [PolySystem.laguerre(0), PolySystem.laguerre(1.5), PolySystem.jacobi(0, 0),
           PolySystem.jacobi(2, 0), PolySystem.jacobi(0.5, 1.25), PolySystem.hermite()]


class TestConstruction:
    def test_rejects_low_parameters(self):
        with pytest.raises(ValueError):
            PolySystem.laguerre(-1.0)
        with pytest.raises(ValueError):
            PolySystem.jacobi(0.0, -0.95)

    def test_hermite_ignores_parameters(self):
        assert PolySystem(Family.HERMITE, 3.0, 4.0) == PolySystem.hermite()

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            orthopoly.eval_monic(PolySystem.laguerre(), -1, 0.5)


class TestEvalMonic:
    def test_laguerre_degree_one_at_zero(self):
        assert orthopoly.eval_monic(PolySystem.laguerre(0), 1, 0.0).value == -1.0

    @pytest.mark.parametrize("sys", SYSTEMS)
    def test_degree_zero(self, sys):
        assert orthopoly.eval_monic(sys, 0, 0.3).value == 1.0

    def test_jacobi_symmetric_root(self):
        assert orthopoly.eval_monic(PolySystem.jacobi(0, 0), 1, 0.5).value == 0.0

    @pytest.mark.parametrize("sys", SYSTEMS, ids=str)
    @pytest.mark.parametrize("n", [1, 4, 9, 12])
    def test_against_classical(self, sys, n):
        for x in (0.05, 0.37, 0.81, 2.5, 7.0):
            v = orthopoly.eval_monic(sys, n, x).value
            ref = monic_oracle(sys, n, x)
            assert v == pytest.approx(ref, rel=1e-10, abs=1e-12 * max(1.0, abs(x)) ** n)

    @pytest.mark.parametrize("sys", SYSTEMS, ids=str)
    def test_leading_term(self, sys):
        for n in range(11):
            v = orthopoly.eval_monic(sys, n, 1e12)
            assert math.exp(v.log_abs - n * math.log(1e12)) == pytest.approx(1.0, rel=1e-6)
            assert v.sign == 1.0

    @pytest.mark.parametrize("sys", SYSTEMS, ids=str)
    def test_subleading_term(self, sys):
        # p_n(x) / x^n = 1 - (sum of the roots) / x + O(x^-2)
        x = 1e6
        for n in range(1, 11):
            alpha, _ = orthopoly.recurrence_coefficients(sys, n)
            v = orthopoly.eval_monic(sys, n, x)
            ratio = math.exp(v.log_abs - n * math.log(x))
            assert ratio == pytest.approx(1 - math.fsum(alpha[:n]) / x, rel=1e-6)

    def test_laguerre_series_matches(self):
        for n in range(13):
            for a in (0.0, 0.7, 3.0):
                for x in (0.2, 1.9, 6.5):
                    v = orthopoly.eval_monic(PolySystem.laguerre(a), n, x).value
                    ref = (-1) ** n * math.factorial(n) * orthopoly.laguerre_series(n, a, x)
                    assert v == pytest.approx(ref, rel=1e-10, abs=1e-9)

    def test_jacobi_hypergeometric_form(self):
        from luesff.hypergeom import hyp2f1_terminating
        for n in range(13):
            for a, b in ((0.0, 0.0), (1.5, 0.0), (0.5, 2.0)):
                sys = PolySystem.jacobi(a, b)
                for x in (0.1, 0.45, 0.9):
                    # p_n(x) = (-1)^n (a+1)_n / (n+a+b+1)_n 2F1(-n, n+a+b+1; a+1; x)
                    lead = math.exp(math.lgamma(n + a + 1) - math.lgamma(a + 1)
                                    - math.lgamma(2 * n + a + b + 1) + math.lgamma(n + a + b + 1))
                    ref = (-1) ** n * lead * hyp2f1_terminating(n, n + a + b + 1, a + 1, x)
                    v = orthopoly.eval_monic(sys, n, x).value
                    assert v == pytest.approx(ref, rel=1e-10, abs=1e-14)

    def test_large_degree_no_overflow(self):
        v = orthopoly.eval_monic(PolySystem.laguerre(0), 400, 3.0)
        assert math.isfinite(v.log_abs) and v.log_abs > 700


class TestNorm:
    def test_laguerre_zero(self):
        assert orthopoly.norm(PolySystem.laguerre(0), 0).value == pytest.approx(1.0)
        assert orthopoly.norm(PolySystem.laguerre(2.5), 0).value == pytest.approx(math.gamma(3.5))

    def test_jacobi_zero(self):
        assert orthopoly.norm(PolySystem.jacobi(0, 0), 0).value == pytest.approx(1.0)

    def test_laguerre_value(self):
        assert orthopoly.norm(PolySystem.laguerre(2), 3).value == pytest.approx(720.0, rel=1e-13)

    def test_shifted_legendre(self):
        # p_1 = x - 1/2 on (0, 1)
        assert orthopoly.norm(PolySystem.jacobi(0, 0), 1).value == pytest.approx(1 / 12, rel=1e-14)

    @pytest.mark.parametrize("sys", SYSTEMS, ids=str)
    def test_positive(self, sys):
        for n in (0, 5, 50, 300):
            assert orthopoly.norm(sys, n).sign == 1.0


def _gauss_rule(sys):
    if sys.family is Family.LAGUERRE:
        x, w = roots_genlaguerre(200, sys.a)
        return x, w
    if sys.family is Family.HERMITE:
        return roots_hermite(200)
    if sys.a == int(sys.a) and sys.b == int(sys.b):
        t, w = np.polynomial.legendre.leggauss(200)
        x = (t + 1) / 2
        return x, w / 2 * x ** sys.a * (1 - x) ** sys.b
    t, w = roots_jacobi(200, sys.b, sys.a)
    return (t + 1) / 2, w / 2 ** (sys.a + sys.b + 1)


@pytest.mark.parametrize("sys", SYSTEMS, ids=str)
def test_orthogonality(sys):
    x, w = _gauss_rule(sys)
    rows = orthopoly.orthonormal_rows(sys, 20, x)
    # orthonormal functions without the weight, so the Gauss weights carry it
    phi = rows.m * np.exp(rows.log_scale)
    gram = (phi * w) @ phi.T
    assert np.max(np.abs(gram - np.eye(21))) < 1e-10


class TestWeightAndPsi:
    def test_weight_values(self):
        assert orthopoly.weight(PolySystem.laguerre(0), 1.0) == pytest.approx(math.exp(-1))
        assert orthopoly.weight(PolySystem.laguerre(1), -2.0) == 0.0
        assert orthopoly.weight(PolySystem.jacobi(0, 0), 0.3) == 1.0
        assert orthopoly.weight(PolySystem.jacobi(0, 0), 1.3) == 0.0

    def test_psi_values(self):
        lag = PolySystem.laguerre(0)
        assert orthopoly.psi(lag, 0, 2.0).value == pytest.approx(math.exp(-1))
        assert orthopoly.psi(lag, 1, 1.0).value == 0.0
        assert orthopoly.psi(lag, 0, -1.0).value == 0.0
        assert orthopoly.psi(PolySystem.jacobi(1, 1), 0, 1.5).value == 0.0


class TestPolyValue:
    @given(st.floats(min_value=-1e300, max_value=1e300, allow_nan=False).filter(lambda v: v != 0))
    def test_round_trip(self, v):
        p = PolyValue.from_float(v)
        assert 1.0 <= abs(p.mantissa) < math.e
        assert p.value == pytest.approx(v, rel=1e-14)

    def test_zero(self):
        p = PolyValue.from_float(0.0)
        assert (p.mantissa, p.log_scale) == (0.0, 0.0)

    @settings(max_examples=60)
    @given(st.integers(0, 300), st.floats(0.01, 50))
    def test_eval_mantissa_invariant(self, n, x):
        p = orthopoly.eval_monic(PolySystem.laguerre(0.5), n, x)
        assert p.mantissa == 0 or 1.0 <= abs(p.mantissa) < math.e


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.floats(0.1, 40.0))
def test_recurrence_three_term(n, x):
    """p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1} holds in scaled form."""
    sys = PolySystem.laguerre(1.0)
    alpha, beta = orthopoly.recurrence_coefficients(sys, n + 1)
    p = [orthopoly.eval_monic(sys, j, x) for j in (n - 1, n, n + 1)]
    s = p[1].log_scale
    lhs = p[2].mantissa * math.exp(p[2].log_scale - s)
    rhs = (x - alpha[n]) * p[1].mantissa - beta[n] * p[0].mantissa * math.exp(p[0].log_scale - s)
    scale = abs((x - alpha[n]) * p[1].mantissa) + abs(beta[n] * p[0].mantissa * math.exp(p[0].log_scale - s))
    assert abs(lhs - rhs) <= 1e-12 * scale

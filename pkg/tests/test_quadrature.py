import math

import pytest

from besselprod.errors import ConvergenceError, DomainError, IntegrandError, UsageError
from besselprod.quadrature import IntegrationSpec, integrate, oracle_int1, oracle_int2, tanh_sinh
from besselprod.specfun import gamma_fn, product_ik

from conftest import rel


def _sinh_power(t):
    # (sinh t)^(-1/3) without overflow for large t
    return math.exp(-t / 3) * (-0.5 * math.expm1(-2 * t)) ** (-1 / 3)


class TestIntegrate:
    def test_polynomial(self):
        r = integrate(lambda t: t * t, IntegrationSpec.finite(0, 1))
        assert r.value == pytest.approx(1 / 3, abs=1e-12)

    def test_exponential_tail(self):
        r = integrate(lambda t: math.exp(-t), IntegrationSpec.semi_infinite(0))
        assert r.value == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("rule", ["gauss-kronrod", "tanh-sinh"])
    def test_sinh_power_closed_form(self, rule):
        # the closed form is evaluated here from Gamma values, independently of the quadrature
        want = 2 * math.pi ** 1.5 / (math.sqrt(3) * gamma_fn(2 / 3).value * gamma_fn(5 / 6).value)
        r = integrate(_sinh_power, IntegrationSpec.semi_infinite(0, rule=rule, rel_tol=1e-10))
        assert r.value == pytest.approx(want, rel=1e-8)
        assert want == pytest.approx(4.2066, abs=1e-4)

    def test_error_estimate_is_honest(self):
        r = integrate(math.sqrt, IntegrationSpec.finite(0, 1, rel_tol=1e-10))
        assert abs(r.value - 2 / 3) <= max(r.abs_err, 1e-15)

    def test_tanh_sinh_endpoint_singularity(self):
        v, e = tanh_sinh(lambda t: 1 / math.sqrt(t), 0.0, 1.0, 1e-12)
        assert v == pytest.approx(2.0, rel=1e-11)

    def test_nonfinite_integrand(self):
        with pytest.raises(IntegrandError):
            integrate(lambda t: math.nan, IntegrationSpec.finite(0, 1))

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError):
            integrate(lambda t: math.sin(1 / t) / t, IntegrationSpec.finite(1e-9, 1, rel_tol=1e-14, max_subdivisions=20))

    def test_bad_spec(self):
        with pytest.raises(UsageError):
            IntegrationSpec.finite(1, 0)
        with pytest.raises(UsageError):
            IntegrationSpec(0.0, 1.0, rule="simpson")


class TestInt2:
    def test_zero_order(self):
        assert abs(oracle_int2(0, 1, 1e-8).value - 0.533045) < 1e-5

    def test_half_order_closed_form(self):
        assert oracle_int2(0.5, 2, 1e-8).value == pytest.approx((1 - math.exp(-4)) / 4, rel=1e-9)

    def test_domain(self):
        with pytest.raises(DomainError, match="nu > -1/2"):
            oracle_int2(-0.5, 1, 1e-8)
        with pytest.raises(DomainError):
            oracle_int2(1, 0.0, 1e-8)

    @pytest.mark.parametrize("nu", [-0.45, -0.2, 0.1, 0.75, 3.0, 12.0])
    @pytest.mark.parametrize("x", [1e-4, 0.05, 1.5, 20.0, 300.0])
    def test_matches_kernel(self, nu, x):
        r = oracle_int2(nu, x, 1e-10)
        assert rel(r.value, product_ik(nu, nu, x).value) < 1e-9


class TestInt1:
    def test_half_orders(self):
        assert oracle_int1(0.5, 0.5, 1, 1e-8).value == pytest.approx((1 - math.exp(-2)) / 2, rel=1e-8)

    def test_mixed_orders(self):
        # K_0(1) I_1(1)
        assert rel(oracle_int1(0, 1, 1, 1e-8).value, product_ik(0, 1, 1).value) < 1e-7

    def test_gap_precondition(self):
        with pytest.raises(DomainError, match="mu - nu"):
            oracle_int1(1, 0, 1, 1e-8)

    def test_sum_precondition(self):
        with pytest.raises(DomainError, match="mu \\+ nu"):
            oracle_int1(-1.0, -0.4, 1, 1e-8)

    @pytest.mark.parametrize("nu,mu,x", [(0, 0.25, 0.3), (0.2, 1.7, 2.0), (1, 3, 0.05), (2.5, 3.0, 6.0),
                                         (-0.3, 0.5, 1.0), (0, 2, 15.0)])
    def test_matches_kernel(self, nu, mu, x):
        r = oracle_int1(nu, mu, x, 1e-9)
        assert rel(r.value, product_ik(nu, mu, x).value) < 1e-7


@pytest.mark.parametrize("gap", [-0.45, -0.3, 0.0, 0.1])
def test_int1_below_trusted_gap(gap):
    # the cross-check only uses gaps >= 1/4, but the representation converges below that too
    nu, x = 1.0, 0.7
    r = oracle_int1(nu, nu + gap, x, 1e-9)
    assert rel(r.value, product_ik(nu, nu + gap, x).value) < 1e-8

"""Special-function primitives against closed forms and frozen references.

Frozen decimal values were produced with mpmath at 30 significant digits
before the implementation was written; formulas in comments state the
independent route.
"""

import math

import numpy as np
import pytest

from affinequant import specfun
from affinequant.errors import ParameterDomainError, PoleError

# mpmath pins: besselk(0,1), besseli(2,1), besseli(0,2.5), besselk(1,0.3)
K0_AT_1 = 0.42102443824070833
I2_AT_1 = 0.13574766976703828
I0_AT_2P5 = 3.289839144050123
K1_AT_0P3 = 3.0559920334573251


def test_laguerre_low_orders_match_explicit_polynomials():
    fam = specfun.PolyFamily.laguerre(1.5)
    for x in (0.0, 0.7, 3.2, 11.0):
        assert specfun.orthopoly_eval(fam, 0, x) == pytest.approx(1.0, abs=1e-14)
        # L_1^a(x) = a + 1 - x
        assert specfun.orthopoly_eval(fam, 1, x) == pytest.approx(
            2.5 - x, rel=1e-14, abs=1e-14)
        # L_2^a(x) = (a+1)(a+2)/2 - (a+2) x + x^2/2
        expect = 2.5 * 3.5 / 2.0 - 3.5 * x + 0.5 * x * x
        assert specfun.orthopoly_eval(fam, 2, x) == pytest.approx(
            expect, rel=1e-13, abs=1e-13)


def test_laguerre_pin():
    fam = specfun.PolyFamily.laguerre(1.5)
    assert specfun.orthopoly_eval(fam, 2, 0.7) == pytest.approx(2.17, rel=1e-14)


def test_hermite_explicit_cubic():
    fam = specfun.PolyFamily.hermite()
    # H_3(x) = 8 x^3 - 12 x
    for x in (-1.1, 0.0, 0.7, 2.4):
        assert specfun.orthopoly_eval(fam, 3, x) == pytest.approx(
            8.0 * x ** 3 - 12.0 * x, rel=1e-13, abs=1e-12)


def test_jacobi_low_orders():
    a, b = 0.5, 1.5
    fam = specfun.PolyFamily.jacobi(a, b)
    for y in (-0.8, 0.0, 0.3, 0.9):
        assert specfun.orthopoly_eval(fam, 0, y) == pytest.approx(1.0, abs=1e-14)
        # P_1^(a,b)(y) = (a + 1) + (a + b + 2)(y - 1)/2
        expect = (a + 1.0) + (a + b + 2.0) * (y - 1.0) / 2.0
        assert specfun.orthopoly_eval(fam, 1, y) == pytest.approx(
            expect, rel=1e-13, abs=1e-13)


def test_bessel_pins():
    assert specfun.bessel("K", 0, 1.0) == pytest.approx(K0_AT_1, rel=1e-13)
    assert specfun.bessel("I", 2, 1.0) == pytest.approx(I2_AT_1, rel=1e-13)
    assert specfun.bessel("K", 1, 0.3) == pytest.approx(K1_AT_0P3, rel=1e-13)


def test_bessel_scaled_relation():
    # scaled I = e^(-x) I, scaled K = e^(x) K
    x = 2.5
    assert specfun.bessel_scaled("I", 0, x) * math.exp(x) == pytest.approx(
        I0_AT_2P5, rel=1e-13)
    assert specfun.bessel_scaled("K", 0, 1.0) == pytest.approx(
        K0_AT_1 * math.e, rel=1e-13)


def test_bessel_vectorized():
    xs = np.array([0.5, 1.0, 2.0])
    vals = specfun.bessel_scaled("I", 1, xs)
    assert vals.shape == xs.shape
    assert vals[1] == pytest.approx(specfun.bessel_scaled("I", 1, 1.0))


def test_bessel_rejects_bad_arguments():
    with pytest.raises(ParameterDomainError):
        specfun.bessel_scaled("J", 0, 1.0)
    with pytest.raises(ParameterDomainError):
        specfun.bessel_scaled("I", -1, 1.0)
    with pytest.raises(ParameterDomainError):
        specfun.bessel_scaled("K", 0, 0.0)


def test_gamma_pins():
    assert specfun.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert specfun.gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)


def test_gamma_rejects_poles():
    with pytest.raises(PoleError):
        specfun.gamma_fn(0.0)
    with pytest.raises(PoleError):
        specfun.gamma_fn(-2.0)


def test_log_gamma_matches_lgamma():
    for x in (0.3, 1.0, 4.5, 120.0):
        assert specfun.log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-14)
    with pytest.raises(ParameterDomainError):
        specfun.log_gamma(0.0)


def test_log_factorial_ratio():
    # log prod Gamma(n + a + 1) / prod Gamma(n + b + 1)
    n = 17
    got = specfun.log_factorial_ratio((0.0, 2.5), (1.0,), n)
    expect = (math.lgamma(n + 1.0) + math.lgamma(n + 3.5)
              - math.lgamma(n + 2.0))
    assert got == pytest.approx(expect, rel=1e-14)


# mpmath pins for int_0^inf e^(-gamma x) I_alpha(mu x) / x dx; the closed
# form ((gamma - sqrt(gamma^2 - mu^2))/mu)^alpha / alpha agrees to 16 digits.
MBESSEL_PINS = [
    ((2.1, 1.3, 0.5), 1.1776871071370041),
    ((3.0, 1.0, 1.0), 0.1715728752538099),
    ((1.7, 1.2, 2.5), 0.043899741255436195),
]


@pytest.mark.parametrize("args, expect", MBESSEL_PINS)
def test_mbessel_halfline_integral_pins(args, expect):
    assert specfun.mbessel_halfline_integral(*args) == pytest.approx(
        expect, rel=1e-12)


def test_mbessel_requires_convergent_exponent():
    with pytest.raises(ParameterDomainError):
        specfun.mbessel_halfline_integral(1.0, 1.2, 0.5)

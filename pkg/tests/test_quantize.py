"""Operator construction: exact matrix primitives and weight-driven maps.

The multiplication-by-x matrix has a classical tridiagonal closed form in
this basis (diagonal 2n + alpha + 1, off-diagonal -sqrt((n+1)(n+alpha+1))),
which pins the quadrature-free primitives.  Structural statements about
closed forms (exact unit coefficients, exactly absent lower-order terms)
are asserted with equality, not tolerance.
"""

import math

import numpy as np
import pytest

from affinequant import quantize, weights
from affinequant.affine_group import GroupElement
from affinequant.errors import (DivergenceError, ParameterDomainError,
                                UnsupportedObservableError)
from affinequant.quantize import Observable
from affinequant.representation import BasisSpec


def x_matrix_closed(alpha, size):
    m = np.zeros((size, size))
    for n in range(size):
        m[n, n] = 2.0 * n + alpha + 1.0
        if n + 1 < size:
            off = -math.sqrt((n + 1.0) * (n + alpha + 1.0))
            m[n, n + 1] = off
            m[n + 1, n] = off
    return m


def test_x_matrix_tridiagonal_closed_form():
    basis = BasisSpec(alpha=2.0, n_max=12)
    got = quantize.xpow_dk_matrix(basis, 1, 0)
    assert np.max(np.abs(got - x_matrix_closed(2.0, basis.size))) < 1e-12


def test_x_power_zero_is_identity():
    basis = BasisSpec(alpha=1.5, n_max=8)
    got = quantize.xpow_dk_matrix(basis, 0, 0)
    assert np.max(np.abs(got - np.eye(basis.size))) < 1e-13


def test_multiplication_matrix_matches_exact_primitive():
    basis = BasisSpec(alpha=2.0, n_max=10)
    got = quantize.multiplication_matrix(basis, lambda x: x)
    assert np.max(np.abs(got - x_matrix_closed(2.0, basis.size))) < 1e-10


def test_quantize_constant_is_identity():
    basis = BasisSpec(alpha=2.0, n_max=10)
    aw = weights.builtin("aw")
    op = quantize.quantize_position_fn(aw, lambda q: np.ones_like(q), basis)
    assert np.max(np.abs(op.matrix.entries - np.eye(basis.size))) < 1e-10


def test_momentum_is_exactly_momentum():
    aw = weights.builtin("aw")
    op = quantize.quantize_p_power(aw, 1)
    terms = op.closed_form["terms"]
    assert [(t[1], t[2]) for t in terms if abs(t[0]) > 0.0] == [(0.0, 1)]
    lead = [t[0] for t in terms if t[2] == 1][0]
    assert lead == 1.0 + 0.0j


def test_momentum_squared_has_no_spurious_terms():
    aw = weights.builtin("aw")
    op = quantize.quantize_p_power(aw, 2)
    terms = op.closed_form["terms"]
    lead = [t[0] for t in terms if t[2] == 2]
    assert lead == [1.0 + 0.0j]
    spurious = max((abs(t[0]) for t in terms if t[2] != 2), default=0.0)
    assert spurious == 0.0


def test_dilation_generator_exact():
    aw = weights.builtin("aw")
    op = quantize.quantize_dilation(aw)
    assert op.closed_form["d_coeff"] == 1.0
    assert op.closed_form["constant"] == 0.0


def test_quantized_matrices_are_hermitian():
    basis = BasisSpec(alpha=2.0, n_max=14)
    aw = weights.builtin("aw")
    for obs in (Observable.position_fn(lambda q: q * np.exp(-q)),
                Observable.momentum_power(2),
                Observable.dilation()):
        m = quantize.quantize(aw, obs, basis).matrix.entries
        assert np.max(np.abs(m - m.conj().T)) < 1e-10


def test_commutator_is_canonical():
    basis = BasisSpec(alpha=2.0, n_max=30)
    aw = weights.builtin("aw")
    lam = quantize.commutator_check(aw, basis)
    assert lam == pytest.approx(1.0, abs=1e-9)


def test_quantize_dispatch_matches_direct_routes():
    basis = BasisSpec(alpha=2.0, n_max=12)
    aw = weights.builtin("aw")
    via_dispatch = quantize.quantize(
        aw, Observable.monomial_sum([(1.0, 2.0, 0)]), basis).matrix.entries
    direct = quantize.quantize_monomials(aw, [(1.0, 2.0, 0)], basis)
    assert np.max(np.abs(via_dispatch - direct.matrix.entries)) == 0.0
    kin = quantize.quantize(aw, Observable.kinetic(), basis).matrix.entries
    psq = quantize.quantize_p_power(aw, 2, basis).matrix.entries
    assert np.max(np.abs(kin - psq)) == 0.0


def test_separable_default_matches_monomial_route():
    basis = BasisSpec(alpha=2.0, n_max=12)
    aw = weights.builtin("aw")
    sep = quantize.quantize(
        aw, Observable.separable(lambda q: q, 1), basis).matrix.entries
    mono = quantize.quantize(
        aw, Observable.monomial_sum([(1.0, 1.0, 1)]), basis).matrix.entries
    assert np.max(np.abs(sep - mono)) < 1e-8


def test_observable_validation():
    with pytest.raises(UnsupportedObservableError):
        Observable(kind="nope")
    with pytest.raises(ParameterDomainError):
        Observable.momentum_power(-1)
    with pytest.raises(ParameterDomainError):
        Observable.monomial_sum([(1.0, 0.0, 1.5)])


def test_covariance_check_small_basis():
    basis = BasisSpec(alpha=2.0, n_max=20)
    aw = weights.builtin("aw")
    out = quantize.covariance_check(aw, basis, "q", GroupElement(1.3, 0.4))
    assert out["passed"]
    assert out["residual"] <= 2.0 * out["estimate"]


# --- thermal closed-form constants ------------------------------------------

def test_thermal_constant_zero_temperature_gamma_ratio():
    # c_gamma(0) = Gamma(alpha - 1 - gamma)/Gamma(alpha)
    for (alpha, gamma) in [(3.0, 0.0), (2.5, -1.0), (4.0, 1.5)]:
        val, tail = quantize.thermal_constant(alpha, 0.0, gamma)
        expect = math.gamma(alpha - 1.0 - gamma) / math.gamma(alpha)
        assert val == pytest.approx(expect, rel=1e-12)
        assert tail == 0.0


def test_thermal_constant_pin():
    val, tail = quantize.thermal_constant(3.0, 0.2, 0.0)
    assert val == pytest.approx(0.5625, rel=1e-12)
    assert tail < 1e-12


def test_thermal_constant_normalization_identity():
    # gamma = -1 integrates |e_n|^2 exactly: the series telescopes to 1
    for t in (0.0, 0.3, 0.7):
        val, _ = quantize.thermal_constant(2.0, t, -1.0)
        assert val == pytest.approx(1.0, rel=1e-10)


def test_thermal_constant_divergence_guard():
    with pytest.raises(DivergenceError):
        quantize.thermal_constant(2.0, 0.3, 1.0)
    with pytest.raises(ParameterDomainError):
        quantize.thermal_constant(2.0, 1.0, 0.0)


def test_thermal_kinetic_constant_closed_form():
    # K(t) = (alpha/4)(1 + t)/(1 - t)
    for (alpha, t) in [(2.0, 0.0), (2.0, 0.3), (3.5, 0.6)]:
        total, tail = quantize.thermal_kinetic_constant(alpha, t)
        expect = 0.25 * alpha * (1.0 + t) / (1.0 - t)
        assert total == pytest.approx(expect, rel=1e-10)
    total, _ = quantize.thermal_kinetic_constant(3.0, 0.0)
    assert total == 0.75


def test_thermal_quantize_kinetic_structure():
    op = quantize.thermal_quantize(2.0, 0.3, Observable.kinetic())
    terms = {(t[1], t[2]): t[0] for t in op.closed_form["terms"]}
    assert terms[(0.0, 2)] == 1.0 + 0.0j
    assert terms[(-2.0, 0)].real == pytest.approx(
        0.5 * 1.3 / 0.7, rel=1e-10)
    assert op.series_tail < 1e-12


def test_thermal_quantize_momentum_is_exact():
    op = quantize.thermal_quantize(2.0, 0.5, Observable.momentum_power(1))
    assert op.closed_form["terms"] == [(1.0 + 0.0j, 0.0, 1)]
    assert op.series_tail == 0.0

"""Basis states and the unitary half-plane action on them.

Orthonormality and matrix elements are cross-checked against direct
Gauss-Laguerre quadrature, which is exact for the polynomial integrands
involved; constants are pinned to Gamma-function closed forms.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinequant import representation as rep
from affinequant.affine_group import GroupElement, identity, inverse
from affinequant.errors import (DivergenceError, ParameterDomainError)
from affinequant.quadrature import gauss_laguerre_rule
from affinequant.representation import BasisSpec, WaveFunction


def test_basis_spec_validation():
    with pytest.raises(ParameterDomainError):
        BasisSpec(alpha=0.0, n_max=10)
    with pytest.raises(ParameterDomainError):
        BasisSpec(alpha=2.0, n_max=0)
    assert BasisSpec(alpha=2.0, n_max=10).size == 11


def test_ground_state_closed_form():
    # e_0(x) = x^(alpha/2) e^(-x/2) / sqrt(Gamma(alpha + 1))
    alpha = 2.5
    norm = 1.0 / math.sqrt(math.gamma(alpha + 1.0))
    for x in (0.3, 1.0, 4.7):
        expect = norm * x ** (alpha / 2.0) * math.exp(-x / 2.0)
        assert rep.basis_eval(alpha, 0, x) == pytest.approx(expect, rel=1e-13)


def test_laguerre_ground_matches_basis_state():
    alpha = 3.0
    psi = rep.laguerre_ground(alpha)
    xs = np.array([0.4, 1.2, 3.3, 7.0])
    assert psi(xs) == pytest.approx(rep.basis_eval(alpha, 0, xs), rel=1e-13)


def test_orthonormality_by_direct_quadrature():
    # e_m e_n = x^alpha e^(-x) (polynomial), exact under Gauss-Laguerre
    alpha, nmax = 2.0, 8
    x, w = gauss_laguerre_rule(nmax + 4, alpha)
    tab = rep.basis_table(alpha, nmax, x)
    # strip the weight the table carries: tab row n is N_n x^(a/2)e^(-x/2)L_n
    poly = tab / (np.power(x, alpha / 2.0) * np.exp(-x / 2.0))
    gram = poly @ (w[:, None] * poly.T)
    assert np.max(np.abs(gram - np.eye(nmax + 1))) < 1e-12


def test_basis_table_consistent_with_basis_eval():
    alpha, nmax = 1.5, 6
    xs = np.array([0.2, 1.1, 2.9])
    tab = rep.basis_table(alpha, nmax, xs)
    for n in (0, 3, 6):
        assert tab[n] == pytest.approx(rep.basis_eval(alpha, n, xs), rel=1e-12)


def test_wavefunction_validation():
    with pytest.raises(ParameterDomainError):
        WaveFunction()
    with pytest.raises(ParameterDomainError):
        WaveFunction(func=lambda x: x, coeffs=np.array([1.0, 0.0]))
    with pytest.raises(ParameterDomainError):
        WaveFunction(coeffs=np.array([1.0, 0.0]))


def test_wavefunction_zero_extension():
    psi = rep.laguerre_ground(2.0)
    assert psi(-1.0) == 0.0
    assert psi(0.0) == 0.0
    vals = psi(np.array([-0.5, 0.5]))
    assert vals[0] == 0.0 and vals[1] > 0.0


def test_apply_u_preserves_norm_and_inner_products():
    basis = BasisSpec(alpha=2.0, n_max=6)
    g = GroupElement(1.7, -0.8)
    for m in (0, 2):
        for n in (0, 2, 4):
            em = rep.basis_wavefunction(basis.alpha, m)
            en = rep.basis_wavefunction(basis.alpha, n)
            got = rep.inner(rep.apply_u(g, em), rep.apply_u(g, en))
            expect = 1.0 if m == n else 0.0
            assert got == pytest.approx(expect, abs=1e-10)


@given(q=st.floats(min_value=0.3, max_value=3.0),
       p=st.floats(min_value=-2.0, max_value=2.0))
@settings(max_examples=15, deadline=None)
def test_apply_u_unitary_on_ground(q, p):
    psi = rep.laguerre_ground(2.0)
    moved = rep.apply_u(GroupElement(q, p), psi)
    assert rep.inner(moved, moved) == pytest.approx(1.0, abs=1e-9)


def test_matrix_u_at_identity():
    basis = BasisSpec(alpha=2.0, n_max=12)
    u = rep.matrix_u(basis, identity()).entries
    assert np.max(np.abs(u - np.eye(basis.size))) < 1e-12


def test_matrix_element_agrees_with_matrix_u():
    basis = BasisSpec(alpha=2.0, n_max=10)
    g = GroupElement(1.4, 0.6)
    u = rep.matrix_u(basis, g).entries
    for (m, n) in [(0, 0), (2, 5), (7, 1)]:
        assert rep.matrix_element(basis, m, n, g) == pytest.approx(
            u[m, n], rel=1e-10, abs=1e-12)


def test_inverse_pair_recovers_identity_block():
    # truncation cancels between two equally truncated factors, so the
    # inverse pair reproduces the identity on the interior window
    basis = BasisSpec(alpha=2.0, n_max=30)
    g = GroupElement(1.2, 0.5)
    defect = rep.homomorphism_defect(basis, inverse(g), g, window=8)
    assert defect < 1e-8


def test_homomorphism_defect_small():
    basis = BasisSpec(alpha=2.0, n_max=24)
    defect = rep.homomorphism_defect(
        basis, GroupElement(1.15, 0.2), GroupElement(0.9, -0.15), window=8)
    assert defect < 1e-8


def test_trace_u_closed_formula():
    # sqrt(q)/|q - 1|
    g = GroupElement(2.0, 0.3)
    assert rep.trace_u_closed(g) == pytest.approx(math.sqrt(2.0), rel=1e-14)
    g = GroupElement(0.25, -1.0)
    assert rep.trace_u_closed(g) == pytest.approx(0.5 / 0.75, rel=1e-14)


def test_trace_u_closed_pole():
    with pytest.raises(DivergenceError):
        rep.trace_u_closed(GroupElement(1.0, 0.4))


def test_trace_u_matches_closed_form_at_small_alpha():
    basis = BasisSpec(alpha=1e-4, n_max=1)
    g = GroupElement(0.5, 0.3)
    got = complex(rep.trace_u(basis, g))
    assert abs(got - rep.trace_u_closed(g)) < 1e-4


def test_trace_u_is_independent_of_translation():
    basis = BasisSpec(alpha=1e-4, n_max=1)
    a = complex(rep.trace_u(basis, GroupElement(2.0, 0.3)))
    b = complex(rep.trace_u(basis, GroupElement(2.0, -1.1)))
    assert abs(a - b) < 1e-5


def test_fiducial_constant_gamma_ratio():
    # ground fiducial: c_gamma = Gamma(alpha - 1 - gamma)/Gamma(alpha + 1)
    alpha = 3.0
    psi = rep.laguerre_ground(alpha)
    for gamma in (-2.0, -1.0, 0.0, 0.5):
        expect = math.gamma(alpha - 1.0 - gamma) / math.gamma(alpha + 1.0)
        assert rep.fiducial_constant(psi, gamma) == pytest.approx(
            expect, rel=1e-9)


def test_fiducial_constant_divergence_detected():
    psi = rep.laguerre_ground(2.0)
    with pytest.raises(DivergenceError):
        rep.fiducial_constant(psi, 1.5)


def test_admissibility_constant_ground():
    # c_(-1) = Gamma(alpha)/Gamma(alpha+1) = 1/alpha
    for alpha in (2.0, 4.5):
        psi = rep.laguerre_ground(alpha)
        assert rep.admissibility_constant(psi) == pytest.approx(
            1.0 / alpha, rel=1e-9)


def test_duflo_moore_norm():
    # multiplication by (2 pi/x)^(1/2) gives squared norm
    # 2 pi int |psi|^2 / x = 2 pi Gamma(alpha)/Gamma(alpha+1) for the ground
    alpha = 3.0
    psi = rep.laguerre_ground(alpha)
    out = rep.duflo_moore_apply(1, psi)
    expect = 2.0 * math.pi * math.gamma(alpha) / math.gamma(alpha + 1.0)
    assert out.norm() ** 2 == pytest.approx(expect, rel=1e-9)
    assert out(1.3) == pytest.approx(
        math.sqrt(2.0 * math.pi / 1.3) * psi(1.3), rel=1e-12)


def test_make_acs_is_normalized():
    psi = rep.laguerre_ground(2.0)
    acs = rep.make_acs(GroupElement(1.6, -0.9), psi)
    assert rep.inner(acs, acs) == pytest.approx(1.0, abs=1e-9)


def test_expand_recovers_basis_coefficients():
    basis = BasisSpec(alpha=2.0, n_max=10)
    psi = rep.laguerre_ground(2.0)
    coeffs, defect = rep.expand(psi, basis)
    assert coeffs[0] == pytest.approx(1.0, rel=1e-10)
    assert np.max(np.abs(coeffs[1:])) < 1e-10
    assert abs(defect) < 1e-10


def test_expand_displaced_state_roundtrip():
    basis = BasisSpec(alpha=2.0, n_max=40)
    g = GroupElement(1.3, 0.7)
    moved = rep.apply_u(g, rep.laguerre_ground(2.0))
    coeffs, defect = rep.expand(moved, basis)
    assert np.sum(np.abs(coeffs) ** 2) == pytest.approx(1.0, abs=1e-6)
    assert abs(defect) < 1e-6
    # coefficients reproduce the function pointwise
    back = WaveFunction(coeffs=coeffs, basis=basis)
    for x in (0.5, 1.4, 3.0):
        assert back(x) == pytest.approx(moved(x), abs=1e-6)

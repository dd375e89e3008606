"""Phase-space portraits: transforms, marginals, symbols, metric data.

The metric constants of the ground coherent family have Gamma-function
closed forms (c_m3 = alpha + 1, c_m4 = (alpha+1)(alpha+2),
L = (alpha+1)/4), giving exact anchors; the single Wigner point value is
a regression pin recorded after the marginal checks passed.
"""

import math

import numpy as np
import pytest

from affinequant import phase_space as ps
from affinequant import quantize, weights
from affinequant.affine_group import GroupElement
from affinequant.errors import ParameterDomainError, ValidityError
from affinequant.halfosc import eigenstate_analytic
from affinequant.quantize import Observable
from affinequant.representation import (BasisSpec, OperatorMatrix,
                                        laguerre_ground)


def small_grid():
    return ps.PhaseSpaceGrid(np.geomspace(0.3, 3.0, 6),
                             np.linspace(-2.0, 2.0, 7))


def test_grid_validation():
    with pytest.raises(ParameterDomainError):
        ps.PhaseSpaceGrid(np.array([-1.0, 1.0]), np.array([0.0, 1.0]))
    with pytest.raises(ParameterDomainError):
        ps.PhaseSpaceGrid(np.array([2.0, 1.0]), np.array([0.0, 1.0]))
    with pytest.raises(ParameterDomainError):
        ps.PhaseSpaceGrid(np.array([]), np.array([0.0]))


def test_default_grid_shape():
    grid = ps.default_grid()
    assert grid.shape == (120, 160)
    assert grid.q_nodes[0] == pytest.approx(0.05)
    assert grid.p_nodes[-1] == pytest.approx(8.0)


def test_quasi_distribution_validation():
    grid = small_grid()
    good = np.zeros(grid.shape)
    with pytest.raises(ParameterDomainError):
        ps.QuasiDistribution(grid, good, "nope")
    with pytest.raises(ParameterDomainError):
        ps.QuasiDistribution(grid, np.zeros((2, 2)), "wigner_aw")
    with pytest.raises(ValidityError):
        ps.QuasiDistribution(grid, good.astype(complex), "wigner_aw")
    with pytest.raises(ValidityError):
        ps.QuasiDistribution(grid, good - 1.0, "acs_density")


def test_quasi_distribution_write_is_deterministic(tmp_path):
    grid = ps.PhaseSpaceGrid(np.array([0.5, 1.5]), np.array([-1.0, 1.0]))
    vals = np.array([[0.1, 0.2], [0.3, 0.4]])
    dist = ps.QuasiDistribution(grid, vals, "wigner_aw", label="x")
    first = dist.write(tmp_path, "a")
    second = dist.write(tmp_path / "again", "a")
    for f1, f2 in zip(first, second):
        assert open(f1, "rb").read() == open(f2, "rb").read()
    header = open(first[0]).readline().strip()
    assert header == "q,p,value"


def test_wigner_point_pin():
    phi1 = eigenstate_analytic(1).wavefunction
    grid = ps.PhaseSpaceGrid(np.array([1.2]), np.array([0.7]))
    dist = ps.wigner_aw(phi1, grid)
    assert dist.values[0, 0] == pytest.approx(1.4508783103093084, rel=1e-9)
    assert dist.kind == "wigner_aw"


def test_wigner_marginal_recovers_position_density():
    phi1 = eigenstate_analytic(1).wavefunction
    q_nodes = np.array([0.5, 0.9, 1.4, 2.2])
    marg = ps.wigner_marginal_p(phi1, q_nodes)
    expect = np.abs(phi1(q_nodes)) ** 2
    assert marg == pytest.approx(expect, abs=1e-8)


def test_wigner_marginal_q_matches_momentum_density():
    phi1 = eigenstate_analytic(1).wavefunction
    p_nodes = np.array([-1.5, 0.0, 0.8])
    marg = ps.wigner_marginal_q(phi1, p_nodes)
    dens = ps.momentum_density(phi1, p_nodes)
    assert marg == pytest.approx(dens, abs=1e-7)


def test_wigner_total_mass_is_unity():
    phi1 = eigenstate_analytic(1).wavefunction
    assert ps.wigner_normalization(phi1) == pytest.approx(1.0, abs=1e-6)


def test_momentum_density_even_for_real_state():
    phi1 = eigenstate_analytic(1).wavefunction
    p = np.array([-1.3, -0.4, 0.4, 1.3])
    dens = ps.momentum_density(phi1, p)
    assert dens[0] == pytest.approx(dens[3], rel=1e-10)
    assert dens[1] == pytest.approx(dens[2], rel=1e-10)


def test_momentum_density_integrates_to_one():
    # the density tail falls off like p^(-4) (the state vanishes at the
    # origin but its derivative does not), so the cut at 12 leaves ~1e-4
    phi1 = eigenstate_analytic(1).wavefunction
    p = np.linspace(-12.0, 12.0, 481)
    dens = ps.momentum_density(phi1, p)
    assert np.trapezoid(dens, p) == pytest.approx(1.0, abs=5e-4)


def test_acs_transform_reconstruction():
    # |W|^2 / (2 pi c_(-1)) integrates to 1 over the half-plane
    fid = laguerre_ground(2.0)
    phi1 = eigenstate_analytic(1).wavefunction
    grid = ps.PhaseSpaceGrid(np.geomspace(0.05, 12.0, 60),
                             np.linspace(-14.0, 14.0, 121))
    dens = ps.acs_density(phi1, fid, grid)
    assert dens.kind == "acs_density"
    assert np.all(dens.values >= 0.0)
    mass = np.trapezoid(
        np.trapezoid(dens.values, grid.p_nodes, axis=1), grid.q_nodes)
    assert mass == pytest.approx(1.0, abs=2e-2)


def test_acs_symbol_at_identity_is_overlap():
    fid = laguerre_ground(2.0)
    val = ps.acs_symbol(fid, fid, GroupElement(1.0, 0.0))
    assert val == pytest.approx(1.0, abs=1e-9)


def test_lower_symbol_momentum_squared_closed_form():
    aw = weights.builtin("aw")
    obs = Observable.monomial_sum([(1.0, 0.0, 2)])
    for (q, p) in [(0.7, -1.2), (1.5, 0.7)]:
        val = ps.lower_symbol(aw, obs, GroupElement(q, p), method="closed")
        assert val == pytest.approx(p * p + 0.25 / (q * q), rel=1e-10)


def test_lower_symbol_convolution_route_agrees():
    aw = weights.builtin("aw")
    obs = Observable.monomial_sum([(1.0, 0.0, 2)])
    g = GroupElement(1.5, 0.7)
    closed = ps.lower_symbol(aw, obs, g, method="closed")
    conv = ps.lower_symbol(aw, obs, g, method="convolution")
    assert conv == pytest.approx(closed, rel=1e-9)


def test_lower_symbol_position_fn_is_fixed_point():
    # position-only observables pass through the half-plane portrait intact
    aw = weights.builtin("aw")
    obs = Observable.position_fn(lambda q: q ** 1.5)
    g = GroupElement(2.7, 0.4)
    val = ps.lower_symbol(aw, obs, g, method="convolution")
    assert val == pytest.approx(2.7 ** 1.5, rel=1e-12)


def test_acs_position_symbol_dilation_factor():
    # ground fiducial: quantize-then-symbol multiplies q by
    # (alpha + 1)/(alpha - 1)
    alpha = 3.0
    acs = weights.builtin("acs", alpha=alpha)
    obs = Observable.position_fn(lambda q: q)
    g = GroupElement(1.7, 0.5)
    val = ps.lower_symbol(acs, obs, g, method="closed")
    assert val == pytest.approx((alpha + 1.0) / (alpha - 1.0) * 1.7, rel=1e-9)


def test_lower_symbol_trace_route_identity():
    basis = BasisSpec(alpha=2.0, n_max=30)
    fid = laguerre_ground(2.0)
    val = ps.lower_symbol_trace(
        basis, np.eye(basis.size), GroupElement(1.3, 0.4), fid)
    assert complex(val).real == pytest.approx(1.0, abs=1e-6)
    assert abs(complex(val).imag) < 1e-9


def test_lower_symbol_trace_position_matrix():
    # trace route against the closed symbol for the quantized position map
    basis = BasisSpec(alpha=2.0, n_max=40)
    fid = laguerre_ground(2.0)
    aw = weights.builtin("aw")
    a_q = quantize.quantize_position_fn(aw, lambda q: q, basis).matrix.entries
    g = GroupElement(1.2, 0.3)
    got = ps.lower_symbol_trace(basis, a_q, g, fid)
    # <U(g) e_0| Q |U(g) e_0> = q <e_0| Q |e_0> = q (alpha + 1)
    assert complex(got).real == pytest.approx(1.2 * 3.0, rel=1e-6)


def test_fubini_study_ground_closed_forms():
    alpha = 2.0
    out = ps.fubini_study(laguerre_ground(alpha))
    assert out["c_m3"] == pytest.approx(alpha + 1.0, rel=1e-9)
    assert out["c_m4"] == pytest.approx((alpha + 1.0) * (alpha + 2.0),
                                        rel=1e-9)
    assert out["L"] == pytest.approx((alpha + 1.0) / 4.0, rel=1e-5)
    m = out["metric"](2.0, 0.0)
    assert m["dp2"] == pytest.approx(24.0, rel=1e-5)
    assert m["dq2"] == pytest.approx(0.375, rel=1e-5)
    with pytest.raises(ParameterDomainError):
        out["metric"](0.0, 1.0)


def test_evolve_density_requires_hermitian_generator():
    basis = BasisSpec(alpha=2.0, n_max=6)
    bad = np.zeros((basis.size, basis.size), dtype=complex)
    bad[0, 1] = 1.0j
    h = OperatorMatrix(basis=basis, entries=bad, hermitian=False)
    with pytest.raises(ValidityError):
        ps.evolve_density(laguerre_ground(2.0), h, [0.0, 1.0],
                          laguerre_ground(2.0), small_grid())


def test_evolve_density_identity_generator_is_stationary():
    basis = BasisSpec(alpha=2.0, n_max=40)
    fid = laguerre_ground(2.0)
    ident = OperatorMatrix(
        basis=basis, entries=np.eye(basis.size, dtype=complex),
        hermitian=True)
    phi1 = eigenstate_analytic(1).wavefunction
    frames = ps.evolve_density(phi1, ident, [0.0, 0.9], fid, small_grid())
    drift = np.max(np.abs(frames[1].values - frames[0].values))
    assert drift < 1e-9

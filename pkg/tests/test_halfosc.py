"""Half-line oscillator: exact levels, both solvers, figure bundles.

The exact spectrum 2n - 1/2 and the closed-form first level
2 pi^(-1/4) x e^(-x^2/2) anchor everything; the finite-difference path is
additionally checked for its second-order convergence rate.
"""

import contextlib
import json
import math

import numpy as np
import pytest

from affinequant import halfosc, phase_space, quantize, weights
from affinequant.errors import AccuracyWarning, ParameterDomainError
from affinequant.quadrature import adaptive_integrate
from affinequant.representation import BasisSpec


def test_first_level_closed_form():
    state = halfosc.eigenstate_analytic(1)
    assert state.energy == pytest.approx(1.5, abs=0.0)
    for x in (0.4, 0.9, 2.1):
        expect = 2.0 * math.pi ** -0.25 * x * math.exp(-0.5 * x * x)
        assert state.wavefunction(x) == pytest.approx(expect, rel=1e-12)


def test_analytic_levels_are_orthonormal():
    states = [halfosc.eigenstate_analytic(n).wavefunction for n in (1, 2, 3)]
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            val, _ = adaptive_integrate(
                lambda x, a=a, b=b: a(x) * b(x), 0.0, math.inf)
            assert val == pytest.approx(1.0 if i == j else 0.0, abs=1e-10)


def test_analytic_energies():
    for n in (1, 2, 5):
        assert halfosc.eigenstate_analytic(n).energy == 2.0 * n - 0.5


def test_eigenstate_analytic_rejects_bad_level():
    with pytest.raises(ParameterDomainError):
        halfosc.eigenstate_analytic(0)


def test_fd_energies_at_defaults():
    pairs = halfosc.eigensolve_fd(4)
    for n, (energy, state) in enumerate(pairs, start=1):
        assert energy == pytest.approx(2.0 * n - 0.5, abs=1e-4)
        assert state.n == n


def test_fd_eigenvector_matches_closed_form():
    pairs = halfosc.eigensolve_fd(1, x_max=14.0, n_points=2800)
    _, state = pairs[0]
    exact = halfosc.eigenstate_analytic(1).wavefunction
    xs = np.linspace(0.2, 5.0, 40)
    got = np.array([state(x) for x in xs])
    sign = np.sign(got[np.argmax(np.abs(got))])
    assert sign * got == pytest.approx(exact(xs), abs=1e-4)


def test_fd_second_order_convergence():
    # halving h divides the energy error by about four
    errs = []
    for n_points in (800, 1600, 3200):
        guard = (pytest.warns(AccuracyWarning) if n_points < 2000
                 else contextlib.nullcontext())
        with guard:
            pairs = halfosc.eigensolve_fd(1, x_max=12.0, n_points=n_points)
        errs.append(abs(pairs[0][0] - 1.5))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.1)


def test_fd_coarse_grid_warns_with_estimate():
    with pytest.warns(AccuracyWarning, match="estimate"):
        halfosc.eigensolve_fd(2, x_max=10.0, n_points=2400)
    with pytest.warns(AccuracyWarning):
        halfosc.eigensolve_fd(2, x_max=12.0, n_points=1500)


def test_fd_guards():
    with pytest.raises(ParameterDomainError):
        halfosc.eigensolve_fd(0)
    with pytest.raises(ParameterDomainError):
        halfosc.eigensolve_fd(1, n_points=8)
    with pytest.raises(ParameterDomainError):
        halfosc.eigensolve_fd(1, x_max=-1.0)


def test_state_requires_exactly_one_representation():
    with pytest.raises(ParameterDomainError):
        halfosc.HalfOscState(n=1, energy=1.5)
    with pytest.raises(ParameterDomainError):
        halfosc.HalfOscState(
            n=1, energy=1.5,
            wavefunction=halfosc.eigenstate_analytic(1).wavefunction,
            x_nodes=np.array([1.0]), samples=np.array([1.0]))


def test_sampled_state_interpolates_and_zero_extends():
    xs = np.linspace(0.1, 8.0, 200)
    vals = 2.0 * math.pi ** -0.25 * xs * np.exp(-0.5 * xs * xs)
    state = halfosc.HalfOscState(n=1, energy=1.5, x_nodes=xs, samples=vals)
    assert state(1.0) == pytest.approx(
        2.0 * math.pi ** -0.25 * math.exp(-0.5), rel=1e-3)
    assert state(9.5) == 0.0


def test_hamiltonian_matrix_is_hermitian():
    basis = BasisSpec(alpha=2.0, n_max=24)
    h = halfosc.hamiltonian_matrix(basis)
    assert h.matrix.asymmetry() < 1e-10


def test_hamiltonian_matrix_guards():
    with pytest.raises(ParameterDomainError):
        halfosc.hamiltonian_matrix(BasisSpec(alpha=0.5, n_max=10))
    with pytest.raises(ParameterDomainError):
        halfosc.hamiltonian_matrix(BasisSpec(alpha=2.0, n_max=10), scale=0.0)


def test_laguerre_spectrum_matches_exact_levels():
    basis = BasisSpec(alpha=2.0, n_max=40)
    levels = halfosc.laguerre_spectrum(3, basis)
    for n, e in enumerate(levels, start=1):
        assert e == pytest.approx(2.0 * n - 0.5, abs=1e-5)


def test_laguerre_spectrum_scale_consistency():
    # the dilated expansion changes convergence rate, not the limit
    basis = BasisSpec(alpha=2.0, n_max=60)
    a = halfosc.laguerre_spectrum(2, basis, scale=2.5)
    b = halfosc.laguerre_spectrum(2, basis, scale=3.5)
    assert a == pytest.approx(b, abs=1e-8)


def small_grid():
    return phase_space.PhaseSpaceGrid(np.geomspace(0.3, 4.0, 8),
                                      np.linspace(-3.0, 3.0, 9))


def test_figure_data_members():
    bundle = halfosc.figure_data(1, small_grid())
    for key in ("n", "energy", "grid", "density", "wigner", "wavelet_re",
                "wavelet_im", "acs_density", "reconstructed_density",
                "momentum_density"):
        assert key in bundle
    assert bundle["n"] == 1
    assert bundle["energy"] == pytest.approx(1.5)
    assert bundle["wigner"].kind == "wigner_aw"
    assert bundle["acs_density"].kind == "acs_density"


def test_figure_data_density_reconstruction():
    bundle = halfosc.figure_data(1, small_grid())
    q = bundle["grid"].q_nodes
    exact = np.abs(halfosc.eigenstate_analytic(1).wavefunction(q)) ** 2
    assert bundle["density"] == pytest.approx(exact, rel=1e-10)
    assert bundle["reconstructed_density"] == pytest.approx(exact, abs=1e-8)


def test_write_figure_bundle_manifest(tmp_path):
    bundle = halfosc.figure_data(1, small_grid())
    manifest_path = halfosc.write_figure_bundle(bundle, tmp_path)
    manifest = json.loads(open(manifest_path).read())
    assert manifest["n"] == 1
    assert set(manifest["files"])
    import hashlib
    for name, digest in manifest["files"].items():
        payload = open(tmp_path / name, "rb").read()
        assert hashlib.sha256(payload).hexdigest() == digest


def test_write_figure_bundle_member_selection(tmp_path):
    bundle = halfosc.figure_data(2, small_grid())
    halfosc.write_figure_bundle(bundle, tmp_path, members=("density",))
    names = {p.name for p in tmp_path.iterdir()}
    assert any("density" in n for n in names)
    assert not any("wigner" in n for n in names)
    with pytest.raises(ParameterDomainError):
        halfosc.write_figure_bundle(bundle, tmp_path, members=("bogus",))


def test_spectrum_through_generic_quantizer():
    # the assembled hamiltonian equals (P^2 + Q^2)/2 built term by term
    basis = BasisSpec(alpha=2.0, n_max=20)
    h = halfosc.hamiltonian_matrix(basis)
    aw = weights.builtin("aw")
    obs = quantize.Observable.monomial_sum([(0.5, 2.0, 0), (0.5, 0.0, 2)])
    direct = quantize.quantize(aw, obs, basis)
    assert np.max(np.abs(h.matrix.entries - direct.matrix.entries)) < 1e-10

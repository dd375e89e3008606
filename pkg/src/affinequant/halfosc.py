"""Half harmonic oscillator on the positive axis.

The oscillator -d^2/2dx^2 + x^2/2 restricted to x > 0 with a Dirichlet
condition at the origin keeps exactly the odd oscillator levels: the
eigenstates are the odd Hermite functions renormalized to unit norm on
the half-line and the energies are 2n - 1/2 for n = 1, 2, ...

The module provides the analytic eigenstates, an independent
finite-difference Dirichlet solver for the same spectrum, and the
phase-space figure bundles (densities, Wigner map, wavelet transform)
with a checksum manifest.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermval
from scipy.linalg import eigh, eigh_tridiagonal
from scipy.special import gammaln

from . import phase_space
from .errors import AccuracyWarning, ParameterDomainError
from .representation import WaveFunction, admissibility_constant, laguerre_ground

__all__ = [
    "HalfOscState",
    "BUNDLE_MEMBERS",
    "eigenstate_analytic",
    "eigensolve_fd",
    "hamiltonian_matrix",
    "laguerre_spectrum",
    "figure_data",
    "write_figure_bundle",
]


@dataclass
class HalfOscState:
    """One Dirichlet eigenstate, in closed form or as grid samples."""

    n: int
    energy: float
    wavefunction: WaveFunction | None = None
    x_nodes: np.ndarray | None = None
    samples: np.ndarray | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ParameterDomainError(f"level index must be >= 1, got {self.n}")
        if (self.wavefunction is None) == (self.samples is None):
            raise ParameterDomainError(
                "exactly one of wavefunction or samples must be set")
        if self.samples is not None and (
                self.x_nodes is None or len(self.x_nodes) != len(self.samples)):
            raise ParameterDomainError("samples need matching x_nodes")

    def __call__(self, x):
        if self.wavefunction is not None:
            return self.wavefunction(x)
        return np.interp(x, self.x_nodes, self.samples, left=0.0, right=0.0)


def eigenstate_analytic(n):
    """Analytic Dirichlet eigenstate: odd Hermite function, unit norm.

    phi_n is proportional to H_(2n-1)(x) exp(-x^2/2); the half-line
    norm is half the full-line one, so the amplitude is fixed by
    int_0^inf H_(2n-1)^2 e^(-x^2) dx = 2^(2n-2) (2n-1)! sqrt(pi).
    """
    if n < 1:
        raise ParameterDomainError(f"level index must be >= 1, got {n}")
    deg = 2 * n - 1
    coeffs = np.zeros(deg + 1)
    coeffs[deg] = 1.0
    log_norm_sq = (deg - 1.0) * math.log(2.0) + gammaln(deg + 1.0) \
        + 0.5 * math.log(math.pi)
    amp = math.exp(-0.5 * log_norm_sq)

    def func(x):
        return amp * hermval(np.asarray(x, dtype=np.float64), coeffs) \
            * np.exp(-0.5 * np.asarray(x, dtype=np.float64) ** 2)

    wf = WaveFunction(func=func, decay="gaussian", label=f"phi_{n}",
                      is_real=True)
    return HalfOscState(n=n, energy=2.0 * n - 0.5, wavefunction=wf)


def _fd_energies_states(n_levels, x_max, n_points):
    h = x_max / n_points
    x = h * np.arange(1, n_points)
    diag = 1.0 / (h * h) + 0.5 * x * x
    off = np.full(n_points - 2, -0.5 / (h * h))
    evals, evecs = eigh_tridiagonal(
        diag, off, select="i", select_range=(0, n_levels - 1))
    states = evecs / math.sqrt(h)
    for k in range(n_levels):
        if states[0, k] < 0.0:
            states[:, k] = -states[:, k]
    return x, evals, states


def eigensolve_fd(n_levels, x_max=12.0, n_points=3000):
    """Lowest Dirichlet eigenpairs by second-order central differences.

    The operator -d^2/2dx^2 + x^2/2 on (0, x_max) with both endpoints
    clamped to zero becomes a symmetric tridiagonal matrix on the
    interior nodes.  Below the resolution regime x_max >= 12,
    n_points >= 2000 an AccuracyWarning carries a Richardson estimate
    of the energy error; the default grid is finer so that the first
    four levels land within 1e-4 of 2n - 1/2.  Returns
    [(energy, HalfOscState), ...].
    """
    if n_levels < 1:
        raise ParameterDomainError(f"n_levels must be >= 1, got {n_levels}")
    if n_points < 16 or x_max <= 0.0:
        raise ParameterDomainError(
            f"need n_points >= 16 and x_max > 0, got {n_points}, {x_max}")
    if n_levels >= n_points - 1:
        raise ParameterDomainError("more levels requested than grid points")
    x, evals, states = _fd_energies_states(n_levels, x_max, n_points)
    if x_max < 12.0 or n_points < 2000:
        _, coarse, _ = _fd_energies_states(n_levels, x_max, n_points // 2)
        estimate = float(np.max(np.abs(evals - coarse))) / 3.0
        warnings.warn(AccuracyWarning(
            f"resolution below the stated regime (x_max={x_max:g} < 12 or "
            f"n_points={n_points} < 2000): Richardson energy error estimate "
            f"{estimate:.2e}"))
    out = []
    for k in range(n_levels):
        state = HalfOscState(n=k + 1, energy=float(evals[k]),
                             x_nodes=x, samples=states[:, k].copy())
        out.append((float(evals[k]), state))
    return out


def hamiltonian_matrix(basis, scale=1.0):
    """(P^2 + Q^2)/2 in a Laguerre basis through the canonical weight.

    The flat weight quantizes q^2 to Q^2 and p^2 to P^2 exactly, so the
    half-oscillator Hamiltonian is assembled as one monomial sum; basis
    functions vanish at the origin for alpha > 1, matching the Dirichlet
    condition.

    ``scale`` dilates the basis to sqrt(s) e_n(s x).  Dilations send Q
    to Q/s and P to sP, so the matrix in the dilated basis equals the
    standard-basis matrix of (s^2 p^2 + q^2/s^2)/2.  The unit scale is
    the plain basis; scales around 3 match the Gaussian falloff of the
    eigenstates far better and cut the truncation error by orders of
    magnitude.
    """
    from . import quantize, weights

    if basis.alpha <= 1.0:
        raise ParameterDomainError(
            f"alpha must exceed 1 for a Dirichlet-compatible kinetic matrix, "
            f"got {basis.alpha}")
    if scale <= 0.0:
        raise ParameterDomainError(f"scale must be positive, got {scale}")
    aw = weights.builtin("aw")
    s2 = scale * scale
    obs = quantize.Observable.monomial_sum(
        [(0.5 / s2, 2.0, 0), (0.5 * s2, 0.0, 2)])
    return quantize.quantize(aw, obs, basis)


def laguerre_spectrum(n_levels, basis, scale=3.0):
    """Lowest eigenvalues of the basis-truncated half-oscillator."""
    op = hamiltonian_matrix(basis, scale=scale)
    entries = op.matrix.entries
    sym = 0.5 * (entries + entries.conj().T)
    evals = eigh(sym, eigvals_only=True)
    return np.sort(np.real(evals))[:n_levels]


def figure_data(n, grid, fiducial=None):
    """Phase-space portrait bundle of the n-th eigenstate on a grid.

    Returns the position density on the grid's q nodes, the Wigner map,
    the wavelet transform (real and imaginary parts) and its density
    for the alpha = 1 ground fiducial, the p-marginal reconstruction of
    the density, and the q-marginal momentum density.
    """
    state = eigenstate_analytic(n)
    phi = state.wavefunction
    if fiducial is None:
        fiducial = laguerre_ground(1.0)
    wig = phase_space.wigner_aw(phi, grid)
    wtrans = phase_space.acs_transform_grid(phi, fiducial, grid)
    c_m1 = admissibility_constant(fiducial)
    acs = phase_space.QuasiDistribution(
        grid, np.abs(wtrans) ** 2 / (2.0 * math.pi * c_m1),
        "acs_density", label=phi.label, residuals={})
    density = np.abs(phi(grid.q_nodes)) ** 2
    reconstructed = phase_space.wigner_marginal_p(phi, grid.q_nodes)
    momentum = phase_space.wigner_marginal_q(phi, grid.p_nodes)
    return {
        "n": n,
        "energy": state.energy,
        "grid": grid,
        "density": density,
        "wigner": wig,
        "wavelet_re": np.real(wtrans),
        "wavelet_im": np.imag(wtrans),
        "acs_density": acs,
        "reconstructed_density": reconstructed,
        "momentum_density": momentum,
    }


def _write_axis_csv(path, axis_name, nodes, values):
    lines = [f"{axis_name},value"]
    for a, v in zip(nodes, values):
        lines.append("%.17g,%.17g" % (a, v))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def _write_grid_csv(path, grid, values):
    lines = ["q,p,value"]
    for i in range(grid.q_nodes.size):
        for j in range(grid.p_nodes.size):
            lines.append("%.17g,%.17g,%.17g"
                         % (grid.q_nodes[i], grid.p_nodes[j], values[i, j]))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


BUNDLE_MEMBERS = ("density", "reconstructed_density", "momentum_density",
                  "wigner", "acs_density", "wavelet")


def write_figure_bundle(bundle, directory, prefix=None, tolerances=None,
                        members=None):
    """Emit bundle members as CSV (plus sidecars) with a manifest.

    ``members`` selects a subset of BUNDLE_MEMBERS (all by default).  The
    manifest JSON lists each emitted file with its sha256 checksum, the
    level index and energy, the grid, and the effective tolerances.
    Returns the manifest path.
    """
    if members is None:
        members = BUNDLE_MEMBERS
    unknown = set(members) - set(BUNDLE_MEMBERS)
    if unknown:
        raise ParameterDomainError(
            f"unknown bundle members {sorted(unknown)}; "
            f"choose from {list(BUNDLE_MEMBERS)}")
    os.makedirs(directory, exist_ok=True)
    prefix = prefix or f"phi{bundle['n']}"
    grid = bundle["grid"]
    emitted = []

    axis_members = (("density", "q", grid.q_nodes),
                    ("reconstructed_density", "q", grid.q_nodes),
                    ("momentum_density", "p", grid.p_nodes))
    for name, axis, nodes in axis_members:
        if name not in members:
            continue
        path = os.path.join(directory, f"{prefix}_{name}.csv")
        _write_axis_csv(path, axis, nodes, bundle[name])
        emitted.append(path)

    for name in ("wigner", "acs_density"):
        if name in members:
            emitted.extend(bundle[name].write(directory, f"{prefix}_{name}",
                                              tolerances=tolerances))
    if "wavelet" in members:
        for part in ("wavelet_re", "wavelet_im"):
            path = os.path.join(directory, f"{prefix}_{part}.csv")
            _write_grid_csv(path, grid, bundle[part])
            emitted.append(path)

    manifest = {
        "n": bundle["n"],
        "energy": bundle["energy"],
        "grid": {"q": ["%.17g" % v for v in grid.q_nodes],
                 "p": ["%.17g" % v for v in grid.p_nodes]},
        "tolerances": tolerances or {},
        "files": {os.path.basename(p): _sha256(p) for p in emitted},
    }
    manifest_path = os.path.join(directory, f"{prefix}_manifest.json")
    with open(manifest_path, "w") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
        f.write("\n")
    return manifest_path

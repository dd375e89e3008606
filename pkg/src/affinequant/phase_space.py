"""Semi-classical portraits on the half-plane.

Provides the affine Wigner-like quasi-distribution and its marginals,
wavelet (coherent-state) transforms and densities, closed-form and
trace-route lower symbols, density time evolution, and the Fubini-Study
metric of a fiducial state.

The Wigner integral is computed after the substitution x = q e^u, which
symmetrizes the phase x - q^2/x into s = 2 q sinh(u); rows of the grid
are then plain cosine/phase transforms of a panel-quadrature envelope
shared by every p node.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh

from . import _kernels
from .errors import (
    AccuracyError,
    ConfigurationError,
    ParameterDomainError,
    UnsupportedObservableError,
    ValidityError,
)
from .quadrature import adaptive_integrate
from .representation import (
    WaveFunction,
    admissibility_constant,
    apply_u,
    expand,
    fiducial_constant,
    inner,
    make_acs,
)
from .quantize import _omega_beta_deriv

__all__ = [
    "PhaseSpaceGrid",
    "QuasiDistribution",
    "default_grid",
    "wigner_aw",
    "wigner_marginal_p",
    "wigner_marginal_q",
    "wigner_normalization",
    "momentum_density",
    "acs_symbol",
    "acs_transform_grid",
    "acs_density",
    "lower_symbol",
    "lower_symbol_trace",
    "evolve_density",
    "fubini_study",
]

TWO_PI = 2.0 * math.pi
ROOT_TWO_PI = math.sqrt(TWO_PI)


@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    """Rectangular evaluation grid on the open half-plane."""

    q_nodes: np.ndarray
    p_nodes: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q_nodes, dtype=np.float64)
        p = np.asarray(self.p_nodes, dtype=np.float64)
        if q.ndim != 1 or p.ndim != 1 or q.size == 0 or p.size == 0:
            raise ParameterDomainError("grid nodes must be 1-D and non-empty")
        if np.any(q <= 0.0):
            raise ParameterDomainError("q nodes must be positive")
        if np.any(np.diff(q) <= 0.0) or np.any(np.diff(p) <= 0.0):
            raise ParameterDomainError("grid nodes must be strictly increasing")
        object.__setattr__(self, "q_nodes", q)
        object.__setattr__(self, "p_nodes", p)

    @property
    def shape(self):
        return (self.q_nodes.size, self.p_nodes.size)


def default_grid():
    """q in [0.05, 8] geometric (120), p in [-8, 8] uniform (160)."""
    return PhaseSpaceGrid(np.geomspace(0.05, 8.0, 120),
                          np.linspace(-8.0, 8.0, 160))


@dataclass
class QuasiDistribution:
    """Values of a phase-space portrait on a grid, with provenance."""

    grid: PhaseSpaceGrid
    values: np.ndarray
    kind: str
    label: str = ""
    residuals: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("wigner_aw", "acs_density", "lower_symbol"):
            raise ParameterDomainError(f"unknown kind {self.kind!r}")
        self.values = np.asarray(self.values)
        if self.values.shape != self.grid.shape:
            raise ParameterDomainError(
                f"values shape {self.values.shape} does not match grid "
                f"{self.grid.shape}")
        if self.kind == "wigner_aw" and np.iscomplexobj(self.values):
            raise ValidityError("wigner_aw values must be real")
        if self.kind == "acs_density" and (
                np.iscomplexobj(self.values) or np.any(self.values < 0.0)):
            raise ValidityError("acs_density values must be nonnegative")

    def write(self, directory, name, tolerances=None):
        """Emit <name>.csv (header q,p,value, row-major) and <name>.json."""
        import os

        os.makedirs(directory, exist_ok=True)
        csv_path = os.path.join(directory, name + ".csv")
        lines = ["q,p,value"]
        q, p = self.grid.q_nodes, self.grid.p_nodes
        for i in range(q.size):
            for j in range(p.size):
                lines.append("%.17g,%.17g,%.17g"
                             % (q[i], p[j], float(self.values[i, j])))
        with open(csv_path, "w") as f:
            f.write("\n".join(lines) + "\n")
        sidecar = {
            "kind": self.kind,
            "label": self.label,
            "grid": {"q": ["%.17g" % v for v in q],
                     "p": ["%.17g" % v for v in p]},
            "tolerances": tolerances or {},
            "residuals": {k: float(v) for k, v in self.residuals.items()},
        }
        json_path = os.path.join(directory, name + ".json")
        with open(json_path, "w") as f:
            json.dump(sidecar, f, indent=1, sort_keys=True)
            f.write("\n")
        return [csv_path, json_path]


# ---------------------------------------------------------------------------
# Panel quadrature helpers

_LEG_CACHE = {}


def _leggauss(n):
    if n not in _LEG_CACHE:
        _LEG_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _LEG_CACHE[n]


def _panels(a, b, n_panels, n_per):
    """Composite Gauss-Legendre nodes/weights on [a, b]."""
    y, w = _leggauss(n_per)
    edges = np.linspace(a, b, n_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * y[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return nodes, wts


def _geom_panels(a, b, n_panels, n_per):
    """Composite Gauss-Legendre on geometrically graded panels of [a, b]."""
    y, w = _leggauss(n_per)
    edges = np.geomspace(a, b, n_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * y[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return nodes, wts


# ---------------------------------------------------------------------------
# Affine Wigner quasi-distribution


def _wigner_envelope(phi, q, s_nodes):
    """F(s) = conj(phi(q e^u)) phi(q e^-u) / cosh(u) at s = 2 q sinh(u)."""
    u = np.arcsinh(s_nodes / (2.0 * q))
    x_plus = q * np.exp(u)
    x_minus = q * np.exp(-u)
    ch = np.sqrt(1.0 + (s_nodes / (2.0 * q)) ** 2)
    return np.conjugate(phi(x_plus)) * phi(x_minus) / ch


def _wigner_row(phi, q, p_nodes, s_max, n_panels, n_per):
    """AW(q, p) for every p at one q; returns (values, imag_residual)."""
    if phi.is_real:
        s, w = _panels(0.0, s_max, n_panels, n_per)
        env = np.real(_wigner_envelope(phi, q, s))
        vals = _kernels.cos_transform(
            np.ascontiguousarray(2.0 * w * env), s, np.abs(p_nodes))
        return vals, 0.0
    s, w = _panels(-s_max, s_max, 2 * n_panels, n_per)
    env = _wigner_envelope(phi, q, s) * w
    row = _kernels.phase_transform(
        np.ascontiguousarray(env, dtype=np.complex128), s,
        np.ascontiguousarray(-p_nodes))
    return np.real(row), float(np.max(np.abs(np.imag(row))))


def _wigner_panel_count(s_max, p_abs_max):
    # about one panel per oscillation period of cos(p s), floor of 24
    return max(24, int(math.ceil(s_max * max(p_abs_max, 1.0) / math.pi)) + 8)


def wigner_aw(phi, grid, tol=1e-8):
    """Affine Wigner quasi-distribution of a normalized state on a grid.

    Real states use the cosine form and the values are real by
    construction; complex states report the maximal imaginary residual.
    Every row is evaluated at two quadrature refinements; disagreement
    above tol raises an AccuracyError naming the offending node.
    """
    s_max = float(phi.support_cut())
    p_abs = float(np.max(np.abs(grid.p_nodes))) if grid.p_nodes.size else 1.0
    n_panels = _wigner_panel_count(s_max, p_abs)
    values = np.empty(grid.shape, dtype=np.float64)
    imag_res = 0.0
    quad_res = 0.0
    for i, q in enumerate(grid.q_nodes):
        row, ires = _wigner_row(phi, float(q), grid.p_nodes,
                                s_max, n_panels, 10)
        row2, _ = _wigner_row(phi, float(q), grid.p_nodes,
                              s_max, n_panels, 16)
        diff = float(np.max(np.abs(row - row2)))
        if diff > max(tol, 1e-12):
            j = int(np.argmax(np.abs(row - row2)))
            raise AccuracyError(
                f"wigner quadrature failed at q={q:g}, p={grid.p_nodes[j]:g}:"
                f" refinement moved the value by {diff:.3e} (tol {tol:g})")
        quad_res = max(quad_res, diff)
        imag_res = max(imag_res, ires)
        values[i] = row2
    return QuasiDistribution(
        grid, values, "wigner_aw", label=phi.label,
        residuals={"imag": imag_res, "quadrature": quad_res})


def wigner_marginal_p(phi, q_nodes, tail=36.0):
    """(1/2pi) int AW(q, p) dp at each q; converges to |phi(q)|^2.

    The p-integral is an alias-safe trapezoid: spacing under pi/s_max
    pushes the Poisson aliases beyond the envelope support, and the
    range grows like 1/q to outrun the e^(-2 q |p|)-type decay of the
    quasi-distribution in p (tail sets the target exponent).
    """
    s_max = float(phi.support_cut())
    h = math.pi / (1.1 * s_max)
    out = np.empty(len(q_nodes), dtype=np.float64)
    for i, q in enumerate(q_nodes):
        p_max = max(25.0, 0.5 * tail / float(q))
        n = int(math.ceil(p_max / h))
        p = np.arange(-n, n + 1, dtype=np.float64) * h
        row, _ = _wigner_row(phi, float(q), p, s_max,
                             _wigner_panel_count(s_max, float(p[-1])), 12)
        out[i] = h * float(np.sum(row)) / TWO_PI
    return out


def wigner_marginal_q(phi, p_nodes, q_lo=1e-3, n_panels=60, n_per=8):
    """(1/2pi) int AW(q, p) dq at each p; converges to |phi_hat(p)|^2."""
    s_max = float(phi.support_cut())
    q_hi = 1.05 * s_max
    nodes, wts = _geom_panels(q_lo, q_hi, n_panels, n_per)
    acc = np.zeros(len(p_nodes), dtype=np.float64)
    row_panels = _wigner_panel_count(s_max, float(np.max(np.abs(p_nodes))))
    for q, w in zip(nodes, wts):
        row, _ = _wigner_row(phi, float(q), np.asarray(p_nodes, float),
                             s_max, row_panels, 12)
        acc += w * row
    return acc / TWO_PI


def wigner_normalization(phi, p_cut=250.0, q_lo=1e-3, n_panels=40, n_per=6):
    """(1/2pi) double integral of AW over the half-plane (should be 1).

    Per-q alias-safe p-trapezoids are clipped at min(p_cut, 18/q); the
    cap only acts at small q, where the strip mass is cubically small,
    and the residual momentum tail falls off like p_cut^(-3).
    """
    s_max = float(phi.support_cut())
    h = math.pi / (1.1 * s_max)
    q_nodes, q_wts = _geom_panels(q_lo, 1.05 * s_max, n_panels, n_per)
    total = 0.0
    for q, wq in zip(q_nodes, q_wts):
        p_hi = min(p_cut, max(25.0, 18.0 / float(q)))
        n = int(math.ceil(p_hi / h))
        p = np.arange(-n, n + 1, dtype=np.float64) * h
        row, _ = _wigner_row(phi, float(q), p, s_max,
                             _wigner_panel_count(s_max, float(p[-1])), 10)
        total += wq * h * float(np.sum(row))
    return total / TWO_PI


def momentum_density(phi, p_nodes, n_per=12):
    """|phi_hat(p)|^2 with phi extended by zero to the negative axis."""
    x_hi = float(phi.support_cut())
    p_abs = float(np.max(np.abs(p_nodes)))
    n_panels = max(16, int(math.ceil(x_hi * max(p_abs, 1.0) / math.pi)) + 8)
    x, w = _panels(0.0, x_hi, n_panels, n_per)
    env = np.ascontiguousarray(w * phi(x) / ROOT_TWO_PI, dtype=np.complex128)
    vals = _kernels.phase_transform(env, x, np.asarray(p_nodes, float))
    return np.abs(vals) ** 2


# ---------------------------------------------------------------------------
# Wavelet (ACS) transform and density


def acs_symbol(phi, fiducial, g):
    """W_phi(g) = <g; fiducial | phi> by adaptive quadrature."""
    return inner(make_acs(g, fiducial), phi)


def acs_transform_grid(phi, fiducial, grid, n_per=10):
    """W_phi on a grid, one phase transform per q row."""
    admissibility_constant(fiducial)
    x_hi_phi = float(phi.support_cut())
    fid_cut = float(fiducial.support_cut())
    p_abs = float(np.max(np.abs(grid.p_nodes)))
    out = np.empty(grid.shape, dtype=np.complex128)
    for i, q in enumerate(grid.q_nodes):
        x_hi = min(x_hi_phi, fid_cut * float(q))
        if x_hi <= 0.0:
            out[i] = 0.0
            continue
        n_panels = max(16, int(math.ceil(x_hi * max(p_abs, 1.0) / math.pi)) + 8)
        x, w = _panels(0.0, x_hi, n_panels, n_per)
        env = np.conjugate(fiducial(x / q)) * phi(x) / math.sqrt(q)
        out[i] = _kernels.phase_transform(
            np.ascontiguousarray(w * env, dtype=np.complex128),
            x, grid.p_nodes)
    return out


def acs_density(phi, fiducial, grid):
    """rho_phi = |W_phi|^2 / (2 pi c_(-1)) as a QuasiDistribution."""
    c_m1 = admissibility_constant(fiducial)
    wvals = acs_transform_grid(phi, fiducial, grid)
    dens = np.abs(wvals) ** 2 / (TWO_PI * c_m1)
    return QuasiDistribution(grid, dens, "acs_density", label=phi.label,
                             residuals={})


# ---------------------------------------------------------------------------
# Lower symbols


def _acs_constants(fiducial, gammas):
    return {g: fiducial_constant(fiducial, g) for g in gammas}


def _fiducial_deriv_sq_integral(psi, x_weight=0.0, h=1e-5):
    """int (psi'(x))^2 x^x_weight dx with a central-difference derivative."""
    def integrand(x):
        d = (psi(x + h) - psi(x - h)) / (2.0 * h)
        return np.abs(d) ** 2 * np.power(x, x_weight)

    val, _ = adaptive_integrate(integrand, h * 2.0, math.inf,
                                rel_tol=1e-9, abs_tol=1e-12)
    return float(np.real(val))


def _aw_p_part(n, q, p):
    if n == 0:
        return 1.0
    if n == 1:
        return p
    if n == 2:
        return p * p + 1.0 / (4.0 * q * q)
    raise UnsupportedObservableError(
        f"aw lower symbol covers momentum powers up to 2, got {n}")


def _aw_p_convolved(n, q, p):
    """(1/pi) int_0^inf K0(y) [s(p + y/2q) + s(p - y/2q)] dy, s(p) = p^n.

    The two-quantizer overlap of the aw weight concentrates on the unit
    dilation and leaves this one-dimensional Bessel convolution in the
    momentum slot; evaluated by adaptive quadrature, no moment shortcuts.
    """
    from scipy.special import k0 as bessel_k0

    def integrand(y):
        with np.errstate(over="ignore"):
            shift = y / (2.0 * q)
            return bessel_k0(y) * ((p + shift) ** n + (p - shift) ** n)

    val, _ = adaptive_integrate(integrand, 0.0, math.inf,
                                rel_tol=1e-12, abs_tol=1e-14)
    return float(np.real(val)) / math.pi


def lower_symbol(w, obs, g, method="closed"):
    """Lower symbol of the quantized observable at g = (q, p).

    method="closed": catalog closed forms.  aw: u(q) unchanged, p
    unchanged, p^2 -> p^2 + 1/(4 q^2), qp unchanged.  ACS: constants
    built from the fiducial (q^beta scaled by c_(beta-1) c_(-beta-2)
    / c_(-1), p unchanged, p^2 -> p^2 + c(psi)/q^2, qp scaled by
    c_0 c_(-3) / c_(-1)).

    method="convolution" (aw only): the generic two-quantizer overlap
    route, with the overlap kernel reduced against the aw weight's
    delta structure and the remaining momentum convolution done by
    quadrature.  Powers of q pass through exactly.
    """
    q, p = g.q, g.p
    if method not in ("closed", "convolution"):
        raise ParameterDomainError(f"unknown method {method!r}")
    if method == "convolution" and w.label != "aw":
        raise UnsupportedObservableError(
            "the convolution route is the aw overlap reduction; rank-one "
            "weights go through lower_symbol_trace")
    if w.label == "aw":
        p_part = _aw_p_convolved if method == "convolution" else _aw_p_part
        if obs.kind == "position_fn":
            return float(np.real(obs.u(q)))
        if obs.kind == "momentum_power":
            if obs.n == 0:
                return 1.0
            return p_part(obs.n, q, p)
        if obs.kind == "kinetic":
            return p_part(2, q, p)
        if obs.kind == "dilation":
            if method == "convolution":
                return q * p_part(1, q, p)
            return q * p
        if obs.kind == "monomial_sum":
            total = 0.0
            for coeff, beta, n in obs.terms:
                part = 1.0 if n == 0 else p_part(n, q, p)
                total += coeff * q ** beta * part
            return total
        raise UnsupportedObservableError(
            f"aw lower symbol does not cover kind {obs.kind!r}")

    psi = w.fiducial
    if psi is None:
        raise ConfigurationError(
            "closed lower symbols need an ACS weight carrying its fiducial "
            "or the aw weight; use lower_symbol_trace for other weights")

    def power_factor(beta):
        c = _acs_constants(psi, (beta - 1.0, -beta - 2.0, -1.0))
        return c[beta - 1.0] * c[-beta - 2.0] / c[-1.0]

    if obs.kind == "position_fn":
        # detect pure powers through the same probe as quantization
        from .quantize import _detect_power
        pw = _detect_power(obs.u)
        if pw is None:
            raise UnsupportedObservableError(
                "ACS closed lower symbols cover powers of q; "
                "use lower_symbol_trace for general u")
        beta, scale = pw
        return scale * power_factor(beta) * q ** beta
    if obs.kind == "momentum_power" or obs.kind == "kinetic":
        n = 2 if obs.kind == "kinetic" else obs.n
        if n == 0:
            return 1.0
        if n == 1:
            return p
        if n == 2:
            k_psi = -np.real(
                2.0
                + 4.0 * _omega_beta_deriv(w, 0.0, 1) / _omega_beta_deriv(w, 0.0, 0)
                + _omega_beta_deriv(w, 0.0, 2) / _omega_beta_deriv(w, 0.0, 0))
            c0 = fiducial_constant(psi, 0.0)
            c_psi = _fiducial_deriv_sq_integral(psi) + k_psi * c0
            return p * p + c_psi / (q * q)
        raise UnsupportedObservableError(
            f"ACS lower symbol covers momentum powers up to 2, got {n}")
    if obs.kind == "dilation":
        c = _acs_constants(psi, (0.0, -3.0, -1.0))
        return (c[0.0] * c[-3.0] / c[-1.0]) * q * p
    if obs.kind == "monomial_sum":
        total = 0.0
        for coeff, beta, n in obs.terms:
            if n != 0:
                raise UnsupportedObservableError(
                    "ACS monomial lower symbols cover position powers only; "
                    "use the dedicated kinds for p, p^2, qp")
            total += coeff * power_factor(beta) * q ** beta
        return total
    raise UnsupportedObservableError(
        f"lower symbol does not cover kind {obs.kind!r}")


def _aw_m_matrix(basis, g, n_per=12):
    """Matrix of the aw phase-space operator at g in the Laguerre basis.

    <e_m| M(q,p) |e_n> = 2 q int e_m(q e^u) e_n(q e^-u) e^(2 i q p sinh u) du,
    evaluated on shared panels so the whole matrix is two table products.
    """
    from .representation import basis_table

    alpha, nmax = basis.alpha, basis.n_max
    q, p = g.q, g.p
    x_hi = 8.0 * alpha + 16.0 * math.sqrt(nmax + 1.0) + 40.0
    u_max = math.log(x_hi / q) if x_hi > q else 1.0
    # frequency in u is 2 q p cosh(u) <= 2 q p cosh(u_max)
    freq = 2.0 * q * abs(p) * math.cosh(u_max) + 1.0
    n_panels = max(32, int(math.ceil(u_max * freq / math.pi)) + 8)
    u, wts = _panels(-u_max, u_max, n_panels, n_per)
    x_plus = q * np.exp(u)
    x_minus = q * np.exp(-u)
    tab_p = basis_table(alpha, nmax, x_plus)
    tab_m = basis_table(alpha, nmax, x_minus)
    phase = np.exp(2j * q * p * np.sinh(u)) * wts
    return 2.0 * q * ((tab_p * phase) @ tab_m.T)


def lower_symbol_trace(basis, a_entries, g, fiducial):
    """Rank-one trace route: Tr(A |g; psi><g; psi|) in a truncated basis.

    The phase-space operator of a rank-one weight at g is the projector
    on U(g) psi, so the trace is the expectation <U(g) psi| A |U(g) psi>
    evaluated through basis expansion of the displaced fiducial.
    """
    a = np.asarray(a_entries, dtype=np.complex128)
    if a.shape != (basis.size, basis.size):
        raise ParameterDomainError("operator matrix does not match the basis")
    state = apply_u(g, fiducial)
    coeffs, _ = expand(state, basis)
    value = np.conjugate(coeffs) @ (a @ coeffs)
    return complex(value)


# ---------------------------------------------------------------------------
# Time evolution


def evolve_density(phi0, h_op, times, fiducial, grid, herm_tol=1e-8):
    """rho(q, p, t) = |<g; fiducial| e^(-i H t) |phi0>|^2 / (2 pi c_(-1)).

    H is spectrally decomposed in its truncated basis; phi0 is expanded
    there and the expansion defect is reported in each frame's residuals.
    """
    matrix = h_op.matrix if hasattr(h_op, "matrix") else h_op
    if matrix is None:
        raise ValidityError("evolution needs an operator with a matrix")
    asym = matrix.asymmetry()
    if asym > herm_tol:
        raise ValidityError(
            f"hamiltonian matrix asymmetry {asym:.3e} exceeds {herm_tol:g}")
    basis = matrix.basis
    sym = 0.5 * (matrix.entries + matrix.entries.conj().T)
    evals, evecs = eigh(sym)
    coeffs, defect = expand(phi0, basis)
    c_m1 = admissibility_constant(fiducial)
    modes = evecs.conj().T @ coeffs
    frames = []
    for t in times:
        ct = evecs @ (np.exp(-1j * evals * float(t)) * modes)
        state = basis_wavefunction_from(basis, ct, label=f"{phi0.label}@t={t:g}")
        wvals = acs_transform_grid(state, fiducial, grid)
        dens = np.abs(wvals) ** 2 / (TWO_PI * c_m1)
        frames.append(QuasiDistribution(
            grid, dens, "acs_density", label=state.label,
            residuals={"expansion_defect": float(abs(defect)),
                       "time": float(t)}))
    return frames


def basis_wavefunction_from(basis, coeffs, label=""):
    wf = WaveFunction(coeffs=np.asarray(coeffs, dtype=np.complex128),
                      basis=basis, decay="exponential", label=label)
    return wf


# ---------------------------------------------------------------------------
# Fubini-Study metric


def fubini_study(fiducial):
    """Metric data of the coherent-state family of a fiducial state.

    Returns c_m3 = int psi^2 x dx, c_m4 = int psi^2 x^2 dx,
    L = int x^2 (psi')^2 dx - 1/4, and the metric coefficient map
    (q, p) -> {"dp2": 2 (c_m4 - c_m3^2) q^2, "dq2": 2 L / q^2}.
    """
    c_m3 = fiducial_constant(fiducial, -3.0)
    c_m4 = fiducial_constant(fiducial, -4.0)
    big_l = _fiducial_deriv_sq_integral(fiducial, x_weight=2.0) - 0.25

    def metric(q, p):
        if q <= 0.0:
            raise ParameterDomainError(f"q must be positive, got {q}")
        return {"dp2": 2.0 * (c_m4 - c_m3 ** 2) * q * q,
                "dq2": 2.0 * big_l / (q * q)}

    return {"c_m3": c_m3, "c_m4": c_m4, "L": big_l, "metric": metric}

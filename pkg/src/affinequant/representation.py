"""The unitary representation of the affine group on the half-line.

Provides the Laguerre-type orthonormal basis e_n(x), wave functions (either
callables on x > 0 or coefficient vectors in a basis), the pointwise action
of U(q, p), closed-form matrix elements and their assembly, regularized
traces, the non-unimodularity multiplication operator, and coherent states.

Matrix elements are evaluated through a Jacobi-polynomial closed form with
all factorial ratios kept in log space.  Entries with row index above the
column index use the analytically reduced twin of that form (obtained from
the Jacobi symmetry identity), never the adjoint relation, so unitarity
remains a nontrivial numerical check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

from . import _kernels
from .errors import (AccuracyError, AdmissibilityError, DivergenceError,
                     ParameterDomainError)
from .quadrature import adaptive_integrate, legendre_panel_rule

__all__ = [
    "BasisSpec",
    "WaveFunction",
    "OperatorMatrix",
    "basis_eval",
    "basis_table",
    "basis_wavefunction",
    "apply_u",
    "matrix_element",
    "matrix_u",
    "trace_u",
    "trace_u_closed",
    "trace_u_series_limit",
    "homomorphism_defect",
    "duflo_moore_apply",
    "fiducial_constant",
    "admissibility_constant",
    "inner",
    "make_acs",
    "laguerre_ground",
    "expand",
]


@dataclass(frozen=True)
class BasisSpec:
    """Basis parameters: exponent alpha > 0 and truncation degree n_max."""

    alpha: float
    n_max: int

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise ParameterDomainError(f"alpha must be positive, got {self.alpha}")
        if self.n_max < 1:
            raise ParameterDomainError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def size(self):
        return self.n_max + 1


@dataclass
class WaveFunction:
    """Square-integrable function on the positive half-line.

    Exactly one of ``func`` (callable, vectorized over x) or
    ``coeffs``/``basis`` (expansion in the orthonormal basis) is set.
    Calls evaluate to 0 for x <= 0: every state lives on x > 0 and is
    extended by zero, which downstream Fourier-type formulas rely on.

    ``decay`` is a coarse decay class ("gaussian", "exponential",
    "power") used to size finite quadrature windows.
    """

    func: Callable | None = None
    coeffs: np.ndarray | None = None
    basis: BasisSpec | None = None
    decay: str = "exponential"
    label: str = ""
    is_real: bool = False
    _norm: float | None = field(default=None, repr=False)
    _cut: float | None = field(default=None, repr=False)
    _c_m1: float | None = field(default=None, repr=False)

    def __post_init__(self):
        if (self.func is None) == (self.coeffs is None):
            raise ParameterDomainError(
                "exactly one of func or coeffs must be provided")
        if self.coeffs is not None:
            if self.basis is None:
                raise ParameterDomainError("coefficient form requires a basis")
            self.coeffs = np.asarray(self.coeffs, dtype=np.complex128)
            if self.coeffs.shape != (self.basis.size,):
                raise ParameterDomainError(
                    f"need {self.basis.size} coefficients, got {self.coeffs.shape}")
            if np.max(np.abs(self.coeffs.imag)) == 0.0:
                self.is_real = True

    def __call__(self, x):
        scalar = np.isscalar(x)
        xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
        pos = xa > 0.0
        out = np.zeros(xa.shape, dtype=np.complex128)
        if np.any(pos):
            xp = np.ascontiguousarray(xa[pos])
            if self.func is not None:
                out[pos] = self.func(xp)
            else:
                tab = basis_table(self.basis.alpha, self.basis.n_max, xp)
                out[pos] = self.coeffs @ tab
        if self.is_real:
            out = out.real
        return out[0] if scalar else out

    def norm(self):
        """Cached L2 norm on (0, inf)."""
        if self._norm is None:
            if self.coeffs is not None:
                self._norm = float(np.linalg.norm(self.coeffs))
            else:
                val, _ = adaptive_integrate(
                    lambda x: np.abs(self(x)) ** 2, 0.0, math.inf)
                self._norm = math.sqrt(val)
        return self._norm

    def support_cut(self, eps=1e-13):
        """x beyond which |psi| is below eps times its peak (probed)."""
        if self._cut is None:
            xs = np.geomspace(1e-3, 1e4, 600)
            vals = np.abs(self(xs))
            peak = float(np.max(vals))
            if peak == 0.0:
                self._cut = 1.0
            else:
                above = np.nonzero(vals > eps * peak)[0]
                self._cut = float(xs[above[-1]]) if len(above) else 1.0
        return self._cut


@dataclass
class OperatorMatrix:
    """Truncated matrix of an operator in a BasisSpec."""

    basis: BasisSpec
    entries: np.ndarray
    hermitian: bool | None = None
    trunc_estimate: float | None = None

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.complex128)
        n = self.basis.size
        if self.entries.shape != (n, n):
            raise ParameterDomainError(
                f"entries must be {n}x{n}, got {self.entries.shape}")
        if not np.all(np.isfinite(self.entries.view(np.float64))):
            raise ParameterDomainError("entries must be finite")

    def border_norm(self):
        """Frobenius norm of the last row and column (truncation border)."""
        e = self.entries
        corner = abs(e[-1, -1]) ** 2
        return math.sqrt(np.sum(np.abs(e[-1, :]) ** 2)
                         + np.sum(np.abs(e[:, -1]) ** 2) - corner)

    def asymmetry(self):
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def _log_norm(alpha, n):
    return 0.5 * (gammaln(n + 1.0) - gammaln(n + alpha + 1.0))


def basis_table(alpha, nmax, x):
    """Values e_n(x) for n = 0..nmax on an array of positive x."""
    x = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    lag = _kernels.laguerre_table(alpha, nmax, x)
    n = np.arange(nmax + 1)
    lognorm = _log_norm(alpha, n)
    envelope = np.exp(-0.5 * x + 0.5 * alpha * np.log(x))
    return np.exp(lognorm)[:, None] * lag * envelope[None, :]


def basis_eval(alpha, n, x):
    """Single basis function e_n(x); vectorized over x, zero for x <= 0."""
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros(xa.shape, dtype=np.float64)
    pos = xa > 0.0
    if np.any(pos):
        out[pos] = basis_table(alpha, n, xa[pos])[n]
    return float(out[0]) if scalar else out


def basis_wavefunction(alpha, n, n_max=None):
    """e_n as a WaveFunction (coefficient form)."""
    n_max = max(n, 1) if n_max is None else n_max
    basis = BasisSpec(alpha, n_max)
    coeffs = np.zeros(basis.size)
    coeffs[n] = 1.0
    return WaveFunction(coeffs=coeffs, basis=basis, decay="exponential",
                        label=f"e_{n}^({alpha})", is_real=True)


def laguerre_ground(alpha):
    """The ground basis function e_0 for a given alpha, as a callable state."""
    lognorm = -0.5 * gammaln(alpha + 1.0)

    def f(x):
        return np.exp(lognorm - 0.5 * x + 0.5 * alpha * np.log(x))

    wf = WaveFunction(func=f, decay="exponential",
                      label=f"e_0^({alpha})", is_real=True)
    wf._norm = 1.0
    return wf


def inner(phi, psi):
    """Inner product <phi|psi> = int conj(phi) psi dx on (0, inf)."""
    val, _ = adaptive_integrate(
        lambda x: np.conjugate(phi(x)) * psi(x), 0.0, math.inf)
    return complex(val)


def apply_u(g, psi):
    """Pointwise action (U(q,p) psi)(x) = e^(ipx) psi(x/q)/sqrt(q)."""
    q, p = g.q, g.p
    rq = math.sqrt(q)

    def f(x, _psi=psi, _q=q, _p=p, _rq=rq):
        return np.exp(1j * _p * x) * _psi(np.asarray(x) / _q) / _rq

    out = WaveFunction(func=f, decay=psi.decay,
                       label=f"U({q:g},{p:g}) {psi.label}".strip(),
                       is_real=(psi.is_real and p == 0.0))
    out._norm = psi._norm
    if psi._cut is not None:
        out._cut = psi._cut * q
    return out


def _geometry(alpha, q, p):
    im = 2.0 * q * p
    rp = math.hypot(q + 1.0, im)
    rm = math.hypot(q - 1.0, im)
    tp = math.atan2(im, q + 1.0)
    tm = math.atan2(im, q - 1.0)
    y = 1.0 - 2.0 * (rm / rp) ** 2
    base = (alpha + 1.0) * (math.log(2.0) + 0.5 * math.log(q) - math.log(rp))
    return rp, rm, tp, tm, y, base


def matrix_element(basis, m, n, g):
    """Closed-form matrix element U_mn(q, p) in the basis e_n."""
    if m < 0 or n < 0:
        raise ParameterDomainError("indices must be nonnegative")
    alpha = basis.alpha
    rp, rm, tp, tm, y, base = _geometry(alpha, g.q, g.p)
    if rm == 0.0:
        return 1.0 + 0.0j if m == n else 0.0 + 0.0j
    small, big = (m, n) if m <= n else (n, m)
    d = big - small
    jac = _kernels.jacobi_seq(float(d), alpha, y, small)[small]
    half = 0.5 * (gammaln(big + alpha + 1.0) - gammaln(small + alpha + 1.0)
                  + gammaln(small + 1.0) - gammaln(big + 1.0))
    logmag = base + half + d * (math.log(rm) - math.log(rp)) if d else base + half
    if m <= n:
        phase = -d * tm + (m + n + alpha + 1.0) * tp
    else:
        phase = d * tm + (m + n + alpha + 1.0) * tp + math.pi * d
    return complex(math.exp(logmag) * jac * math.cos(phase),
                   math.exp(logmag) * jac * math.sin(phase))


def matrix_u(basis, g):
    """Full truncated matrix of U(g) with a border truncation estimate."""
    entries = _kernels.u_matrix(basis.alpha, basis.n_max, g.q, g.p)
    out = OperatorMatrix(basis, entries, hermitian=None)
    out.trunc_estimate = out.border_norm()
    return out


def trace_u_closed(g):
    """Regularized trace closed form sqrt(q)/|q - 1| (p-independent)."""
    if g.q == 1.0:
        raise DivergenceError("trace diverges at q = 1")
    return math.sqrt(g.q) / abs(g.q - 1.0)


def trace_u_series_limit(basis, g):
    """Exact limit of the basis-diagonal trace series at exponent alpha.

    The diagonal series sum_m U_mm(g) converges (Abel and pointwise) to

        sqrt(q)/|q - 1| * max(q, 1/q)^(-alpha/2),

    not to the kernel-trace value sqrt(q)/|q - 1| itself.  The dilation
    part of U(g) pins its fixed point at the half-line edge x = 0, where
    every basis function vanishes like x^(alpha/2); the boundary mass of
    the formal trace kernel is therefore seen with a q-dependent deficit
    that only disappears as alpha -> 0+.  Derived from the Jacobi
    generating function evaluated on the unit circle; cross-checked
    against raw partial sums.
    """
    if g.q == 1.0:
        raise DivergenceError("trace diverges at q = 1")
    q = g.q
    return (math.sqrt(q) / abs(q - 1.0)) * max(q, 1.0 / q) ** (-0.5 * basis.alpha)


def homomorphism_defect(basis, g1, g2, window=10):
    """Frobenius defect of U(g1)U(g2) - U(g1 g2) on a fixed leading block.

    The product is formed at the working size ``basis.n_max`` and the
    difference is measured on rows/columns 0..window.  Measuring on the
    full working block would never converge: the border rows of any
    truncation leak outside it by an amount that does not shrink with
    ``n_max``.  On a fixed window the defect decays geometrically in
    ``n_max``.
    """
    if window > basis.n_max:
        raise ParameterDomainError("window exceeds the working size")
    from .affine_group import compose
    u1 = matrix_u(basis, g1).entries
    u2 = matrix_u(basis, g2).entries
    u12 = matrix_u(basis, compose(g1, g2)).entries
    block = (u1 @ u2 - u12)[: window + 1, : window + 1]
    return float(np.linalg.norm(block))


def _abel_sum(alpha, g, t):
    """sum_m t^m U_mm(g), truncated where the geometric factor dies."""
    mmax = int(math.ceil(-36.0 / math.log(t))) + 8
    diag = _kernels.u_diag(alpha, mmax, g.q, g.p)
    weights = np.power(t, np.arange(mmax + 1, dtype=np.float64))
    return complex(np.sum(weights * diag))


def _neville_to_zero(xs, ys):
    """Polynomial extrapolation of (xs, ys) to x = 0; returns value, spread."""
    tab = list(ys)
    m = len(tab)
    for k in range(1, m):
        for j in range(m - k):
            tab[j] = tab[j + 1] + (tab[j + 1] - tab[j]) * xs[j + k] / (
                xs[j] - xs[j + k])
    spread = abs(tab[0] - tab[1]) if m > 1 else math.inf
    return tab[0], spread


def trace_u(basis, g, summation="abel", t_grid=(0.9, 0.99, 0.999),
            tol=1e-5, full_output=False):
    """Regularized trace sum_m U_mm(g).

    ``summation="abel"``: geometric damping t^m with polynomial
    extrapolation of the t-grid to t = 1; the grid is refined toward 1
    when the extrapolation spread misses ``tol``.  ``summation="direct"``:
    raw partial sums accelerated with the epsilon algorithm (cross-check
    route; slow convergence).
    """
    if g.q == 1.0:
        raise DivergenceError("trace diverges at q = 1 (pole of sqrt(q)/|q-1|)")
    alpha = basis.alpha
    if summation == "direct":
        from .quadrature import _wynn_epsilon
        mmax = 20000
        diag = _kernels.u_diag(alpha, mmax, g.q, g.p)
        partial = np.cumsum(diag)
        samples = list(partial[200::400])
        val, err = _wynn_epsilon(samples)
        if full_output:
            return {"value": val, "error_estimate": err, "terms": mmax + 1}
        return val
    if summation != "abel":
        raise ParameterDomainError(f"unknown summation {summation!r}")

    ts = list(t_grid)
    sums = [_abel_sum(alpha, g, t) for t in ts]
    val, spread = _neville_to_zero([1.0 - t for t in ts], list(sums))
    attempts = 0
    while spread > tol and attempts < 3:
        ts.append(1.0 - (1.0 - ts[-1]) / 10.0)
        sums.append(_abel_sum(alpha, g, ts[-1]))
        val, spread = _neville_to_zero([1.0 - t for t in ts], list(sums))
        attempts += 1
    if spread > tol:
        raise AccuracyError("Abel extrapolation did not settle",
                            estimate=val, error_estimate=spread)
    if full_output:
        return {"value": val, "error_estimate": spread,
                "t_grid": tuple(ts), "partial": sums}
    return val


def fiducial_constant(psi, gamma):
    """c_gamma = int |psi(x)|^2 x^(-(2+gamma)) dx with divergence detection.

    The small-x behavior is probed on a decade grid first; an estimated
    local power <= -1 means the integral diverges at the origin and a
    DivergenceError is raised naming gamma.
    """
    def integrand(x):
        return np.abs(psi(x)) ** 2 * np.power(x, -(2.0 + gamma))

    probes = np.geomspace(1e-7, 1e-3, 9)
    vals = integrand(probes)
    if np.all(vals > 0.0):
        slope = np.polyfit(np.log(probes), np.log(vals), 1)[0]
        if slope <= -1.0 + 1e-9:
            raise DivergenceError(
                f"c_gamma diverges at the origin for gamma={gamma} "
                f"(local power {slope:.3f})")
    head, _ = adaptive_integrate(integrand, 0.0, 1.0)
    tail, _ = adaptive_integrate(integrand, 1.0, math.inf)
    return float(np.real(head + tail))


def admissibility_constant(psi):
    """c_(-1) = int |psi|^2 / x dx; finite iff psi is admissible (cached)."""
    if psi._c_m1 is None:
        psi._c_m1 = fiducial_constant(psi, -1.0)
    return psi._c_m1


def duflo_moore_apply(power, psi):
    """Multiplication by (2 pi / x)^(power/2); power=1 is the standard
    non-unimodularity compensator, power=-1 its inverse."""
    if power == 0:
        return psi

    def f(x, _psi=psi, _power=power):
        return np.power(2.0 * math.pi / np.asarray(x, dtype=np.float64),
                        0.5 * _power) * _psi(x)

    try:
        nsq = (2.0 * math.pi) ** power * fiducial_constant(psi, power - 2.0)
    except DivergenceError as exc:
        raise AdmissibilityError(
            f"result of power={power} leaves L2: {exc}") from exc
    out = WaveFunction(func=f, decay=psi.decay, is_real=psi.is_real,
                       label=f"C^{power} {psi.label}".strip())
    out._norm = math.sqrt(nsq)
    return out


def make_acs(g, fiducial):
    """Coherent state U(q,p)|psi> after an admissibility check."""
    try:
        admissibility_constant(fiducial)
    except DivergenceError as exc:
        raise AdmissibilityError(f"fiducial is not admissible: {exc}") from exc
    out = apply_u(g, fiducial)
    out.label = f"|{g.q:g},{g.p:g}; {fiducial.label}>"
    return out


def expand(phi, basis, n_panels=48, nodes_per_panel=16):
    """Coefficients of phi in the basis by fixed-panel quadrature.

    Returns (coeffs, defect) where defect = norm(phi)^2 - sum |c_n|^2 is
    the squared projection residual (reported, not raised).
    """
    hi = max(phi.support_cut(), 8.0 * basis.alpha + 16.0 * basis.n_max ** 0.5)
    x, w = legendre_panel_rule(0.0, hi, n_panels, nodes_per_panel)
    tab = basis_table(basis.alpha, basis.n_max, x)
    phix = phi(x)
    coeffs = tab @ (w * phix)
    defect = phi.norm() ** 2 - float(np.sum(np.abs(coeffs) ** 2))
    return coeffs, defect

"""Weight functions on the half-plane and their derived constants.

A weight is a function w(q, p) on {q > 0} together with its partial
Fourier transform in p.  The transform of several important weights is
distributional, so the Fourier data carries an explicit atom list next
to the smooth part; the two are integrated by different means
everywhere downstream (atoms exactly, smooth parts by quadrature).

Conventions used throughout:

    fourier(q, x)  = (1/sqrt(2 pi)) int e^(-i p x) w(q, p) dp
    Omega_beta(u)  = int_0^inf q^(-beta-1) fourier(u, -q) dq
    d_beta         = Omega_beta(1),    c_M = sqrt(2 pi) d_0

The symmetry requirement w(q, p) = (1/q) conj(w(1/q, -q p)) makes the
associated operator symmetric; ``check_symmetry`` measures its residual
on sample points.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.special import gammaln

from . import _kernels
from .affine_group import GroupElement
from .errors import (
    AccuracyError,
    AdmissibilityError,
    ConfigurationError,
    DivergenceError,
    ParameterDomainError,
)
from .quadrature import (
    QuadSpec,
    adaptive_integrate,
    gauss_laguerre_rule,
    integrate_oscillatory,
    principal_value,
)
from .representation import (
    BasisSpec,
    WaveFunction,
    admissibility_constant,
    basis_eval,
    basis_table,
    fiducial_constant,
    laguerre_ground,
    matrix_u,
)
from .specfun import bessel_scaled

__all__ = [
    "Atom",
    "FourierWeight",
    "Weight",
    "WeightConstants",
    "SymmetryReport",
    "PartialFourierResult",
    "TraceConditionResult",
    "check_symmetry",
    "partial_fourier",
    "compute_constants",
    "trace_condition",
    "builtin",
    "from_config",
    "thermal_series_eval",
    "thermal_bessel_constant",
    "laguerre_poisson_sum",
    "laguerre_poisson_closed",
]

TWO_PI = 2.0 * math.pi
ROOT_TWO_PI = math.sqrt(TWO_PI)


@dataclass(frozen=True)
class Atom:
    """Delta contribution to a partial Fourier transform.

    ``location`` maps q to the atom position x_j(q); ``amplitude`` maps q
    to its complex weight, i.e. the term amplitude(q) * delta(x - x_j(q)).
    """

    location: Callable[[float], float]
    amplitude: Callable[[float], complex]


@dataclass(frozen=True)
class FourierWeight:
    """Partial Fourier transform: optional smooth part plus atoms."""

    smooth: Callable[[float, float], complex] | None = None
    atoms: tuple[Atom, ...] = ()

    def validate(self, q_probe=(0.5, 1.0, 2.0)):
        for atom in self.atoms:
            for q in q_probe:
                loc, amp = atom.location(q), atom.amplitude(q)
                if not (np.isfinite(loc) and np.isfinite(complex(amp))):
                    raise ParameterDomainError(
                        f"atom data not finite at q={q}")
        return self


@dataclass
class Weight:
    """Weight function on the half-plane with its Fourier data.

    The three closed-form hooks are optional registrations used by the
    constant machinery (and by operator construction, which needs exact
    high-order derivatives):

    - ``omega_beta_closed(beta, u)``: Omega_beta(u);
    - ``omega_beta_derivs_closed(beta, k)``: d^k/du^k Omega_beta(u) at u=1;
    - ``d_beta_closed(beta)``: Omega_beta(1), raising DivergenceError for
      beta outside the convergence range.

    Unregistered entries fall back to quadrature / finite differences.
    """

    eval: Callable[[float, float], complex]
    fourier: FourierWeight
    label: str
    omega_beta_closed: Callable[[float, float], complex] | None = field(
        default=None, repr=False)
    omega_beta_derivs_closed: Callable[[float, int], complex] | None = field(
        default=None, repr=False)
    d_beta_closed: Callable[[float], complex] | None = field(
        default=None, repr=False)
    fiducial: object | None = field(default=None, repr=False)


@dataclass
class WeightConstants:
    """Derived constants of a weight; callables plus cached request values."""

    omega: Callable[[float], complex]
    omega_beta: Callable[[float, float], complex]
    d_beta: Callable[[float], complex]
    c_M: float
    omega_deriv1: complex
    omega_deriv2: complex
    d_values: dict
    divergence: dict
    u_grid: np.ndarray | None = None
    omega_on_grid: np.ndarray | None = None


@dataclass(frozen=True)
class SymmetryReport:
    passed: bool
    max_residual: float
    tol: float
    worst: GroupElement


@dataclass(frozen=True)
class PartialFourierResult:
    """Smooth value at (q, x) plus the atom list evaluated at q."""

    smooth_value: complex
    atoms: tuple  # pairs (location, amplitude) at this q


@dataclass(frozen=True)
class TraceConditionResult:
    """Both trace routes and their mutual discrepancy."""

    fourier_route: complex
    principal_route: complex
    discrepancy: float


def check_symmetry(w, samples, tol=1e-10):
    """Max residual of w(q,p) - (1/q) conj(w(1/q, -q p)) over samples."""
    worst = None
    worst_res = -1.0
    for g in samples:
        lhs = complex(w.eval(g.q, g.p))
        rhs = complex(np.conjugate(w.eval(1.0 / g.q, -g.q * g.p))) / g.q
        res = abs(lhs - rhs)
        if res > worst_res:
            worst_res, worst = res, g
    return SymmetryReport(passed=worst_res <= tol, max_residual=worst_res,
                          tol=tol, worst=worst)


def partial_fourier(w, q, x):
    """Partial Fourier transform of w at (q, x): smooth value + atoms.

    Uses the registered smooth closed form when present; otherwise the
    p-integral (1/sqrt(2 pi)) int e^(-i p x) w(q, p) dp is evaluated
    numerically as two oscillatory half-line integrals.
    """
    if q <= 0.0:
        raise ParameterDomainError(f"q must be positive, got {q}")
    atoms = tuple((a.location(q), complex(a.amplitude(q)))
                  for a in w.fourier.atoms)
    if w.fourier.smooth is not None:
        return PartialFourierResult(complex(w.fourier.smooth(q, x)), atoms)
    if w.fourier.atoms:
        # Atomic transform with no smooth part registered: nothing to
        # integrate numerically (the atoms already carry everything).
        return PartialFourierResult(0.0 + 0.0j, atoms)
    spec = QuadSpec(lo=0.0, hi=math.inf, freq_hint=abs(x))
    pos = integrate_oscillatory(
        lambda p: w.eval(q, p) / ROOT_TWO_PI,
        (lambda p: -x * p) if x != 0.0 else None, spec)
    neg = integrate_oscillatory(
        lambda p: w.eval(q, -p) / ROOT_TWO_PI,
        (lambda p: x * p) if x != 0.0 else None, spec)
    return PartialFourierResult(complex(pos + neg), atoms)


def _fourier_at(w, u, mx):
    """fourier(u, -mx) with atoms folded in as exact point masses later."""
    if w.fourier.smooth is not None:
        return complex(w.fourier.smooth(u, -mx))
    return partial_fourier(w, u, -mx).smooth_value


def _atom_moment(w, beta, u):
    """Exact atom contribution to Omega_beta(u)."""
    total = 0.0 + 0.0j
    for a in w.fourier.atoms:
        loc = a.location(u)
        if loc < 0.0:
            total += complex(a.amplitude(u)) * abs(loc) ** (-beta - 1.0)
    return total


def _tail_power(f, xs):
    """Estimated local power of |f| across a decade grid (log-log slope)."""
    vals = np.array([abs(f(x)) for x in xs])
    good = vals > 0.0
    if np.count_nonzero(good) < 2:
        return None
    lx, lv = np.log(np.asarray(xs)[good]), np.log(vals[good])
    return float(np.polyfit(lx, lv, 1)[0])


def _omega_beta_numeric(w, beta, u):
    """Omega_beta(u) by quadrature on the smooth part plus exact atoms."""
    total = _atom_moment(w, beta, u)
    if w.fourier.smooth is None and not w.fourier.atoms:
        raise ConfigurationError(
            "weight has neither smooth Fourier data nor atoms; register "
            "a Fourier form before computing constants")
    if w.fourier.smooth is not None:
        def integrand(q):
            return w.fourier.smooth(u, -q) * q ** (-beta - 1.0)
        # Convergence pre-flight at the origin: local power must be > -1.
        power = _tail_power(integrand, np.geomspace(1e-7, 1e-3, 5))
        if power is not None and power <= -1.0 + 1e-9:
            raise DivergenceError(
                f"Omega integrand diverges at q=0 (power {power:.3f}) "
                f"for beta={beta}")
        val, _ = adaptive_integrate(integrand, 0.0, math.inf,
                                    rel_tol=1e-10, abs_tol=1e-13)
        total += val
    return total


def compute_constants(w, betas=(-1.0, 0.0, 1.0), u_grid=None):
    """Derived constants of a weight: Omega, Omega_beta, d_beta, c_M.

    Atoms are integrated exactly; smooth parts go through adaptive
    quadrature with a divergence pre-flight.  Divergent requested betas
    land in the ``divergence`` report instead of aborting the rest.
    Omega'(1) and Omega''(1) come from registered closed forms when
    available, else from 5-point central differences with step 1e-3.
    """
    def omega_beta(beta, u):
        if w.omega_beta_closed is not None:
            return w.omega_beta_closed(beta, u)
        return _omega_beta_numeric(w, beta, u)

    def omega(u):
        return omega_beta(0.0, u)

    def d_beta(beta):
        if w.d_beta_closed is not None:
            return w.d_beta_closed(beta)
        return omega_beta(beta, 1.0)

    d_values, divergence = {}, {}
    for beta in betas:
        try:
            d_values[beta] = d_beta(beta)
        except DivergenceError as exc:
            divergence[beta] = str(exc)
    try:
        d0 = d_beta(0.0)
    except DivergenceError as exc:
        raise DivergenceError(f"d_0 diverges; no resolution constant: {exc}")
    c_m = ROOT_TWO_PI * complex(d0).real

    if w.omega_beta_derivs_closed is not None:
        der1 = w.omega_beta_derivs_closed(0.0, 1)
        der2 = w.omega_beta_derivs_closed(0.0, 2)
    else:
        h = 1e-3
        f = [omega(1.0 + k * h) for k in (-2, -1, 0, 1, 2)]
        der1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
        der2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (
            12.0 * h * h)

    grid = vals = None
    if u_grid is not None:
        grid = np.asarray(u_grid, dtype=np.float64)
        vals = np.array([omega(u) for u in grid])
    return WeightConstants(omega=omega, omega_beta=omega_beta, d_beta=d_beta,
                           c_M=c_m, omega_deriv1=der1, omega_deriv2=der2,
                           d_values=d_values, divergence=divergence,
                           u_grid=grid, omega_on_grid=vals)


def trace_condition(w):
    """Trace of the weight's operator by both available routes.

    Route 1 integrates the Fourier data on the diagonal:
    (1/sqrt(2 pi)) [ int_0^inf fourier(1, -x) dx + sum of atoms at
    negative locations ].  Route 2 works directly on w(1, .):
    w(1, 0)/2 + (i/2 pi) p.v. int w(1, p)/p dp.  Returns both values
    and their discrepancy.
    """
    total = _atom_moment(w, -1.0, 1.0)  # beta = -1 gives plain amplitudes
    if w.fourier.smooth is not None:
        f = lambda x: w.fourier.smooth(1.0, -x)
        power = _tail_power(f, np.geomspace(1e-7, 1e-3, 5))
        if power is not None and power <= -1.0 + 1e-9:
            raise DivergenceError(
                f"diagonal Fourier data diverges at x=0 (power {power:.3f})")
        val, _ = adaptive_integrate(f, 0.0, math.inf,
                                    rel_tol=1e-10, abs_tol=1e-13)
        total += val
    fourier_route = total / ROOT_TWO_PI

    pv = principal_value(lambda p: w.eval(1.0, p) / p, 0.0,
                         QuadSpec(lo=-math.inf, hi=math.inf))
    principal_route = 0.5 * complex(w.eval(1.0, 0.0)) + (1j / TWO_PI) * pv
    return TraceConditionResult(
        fourier_route=complex(fourier_route),
        principal_route=complex(principal_route),
        discrepancy=abs(complex(fourier_route) - complex(principal_route)))


# ---------------------------------------------------------------------------
# Builtin weights


def _falling(c, k):
    out = 1.0
    for j in range(k):
        out *= c - j
    return out


def _gen_binom(a, j):
    out = 1.0
    for i in range(j):
        out *= (a - i) / (i + 1.0)
    return out


def _power_product_derivs(a, b, k):
    """d^k/du^k [ u^a (u+1)^b ] at u = 1, as an exact finite sum."""
    total = 0.0
    for j in range(k + 1):
        total += _gen_binom(a, j) * _gen_binom(b, k - j) * 2.0 ** (j - k)
    return 2.0 ** b * math.factorial(k) * total


def _builtin_aw():
    """Affine Weyl-type weight e^(-i sqrt(q) p)/sqrt(q); purely atomic."""
    def ev(q, p):
        return cmath.exp(-1j * math.sqrt(q) * p) / math.sqrt(q)

    atom = Atom(location=lambda q: -math.sqrt(q),
                amplitude=lambda q: ROOT_TWO_PI / math.sqrt(q))

    def omega_beta(beta, u):
        return ROOT_TWO_PI * u ** (-1.0 - 0.5 * beta)

    def omega_derivs(beta, k):
        return ROOT_TWO_PI * _falling(-1.0 - 0.5 * beta, k)

    return Weight(eval=ev,
                  fourier=FourierWeight(smooth=None, atoms=(atom,)).validate(),
                  label="aw",
                  omega_beta_closed=omega_beta,
                  omega_beta_derivs_closed=omega_derivs,
                  d_beta_closed=lambda beta: ROOT_TWO_PI)


def _acs_fourier(psi):
    """Smooth Fourier part of an ACS weight: sqrt(2 pi) psi(-v) conj(psi(-v/u))/u."""
    def smooth(u, v):
        if v >= 0.0:
            return 0.0 + 0.0j
        return ROOT_TWO_PI / u * complex(psi(-v)) * np.conjugate(psi(-v / u))
    return FourierWeight(smooth=smooth, atoms=())


def _builtin_acs_ground(alpha):
    """ACS weight of the ground basis state: everything in closed form."""
    lgnorm = gammaln(alpha + 1.0)

    def ev(q, p):
        z = q + 1.0 + 2j * q * p
        return 2.0 ** (alpha + 1.0) * q ** (0.5 * alpha) * z ** (-(alpha + 1.0))

    def omega_beta(beta, u):
        if beta >= alpha:
            raise DivergenceError(
                f"Omega_beta diverges for beta={beta} >= alpha={alpha}")
        c = ROOT_TWO_PI * math.exp(gammaln(alpha - beta) - lgnorm)
        return (c * 2.0 ** (alpha - beta) * u ** (0.5 * alpha - beta - 1.0)
                * (u + 1.0) ** (beta - alpha))

    def omega_derivs(beta, k):
        if beta >= alpha:
            raise DivergenceError(
                f"Omega_beta diverges for beta={beta} >= alpha={alpha}")
        c = ROOT_TWO_PI * math.exp(gammaln(alpha - beta) - lgnorm)
        return c * 2.0 ** (alpha - beta) * _power_product_derivs(
            0.5 * alpha - beta - 1.0, beta - alpha, k)

    def d_beta(beta):
        if beta >= alpha:
            raise DivergenceError(
                f"d_beta diverges for beta={beta} >= alpha={alpha}")
        return ROOT_TWO_PI * math.exp(gammaln(alpha - beta) - lgnorm)

    ground = laguerre_ground(alpha)
    return Weight(eval=ev, fourier=_acs_fourier(ground),
                  label=f"acs(e_0^({alpha}))",
                  omega_beta_closed=omega_beta,
                  omega_beta_derivs_closed=omega_derivs,
                  d_beta_closed=d_beta,
                  fiducial=ground)


def _is_ground_coeffs(psi):
    return (psi.coeffs is not None and abs(abs(psi.coeffs[0]) - 1.0) < 1e-12
            and np.all(np.abs(psi.coeffs[1:]) < 1e-15))


def _builtin_acs(fiducial):
    """ACS weight of an admissible fiducial state.

    Coefficient states evaluate exactly through the closed matrix
    elements; callable states go through oscillatory quadrature.
    """
    try:
        admissibility_constant(fiducial)
    except DivergenceError as exc:
        raise AdmissibilityError(f"fiducial is not admissible: {exc}")

    if _is_ground_coeffs(fiducial):
        return _builtin_acs_ground(fiducial.basis.alpha)

    if fiducial.coeffs is not None:
        coeffs, basis = fiducial.coeffs, fiducial.basis

        def ev(q, p):
            u = matrix_u(basis, GroupElement(q, -p)).entries
            return complex(coeffs @ (u @ np.conjugate(coeffs))) / math.sqrt(q)
    else:
        def ev(q, p):
            def env(y):
                return fiducial(y) * np.conjugate(fiducial(y / q)) / q
            spec = QuadSpec(lo=0.0, hi=math.inf, freq_hint=abs(p))
            return complex(integrate_oscillatory(
                env, (lambda y: -p * y) if p != 0.0 else None, spec))

    def d_beta(beta):
        return ROOT_TWO_PI * fiducial_constant(fiducial, beta - 1.0)

    label = fiducial.label or "fiducial"
    return Weight(eval=ev, fourier=_acs_fourier(fiducial),
                  label=f"acs({label})", d_beta_closed=d_beta,
                  fiducial=fiducial)


def _builtin_diag(alpha, m, s):
    """Rank-one diagonal-state weight at scale s: conj(U_mm(q, s p))/sqrt(q)."""
    if m < 0:
        raise ParameterDomainError(f"m must be >= 0, got {m}")
    if s <= 0.0:
        raise ParameterDomainError(f"s must be positive, got {s}")

    def ev(q, p):
        return complex(np.conjugate(
            _kernels.u_diag(alpha, m, q, s * p)[m])) / math.sqrt(q)

    def smooth(u, x):
        if x >= 0.0:
            return 0.0 + 0.0j
        return (ROOT_TWO_PI / (s * u) * basis_eval(alpha, m, -x / s)
                * basis_eval(alpha, m, -x / (s * u)))

    def d_beta(beta):
        if beta >= alpha:
            raise DivergenceError(
                f"d_beta diverges for beta={beta} >= alpha={alpha}")
        # int e_m(w)^2 w^(-beta-1) dw is a polynomial integral against
        # the w^(alpha-beta-1) e^(-w) measure: exact at m+1 nodes.
        nodes, wts = gauss_laguerre_rule(m + 2, alpha=alpha - beta - 1.0)
        lag = _kernels.laguerre_table(alpha, m, nodes)[m]
        nrm2 = math.exp(gammaln(m + 1.0) - gammaln(m + alpha + 1.0))
        return ROOT_TWO_PI * s ** (-beta - 1.0) * nrm2 * float(
            np.sum(wts * lag * lag))

    return Weight(eval=ev, fourier=FourierWeight(smooth=smooth, atoms=()),
                  label=f"diag(alpha={alpha}, m={m}, s={s})",
                  d_beta_closed=d_beta)


def _thermal_terms(t):
    """Series cutoff where t^n has decayed below ~1e-16."""
    if t == 0.0:
        return 0
    return int(math.ceil(-36.0 / math.log(t)))


def thermal_series_eval(alpha, t, q, p, n_terms=None):
    """Thermal weight by its authoritative partial sums.

    (1 - t)/sqrt(q) * sum_n t^n conj(U_nn(q, p)); the closed form below
    must match this.  The scale is pinned by the unit-trace convention
    every builtin weight follows, so the t = 0 case coincides with the
    ground coherent-state weight.
    """
    n = _thermal_terms(t) if n_terms is None else n_terms
    diag = np.conjugate(_kernels.u_diag(alpha, n, q, p))
    tn = np.power(t, np.arange(n + 1, dtype=np.float64))
    return complex((1.0 - t) / math.sqrt(q) * np.sum(tn * diag))


def _builtin_thermal(alpha, t):
    """Thermal-state weight: Jacobi generating function in closed form.

    The generating variable is z = t conj(Z+)/Z+ with Z+ = q+1+2iqp; the
    square root R = sqrt(1 - 2Yz + z^2) is taken on the branch connected
    to R=1 at z=0, realized as the product of principal square roots of
    (1 - z e^(i phi)) (1 - z e^(-i phi)) with Y = cos(phi).  The branch
    is pinned by agreement with the partial sums of
    ``thermal_series_eval`` (checked in the tests).  Normalized to unit
    operator trace, like every builtin: at t = 0 the weight equals the
    ground coherent-state weight, and the resolution constant c_M comes
    out as 2 pi/alpha.
    """
    if not 0.0 <= t < 1.0:
        raise ParameterDomainError(f"t must lie in [0, 1), got {t}")

    def ev(q, p):
        zp = q + 1.0 + 2j * q * p
        y = 1.0 - 2.0 * abs((q - 1.0 + 2j * q * p) / zp) ** 2
        zbar = t * np.conjugate(zp) / zp
        phi = math.acos(max(-1.0, min(1.0, y)))
        r = cmath.sqrt(1.0 - zbar * cmath.exp(1j * phi)) * cmath.sqrt(
            1.0 - zbar * cmath.exp(-1j * phi))
        val = (2.0 ** (2.0 * alpha + 1.0) * q ** (0.5 * alpha)
               / (zp ** (alpha + 1.0) * r * (1.0 + zbar + r) ** alpha))
        return complex((1.0 - t) * val)

    n_cut = _thermal_terms(t)

    def smooth(u, v):
        if v >= 0.0:
            return 0.0 + 0.0j
        xs = np.array([-v, -v / u], dtype=np.float64)
        tab = basis_table(alpha, max(n_cut, 1), xs)
        tn = np.power(t, np.arange(tab.shape[0], dtype=np.float64))
        return complex((1.0 - t) * ROOT_TWO_PI / u
                       * np.sum(tn * tab[:, 0] * tab[:, 1]))

    return Weight(eval=ev, fourier=FourierWeight(smooth=smooth, atoms=()),
                  label=f"thermal(alpha={alpha}, t={t})")


def builtin(kind, *, alpha=None, m=0, s=1.0, t=None, fiducial=None):
    """Construct one of the builtin weights.

    kind: "aw" | "diag" (needs alpha; optional m, s) | "thermal"
    (needs alpha, t) | "acs" (needs fiducial, or alpha for the ground
    fiducial).
    """
    if kind == "aw":
        return _builtin_aw()
    if kind == "diag":
        if alpha is None:
            raise ConfigurationError("diag weight requires alpha")
        _require_alpha(alpha)
        return _builtin_diag(alpha, m, s)
    if kind == "thermal":
        if alpha is None or t is None:
            raise ConfigurationError("thermal weight requires alpha and t")
        _require_alpha(alpha)
        return _builtin_thermal(alpha, t)
    if kind == "acs":
        if fiducial is None:
            if alpha is None:
                raise ConfigurationError(
                    "acs weight requires a fiducial state or alpha")
            _require_alpha(alpha)
            return _builtin_acs_ground(alpha)
        return _builtin_acs(fiducial)
    raise ConfigurationError(f"unknown weight kind {kind!r}")


def _require_alpha(alpha):
    if not alpha > 0.0:
        raise ParameterDomainError(f"alpha must be positive, got {alpha}")


def from_config(source):
    """Load a weight from a JSON config: {"kind": ..., "parameters": {...}}.

    For the acs kind the fiducial is either the ground state (give
    "alpha") or a user-sampled state ("fiducial_samples": {"x": [...],
    "values": [...]}), which is interpolated monotonically, zero-extended
    and normalized to unit L2 norm.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid weight config JSON: {exc}")
    elif isinstance(source, dict):
        data = source
    else:
        raise ConfigurationError(
            f"config must be a path or a dict, got {type(source).__name__}")

    if "kind" not in data:
        raise ConfigurationError("weight config needs a 'kind' entry")
    kind = data["kind"]
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigurationError("'parameters' must be an object")

    if kind == "acs" and "fiducial_samples" in params:
        fiducial = _sampled_fiducial(params["fiducial_samples"])
        return builtin("acs", fiducial=fiducial)
    known = {"alpha", "m", "s", "t"}
    extra = set(params) - known
    if extra:
        raise ConfigurationError(f"unknown parameters {sorted(extra)}")
    return builtin(kind, **{k: params[k] for k in known if k in params})


def _sampled_fiducial(samples):
    from scipy.interpolate import PchipInterpolator

    try:
        xs = np.asarray(samples["x"], dtype=np.float64)
        ys = np.asarray(samples["values"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad fiducial_samples: {exc}")
    if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 4:
        raise ConfigurationError(
            "fiducial_samples needs matching 1-D 'x' and 'values' arrays "
            "with at least 4 points")
    if np.any(np.diff(xs) <= 0.0) or xs[0] <= 0.0:
        raise ConfigurationError("'x' must be strictly increasing and > 0")

    interp = PchipInterpolator(xs, ys, extrapolate=False)
    lo, hi = float(xs[0]), float(xs[-1])

    def f(x):
        out = interp(np.asarray(x, dtype=np.float64))
        return np.nan_to_num(out, nan=0.0)

    wf = WaveFunction(func=f, decay="power", label="sampled", is_real=True)
    nrm = wf.norm()
    if not nrm > 0.0:
        raise ConfigurationError("sampled fiducial has zero norm")

    def fn(x):
        return f(x) / nrm

    out = WaveFunction(func=fn, decay="power", label="sampled", is_real=True)
    out._norm = 1.0
    out._cut = hi
    return out


# ---------------------------------------------------------------------------
# Thermal-kernel identities


def laguerre_poisson_sum(alpha, x, y, t, n_terms):
    """Partial sum of sum_n n!/(n+alpha)! L_n(x) L_n(y) t^n."""
    lx = _kernels.laguerre_table(alpha, n_terms, np.array([float(x)]))[:, 0]
    ly = _kernels.laguerre_table(alpha, n_terms, np.array([float(y)]))[:, 0]
    n = np.arange(n_terms + 1, dtype=np.float64)
    ratio = np.exp(gammaln(n + 1.0) - gammaln(n + alpha + 1.0))
    return float(np.sum(ratio * lx * ly * np.power(t, n)))


def laguerre_poisson_closed(alpha, x, y, t):
    """Bessel closed form of the Laguerre Poisson kernel.

    (xyt)^(-alpha/2) (1-t)^(-1) e^(-(x+y) t/(1-t)) I_alpha(2 sqrt(xyt)/(1-t)),
    evaluated through the scaled Bessel function for overflow safety.
    """
    if not 0.0 < t < 1.0:
        raise ParameterDomainError(f"t must lie in (0, 1), got {t}")
    z = 2.0 * math.sqrt(x * y * t) / (1.0 - t)
    log_pref = (-0.5 * alpha * math.log(x * y * t) - math.log1p(-t)
                - (x + y) * t / (1.0 - t) + z)
    return math.exp(log_pref) * bessel_scaled("I", alpha, z)


def thermal_bessel_constant(alpha, t):
    """2 pi t^(-alpha/2) int_0^inf (dx/x) e^(-x(1+t)/(1-t)) I_alpha(2 sqrt(t) x/(1-t)).

    The integral is the diagonal kernel trace against dx/x; the chain
    evaluates to 2 pi / alpha independently of t.
    """
    if not 0.0 < t < 1.0:
        raise ParameterDomainError(f"t must lie in (0, 1), got {t}")
    gam = (1.0 + t) / (1.0 - t)
    mu = 2.0 * math.sqrt(t) / (1.0 - t)

    def f(x):
        # e^(-gam x) I_alpha(mu x) / x, assembled from the scaled Bessel
        return math.exp(-(gam - mu) * x) * bessel_scaled("I", alpha, mu * x) / x

    val, _ = adaptive_integrate(f, 0.0, math.inf, rel_tol=1e-11, abs_tol=1e-14)
    return TWO_PI * t ** (-0.5 * alpha) * val

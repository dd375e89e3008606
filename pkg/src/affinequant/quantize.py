"""Quantization map: classical observables to operators on the half-line.

Matrix assembly rests on one primitive: exact Gauss-Laguerre integration
of <e_m | x^s (-i d/dx)^k | e_n>.  Derivatives of basis functions stay
inside the family x^(alpha/2 - l) e^(-x/2) L_r^(alpha+i), so every entry
is a polynomial integral against a x^a e^(-x) measure and the quadrature
is exact, including real (non-integer) powers s.

Closed operator forms come from one master identity: for f = q^beta p^n,

    A_f = sum_k C(n,k) (-i)^(n-k) (G_(n-k)^(beta) / d_0) x^(beta-(n-k)) P^k,
    G_m^(beta) = [ (-s^2 d/ds)^m ( s Omega_beta(s) ) ] at s = 1,

evaluated with registered closed-form Omega derivatives when the weight
carries them, else with finite differences (orders <= 2 only).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

from . import _kernels
from .affine_group import GroupElement, inverse
from .errors import (
    ConfigurationError,
    DivergenceError,
    ParameterDomainError,
    UnsupportedObservableError,
)
from .quadrature import adaptive_integrate, gauss_laguerre_rule
from .representation import BasisSpec, OperatorMatrix, matrix_u
from .weights import _omega_beta_numeric, compute_constants

__all__ = [
    "Observable",
    "QuantizedOperator",
    "xpow_dk_matrix",
    "multiplication_matrix",
    "dilation_matrix",
    "quantize_position_fn",
    "quantize_p_power",
    "quantize_dilation",
    "quantize_separable",
    "quantize_monomials",
    "quantize",
    "commutator_check",
    "covariance_check",
    "thermal_quantize",
    "thermal_constant",
    "thermal_kinetic_constant",
]

TWO_PI = 2.0 * math.pi
ROOT_TWO_PI = math.sqrt(TWO_PI)


@dataclass(frozen=True)
class Observable:
    """Classical observable from the supported catalog.

    kind is one of "position_fn", "momentum_power", "separable",
    "dilation", "kinetic", "monomial_sum"; the payload fields used depend
    on the kind.
    """

    kind: str
    u: Callable[[float], float] | None = None
    n: int = 0
    terms: tuple = ()
    v_hat: object = None

    def __post_init__(self):
        if self.kind not in ("position_fn", "momentum_power", "separable",
                             "dilation", "kinetic", "monomial_sum"):
            raise UnsupportedObservableError(f"unknown kind {self.kind!r}")
        if self.n < 0:
            raise ParameterDomainError(f"momentum power must be >= 0: {self.n}")
        for t in self.terms:
            coeff, beta, n = t
            if n < 0 or int(n) != n:
                raise ParameterDomainError(
                    f"momentum power must be a nonnegative integer: {n}")

    @classmethod
    def position_fn(cls, u):
        return cls(kind="position_fn", u=u)

    @classmethod
    def momentum_power(cls, n):
        return cls(kind="momentum_power", n=n)

    @classmethod
    def separable(cls, u, n):
        return cls(kind="separable", u=u, n=n)

    @classmethod
    def dilation(cls):
        return cls(kind="dilation")

    @classmethod
    def kinetic(cls):
        return cls(kind="kinetic")

    @classmethod
    def monomial_sum(cls, terms):
        for (_, _, n) in terms:
            if int(n) != n:
                raise ParameterDomainError(
                    f"momentum power must be a nonnegative integer: {n}")
        return cls(kind="monomial_sum", terms=tuple(
            (complex(c).real if complex(c).imag == 0 else complex(c),
             float(b), int(n)) for (c, b, n) in terms))


@dataclass
class QuantizedOperator:
    """Quantized observable: structured closed form plus optional matrix.

    ``closed_form`` is a plain dict describing the operator structure:
    {"kind": "multiplication", "v": callable} for multiplication
    operators, {"kind": "diff_poly", "terms": [(coeff, xpow, k), ...]}
    for differential polynomials sum coeff x^xpow P^k, {"kind":
    "dilation", "d_coeff": l, "constant": c} for l D + c, and {"kind":
    "kernel"} when only an integral kernel is available.
    """

    closed_form: dict
    matrix: OperatorMatrix | None = None
    kernel: Callable[[float, float], complex] | None = None
    series_tail: float | None = None


# ---------------------------------------------------------------------------
# Exact matrix primitives


def _derivative_terms(alpha, k):
    """Terms of d^k/dx^k applied to x^(alpha/2) e^(-x/2) L_n^(alpha).

    Keys (l, i) stand for x^(alpha/2 - l) e^(-x/2) L_(n-i)^(alpha+i) with
    the shown coefficient; the n-dependence sits entirely in the Laguerre
    index shift i.
    """
    terms = {(0, 0): 1.0}
    for _ in range(k):
        new = {}
        for (l, i), c in terms.items():
            new[(l + 1, i)] = new.get((l + 1, i), 0.0) + c * (0.5 * alpha - l)
            new[(l, i)] = new.get((l, i), 0.0) - 0.5 * c
            new[(l, i + 1)] = new.get((l, i + 1), 0.0) - c
        terms = {key: c for key, c in new.items() if c != 0.0}
    return terms


def _basis_norms(alpha, n_max):
    n = np.arange(n_max + 1, dtype=np.float64)
    return np.exp(0.5 * (gammaln(n + 1.0) - gammaln(n + alpha + 1.0)))


def xpow_dk_matrix(basis, xpow, k, smooth=None, extra_nodes=0):
    """Matrix of [smooth(x)] x^xpow (-i d/dx)^k in the basis.

    Without ``smooth`` every term's integrand is x^a e^(-x) times a
    polynomial of degree <= 2 n_max, so a Gauss-Laguerre rule with
    generalized exponent a is exact.  A smooth prefactor is sampled at
    the nodes (accurate, not exact); pass extra_nodes to refine.  Raises
    DivergenceError when some term's exponent a <= -1 (the integral
    diverges at the origin for this alpha/operator pair).
    """
    alpha, nmax = basis.alpha, basis.n_max
    terms = _derivative_terms(alpha, k)
    bad = [l for (l, i) in terms if alpha + xpow - l <= -1.0]
    if bad:
        raise DivergenceError(
            f"matrix of x^{xpow} d^{k} diverges at the origin for "
            f"alpha={alpha}: needs alpha + {xpow} - {max(bad)} > -1")
    n_nodes = nmax + k + 3 + extra_nodes
    out = np.zeros((nmax + 1, nmax + 1), dtype=np.complex128)
    for (l, i), c in terms.items():
        if i > nmax:
            continue
        nodes, wts = gauss_laguerre_rule(n_nodes, alpha=alpha + xpow - l)
        tab_m = _kernels.laguerre_table(alpha, nmax, nodes)
        tab_r = _kernels.laguerre_table(alpha + i, nmax, nodes)
        if smooth is None:
            eff = wts
        else:
            eff = wts * np.asarray([smooth(x) for x in nodes])
        core = (tab_m * eff) @ tab_r.T
        out[:, i:] += c * core[:, : nmax + 1 - i]
    norms = _basis_norms(alpha, nmax)
    out *= (-1j) ** k
    out *= norms[:, None] * norms[None, :]
    return out


def multiplication_matrix(basis, v, extra_nodes=48):
    """Matrix of multiplication by a smooth function v(x) (quadrature)."""
    alpha, nmax = basis.alpha, basis.n_max
    nodes, wts = gauss_laguerre_rule(nmax + extra_nodes, alpha=alpha)
    tab = _kernels.laguerre_table(alpha, nmax, nodes)
    vx = np.asarray([v(x) for x in nodes])
    core = (tab * (wts * vx)) @ tab.T
    norms = _basis_norms(alpha, nmax)
    return core * (norms[:, None] * norms[None, :])


def dilation_matrix(basis):
    """Exact matrix of D = (QP + PQ)/2 = x P - i/2."""
    out = xpow_dk_matrix(basis, 1.0, 1)
    out -= 0.5j * np.eye(basis.size)
    return out


def _operator_matrix_from_terms(basis, terms):
    out = np.zeros((basis.size, basis.size), dtype=np.complex128)
    for coeff, xpow, k in terms:
        if coeff == 0.0:
            continue
        out += coeff * xpow_dk_matrix(basis, xpow, k)
    return out


def _wrap_matrix(basis, entries, hermitian=None):
    m = OperatorMatrix(basis, entries, hermitian=hermitian)
    m.trunc_estimate = m.border_norm()
    return m


# ---------------------------------------------------------------------------
# Omega-derivative machinery


def _omega_beta_value(w, beta, u):
    if w.omega_beta_closed is not None:
        return complex(w.omega_beta_closed(beta, u))
    return complex(_omega_beta_numeric(w, beta, u))


def _omega_beta_deriv(w, beta, k):
    """d^k/du^k Omega_beta(u) at u = 1; finite differences cover k <= 2."""
    if w.omega_beta_derivs_closed is not None:
        return complex(w.omega_beta_derivs_closed(beta, k))
    if k == 0:
        return _omega_beta_value(w, beta, 1.0)
    if k > 2:
        raise ConfigurationError(
            f"momentum powers beyond 2 need registered closed-form Omega "
            f"derivatives; weight {w.label!r} has none (requested order {k})")
    h = 1e-3
    f = [_omega_beta_value(w, beta, 1.0 + j * h) for j in (-2, -1, 0, 1, 2)]
    if k == 1:
        return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
    return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (
        12.0 * h * h)


def _g_constants(w, beta, m_max):
    """G_m^(beta) for m = 0..m_max by symbolic application of -s^2 d/ds.

    Terms are kept as {(a, k): coeff} meaning coeff s^a Omega_beta^(k)(s);
    the operator maps (a, k) to -a (a+1, k) and -(a+2, k+1).
    """
    terms = {(1, 0): 1.0}
    out = []
    for m in range(m_max + 1):
        if m > 0:
            new = {}
            for (a, k), c in terms.items():
                new[(a + 1, k)] = new.get((a + 1, k), 0.0) - c * a
                new[(a + 2, k + 1)] = new.get((a + 2, k + 1), 0.0) - c
            terms = new
        out.append(sum(c * _omega_beta_deriv(w, beta, k)
                       for (a, k), c in terms.items()))
    return out


def _monomial_terms(w, coeff, beta, n):
    """Master-formula terms (coeff, xpow, k) for coeff * q^beta p^n."""
    g = _g_constants(w, beta, n)
    d0 = _omega_beta_deriv(w, 0.0, 0)
    if d0 == 0.0:
        raise DivergenceError("d_0 vanishes; quantization map undefined")
    out = []
    for k in range(n + 1):
        m = n - k
        c = coeff * math.comb(n, k) * (-1j) ** m * (g[m] / d0)
        out.append((complex(c), beta - m, k))
    return out


# ---------------------------------------------------------------------------
# Quantization of the observable catalog


def _detect_power(u):
    """Exponent beta if u is exactly a positive multiple of q^beta, else None."""
    xs = np.geomspace(0.1, 10.0, 17)
    try:
        vals = np.asarray([u(x) for x in xs], dtype=np.float64)
    except (TypeError, ValueError):
        return None
    if np.any(~np.isfinite(vals)) or np.any(vals <= 0.0):
        return None
    logs = np.log(vals)
    coeffs = np.polyfit(np.log(xs), logs, 1)
    resid = np.max(np.abs(np.polyval(coeffs, np.log(xs)) - logs))
    if resid < 1e-12:
        return float(coeffs[0]), float(math.exp(coeffs[1]))
    return None


def _position_convolution(w, u, x, d0):
    """v(x) = (sqrt(2 pi)/c_M) int (dq/q) fourier(1, -q) u(x/q); atoms exact."""
    total = 0.0 + 0.0j
    for a in w.fourier.atoms:
        loc = a.location(1.0)
        if loc < 0.0:
            total += complex(a.amplitude(1.0)) * u(-x / loc) / (-loc)
    if w.fourier.smooth is not None:
        val, _ = adaptive_integrate(
            lambda q: w.fourier.smooth(1.0, -q) * u(x / q) / q,
            0.0, math.inf, rel_tol=1e-10, abs_tol=1e-13)
        total += val
    # c_M = sqrt(2 pi) d_0, so the prefactor reduces to 1/d_0
    return total / d0


def quantize_position_fn(w, u, basis):
    """Quantize f(q, p) = u(q): multiplication by the convolution of u.

    Exact powers are detected and mapped to (d_beta/d_0) Q^beta with the
    matrix assembled exactly; everything else goes through the
    convolution v(x) = (sqrt(2 pi)/c_M) int (dq/q) fourier(1,-q) u(x/q)
    and Gauss-Laguerre quadrature against the basis.
    """
    d0 = _omega_beta_deriv(w, 0.0, 0)
    power = _detect_power(u)
    if power is not None:
        beta, scale = power
        ratio = scale * _omega_beta_value(w, beta, 1.0) / d0
        entries = ratio * xpow_dk_matrix(basis, beta, 0)
        cf = {"kind": "multiplication",
              "v": (lambda x, r=ratio, b=beta: r * x ** b),
              "power": beta, "ratio": complex(ratio)}
        return QuantizedOperator(cf, matrix=_wrap_matrix(basis, entries, True))

    def v(x):
        return _position_convolution(w, u, x, d0)

    # Pre-flight: the convolution must converge where the basis lives.
    probe = v(1.0)
    if not np.isfinite(complex(probe)):
        raise DivergenceError(
            "position convolution diverges for this weight/u combination")
    entries = multiplication_matrix(basis, v)
    return QuantizedOperator({"kind": "multiplication", "v": v},
                             matrix=_wrap_matrix(basis, entries, True))


def quantize_p_power(w, n, basis=None):
    """Quantize f = p^n into its differential-polynomial closed form."""
    if n < 0 or int(n) != n:
        raise ParameterDomainError(f"power must be a nonnegative integer: {n}")
    terms = _monomial_terms(w, 1.0, 0.0, int(n))
    matrix = None
    if basis is not None:
        matrix = _wrap_matrix(basis, _operator_matrix_from_terms(basis, terms))
    return QuantizedOperator({"kind": "diff_poly", "terms": terms},
                             matrix=matrix)


def quantize_dilation(w, basis=None):
    """Quantize f = q p: a multiple of D = (QP+PQ)/2 plus a constant."""
    om0 = _omega_beta_deriv(w, 0.0, 0)
    om1 = _omega_beta_deriv(w, 1.0, 0)
    om1p = _omega_beta_deriv(w, 1.0, 1)
    ratio = om1 / om0
    constant = 1j * (1.5 * om1 + om1p) / om0
    matrix = None
    if basis is not None:
        entries = ratio * dilation_matrix(basis)
        if constant != 0.0:
            entries = entries + constant * np.eye(basis.size)
        matrix = _wrap_matrix(basis, entries)
    return QuantizedOperator(
        {"kind": "dilation", "d_coeff": complex(ratio),
         "constant": complex(constant)}, matrix=matrix)


def quantize_monomials(w, terms, basis=None):
    """Quantize a finite sum of monomials q^beta p^n by the master formula."""
    all_terms = []
    for coeff, beta, n in terms:
        all_terms.extend(_monomial_terms(w, coeff, beta, n))
    matrix = None
    if basis is not None:
        matrix = _wrap_matrix(
            basis, _operator_matrix_from_terms(basis, all_terms))
    return QuantizedOperator({"kind": "diff_poly", "terms": all_terms},
                             matrix=matrix)


def _w_tilde(w, x, s, u):
    """W(x, s) = int (dq/q) fourier(s, -q) u(x/q), atoms exact."""
    total = 0.0 + 0.0j
    for a in w.fourier.atoms:
        loc = a.location(s)
        if loc < 0.0:
            total += complex(a.amplitude(s)) * u(-x / loc) / (-loc)
    if w.fourier.smooth is not None:
        val, _ = adaptive_integrate(
            lambda q: w.fourier.smooth(s, -q) * u(x / q) / q,
            0.0, math.inf, rel_tol=1e-9, abs_tol=1e-12)
        total += val
    return total


def _separable_coeff_terms(w, u, n, c_m):
    """Generalized master-formula coefficients for u(q) p^n, u arbitrary.

    Returns per-k coefficient functions c_k(x) such that
    A = sum_k C(n,k) (-i)^(n-k) c_(n-k)(x) x^(-(n-k)) P^k; the s-structure
    [(-s^2 d/ds)^m (s W(x, s))]_(s=1) is evaluated with central
    differences in s (supported through n = 2).
    """
    if n > 2:
        raise UnsupportedObservableError(
            "separable quantization with a non-power position factor "
            "supports momentum powers up to 2; use monomial_sum for powers")
    h = 1e-3
    svals = [1.0 + j * h for j in (-2, -1, 0, 1, 2)]

    def h_m(x, m):
        # terms {(a, k): coeff} of (-s^2 d/ds)^m (s W(x, s))
        terms = {(1, 0): 1.0}
        for _ in range(m):
            new = {}
            for (a, k), c in terms.items():
                new[(a + 1, k)] = new.get((a + 1, k), 0.0) - c * a
                new[(a + 2, k + 1)] = new.get((a + 2, k + 1), 0.0) - c
            terms = new
        f = [_w_tilde(w, x, s, u) for s in svals]
        d0v = f[2]
        d1v = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
        d2v = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (
            12.0 * h * h)
        ders = {0: d0v, 1: d1v, 2: d2v}
        return sum(c * ders[k] for (a, k), c in terms.items())

    def coeff_fn(m):
        return lambda x: h_m(x, m) / c_m * ROOT_TWO_PI

    return [coeff_fn(m) for m in range(n + 1)]


def quantize_separable(w, u, v_hat, basis):
    """Quantize a separable observable u(q) v(p).

    ``v_hat`` describes the Fourier transform of the momentum factor:
    ("poly", [a_0, ..., a_n]) means v(p) = sum a_k p^k and is routed to
    the closed momentum-power machinery; a callable means a smooth
    transform and yields the integral-kernel construction.
    """
    if isinstance(v_hat, tuple) and len(v_hat) == 2 and v_hat[0] == "poly":
        coeffs = list(v_hat[1])
        power = _detect_power(u)
        if power is not None:
            beta, scale = power
            terms = [(scale * a, beta, k)
                     for k, a in enumerate(coeffs) if a != 0.0]
            return quantize_monomials(w, terms, basis)
        consts = compute_constants(w, betas=(0.0,))
        c_m = consts.c_M
        entries = np.zeros((basis.size, basis.size), dtype=np.complex128)
        for n, a in enumerate(coeffs):
            if a == 0.0:
                continue
            cfns = _separable_coeff_terms(w, u, n, c_m)
            for k in range(n + 1):
                m = n - k
                pref = a * math.comb(n, k) * (-1j) ** m
                entries += pref * xpow_dk_matrix(
                    basis, -float(m), k, smooth=cfns[m], extra_nodes=32)
        return QuantizedOperator({"kind": "diff_poly", "terms": None},
                                 matrix=_wrap_matrix(basis, entries))

    if callable(v_hat):
        consts = compute_constants(w, betas=(0.0,))
        c_m = consts.c_M

        def kernel(x, xp):
            s = x / xp
            return complex(v_hat(xp - x) * s * _w_tilde(w, x, s, u) / c_m)

        entries = _kernel_matrix(basis, kernel)
        return QuantizedOperator({"kind": "kernel"}, kernel=kernel,
                                 matrix=_wrap_matrix(basis, entries))
    raise UnsupportedObservableError(
        "v_hat must be ('poly', coefficients) or a callable smooth transform")


def _kernel_matrix(basis, kernel, extra_nodes=64):
    """Double quadrature against e_m(x) K(x, x') e_n(x').

    Each axis carries the half-weight x^(alpha/2) e^(-x/2); substituting
    x = 2y turns it into a standard alpha/2 Gauss-Laguerre measure, exact
    in the polynomial factors and fast-converging in the smooth kernel.
    """
    alpha, nmax = basis.alpha, basis.n_max
    ynodes, wts = gauss_laguerre_rule(nmax + extra_nodes, alpha=0.5 * alpha)
    nodes = 2.0 * ynodes
    tab = _kernels.laguerre_table(alpha, nmax, nodes)
    norms = _basis_norms(alpha, nmax)
    kmat = np.empty((nodes.size, nodes.size), dtype=np.complex128)
    for a, x in enumerate(nodes):
        for b, xp in enumerate(nodes):
            kmat[a, b] = kernel(float(x), float(xp))
    left = tab * wts
    scale = 2.0 ** (alpha + 2.0)
    return scale * (norms[:, None] * norms[None, :]) * (left @ kmat @ left.T)


def quantize(w, obs, basis):
    """Dispatch an Observable through the matching construction."""
    if obs.kind == "position_fn":
        return quantize_position_fn(w, obs.u, basis)
    if obs.kind == "momentum_power":
        return quantize_p_power(w, obs.n, basis)
    if obs.kind == "kinetic":
        return quantize_p_power(w, 2, basis)
    if obs.kind == "dilation":
        return quantize_dilation(w, basis)
    if obs.kind == "monomial_sum":
        return quantize_monomials(w, obs.terms, basis)
    if obs.kind == "separable":
        v_hat = obs.v_hat
        if v_hat is None:
            v_hat = ("poly", [0.0] * obs.n + [1.0])
        return quantize_separable(w, obs.u, v_hat, basis)
    raise UnsupportedObservableError(f"cannot quantize kind {obs.kind!r}")


# ---------------------------------------------------------------------------
# Checks


def commutator_check(w, basis):
    """Best-fit lambda in [A_q, A_p] = i lambda I over the interior block.

    The border rows carry truncation garbage, so the last two indices are
    excluded from the fit (least squares against iI reduces to the mean
    imaginary diagonal).
    """
    a_q = quantize_position_fn(w, lambda q: q, basis).matrix.entries
    a_p = quantize_p_power(w, 1, basis).matrix.entries
    comm = a_q @ a_p - a_p @ a_q
    interior = comm[: basis.size - 2, : basis.size - 2]
    return float(np.mean(np.imag(np.diagonal(interior))))


def _covariance_lhs(w, basis, f_kind, g0):
    u_mat = matrix_u(basis, g0).entries
    a_q = quantize_position_fn(w, lambda q: q, basis).matrix.entries
    if f_kind == "q":
        a = a_q
        rhs = a_q / g0.q
    else:
        a = quantize_dilation(w, basis).matrix.entries
        rhs = a - g0.p * a_q
    return u_mat @ a @ u_mat.conj().T, rhs


def covariance_check(w, basis, f_kind, g0, pad=8):
    """Covariance defect of the quantization under a group translate.

    Compares U(g0) A_f U(g0)^H with the quantization of the translated
    observable (f = q translates to q/q0; f = qp to qp - p0 q) at the
    working size.  The attached truncation estimate is the geometric
    extrapolation of the observed change of the kept block under two
    basis enlargements by ``pad`` rows: with d_j the successive block
    differences and r = d_2/d_1 their decay, the tail sum d_1/(1 - r)
    estimates the distance to the untruncated result.
    """
    if f_kind not in ("q", "qp"):
        raise UnsupportedObservableError(
            f"covariance check supports f in {{q, qp}}, got {f_kind!r}")
    lhs, rhs = _covariance_lhs(w, basis, f_kind, g0)
    residual = float(np.linalg.norm(lhs - rhs))
    n = basis.size
    big1 = BasisSpec(basis.alpha, basis.n_max + pad)
    big2 = BasisSpec(basis.alpha, basis.n_max + 2 * pad)
    lhs1, _ = _covariance_lhs(w, big1, f_kind, g0)
    lhs2, _ = _covariance_lhs(w, big2, f_kind, g0)
    d1 = float(np.linalg.norm(lhs - lhs1[:n, :n]))
    d2 = float(np.linalg.norm(lhs1[:n, :n] - lhs2[:n, :n]))
    ratio = d2 / d1 if d1 > 0.0 else 0.0
    ratio = min(ratio, 0.9)
    estimate = d1 / (1.0 - ratio)
    return {"residual": residual, "estimate": estimate,
            "passed": residual <= 2.0 * estimate}


# ---------------------------------------------------------------------------
# Thermal quantization


def _thermal_n_terms(t, n_terms):
    if n_terms is not None:
        return int(n_terms)
    if t == 0.0:
        return 0
    return min(400, int(math.ceil(-36.0 / math.log(t))))


def _e_sq_moment(alpha, n, expo):
    """int e_n(x)^2 x^expo dx, exact Gauss-Laguerre; expo may be real."""
    if alpha + expo <= -1.0:
        raise DivergenceError(
            f"moment integral diverges: alpha={alpha}, exponent {expo}")
    nodes, wts = gauss_laguerre_rule(n + 2, alpha=alpha + expo)
    lag = _kernels.laguerre_table(alpha, n, nodes)[n]
    nrm2 = math.exp(gammaln(n + 1.0) - gammaln(n + alpha + 1.0))
    return nrm2 * float(np.sum(wts * lag * lag))


def thermal_constant(alpha, t, gamma, n_terms=None):
    """c_gamma(t) = alpha (1-t) sum_n t^n int e_n(x)^2 x^(-(2+gamma)) dx.

    Returns (value, tail_bound) with the geometric tail bound
    t^(n+1)/(1-t) times the largest computed term.
    """
    if not 0.0 <= t < 1.0:
        raise ParameterDomainError(f"t must lie in [0, 1), got {t}")
    if gamma >= alpha - 1.0:
        raise DivergenceError(
            f"c_gamma diverges for gamma={gamma} with alpha={alpha}: "
            f"needs gamma < alpha - 1")
    n_top = _thermal_n_terms(t, n_terms)
    vals = np.array([_e_sq_moment(alpha, n, -(2.0 + gamma))
                     for n in range(n_top + 1)])
    tn = np.power(t, np.arange(n_top + 1, dtype=np.float64))
    total = alpha * (1.0 - t) * float(np.sum(tn * vals))
    tail = 0.0 if t == 0.0 else (
        t ** (n_top + 1) / (1.0 - t) * alpha * (1.0 - t) * float(np.max(vals)))
    return total, tail


def _kinetic_term(alpha, n):
    """int (e_n'(x))^2 x dx, exact via the Laguerre derivative identity."""
    nodes, wts = gauss_laguerre_rule(n + 3, alpha=alpha - 1.0)
    lag = _kernels.laguerre_table(alpha, n, nodes)[n]
    if n >= 1:
        lag_d = _kernels.laguerre_table(alpha + 1.0, n - 1, nodes)[n - 1]
    else:
        lag_d = np.zeros_like(nodes)
    inner = (0.5 * alpha - 0.5 * nodes) * lag - nodes * lag_d
    nrm2 = math.exp(gammaln(n + 1.0) - gammaln(n + alpha + 1.0))
    return nrm2 * float(np.sum(wts * inner * inner))


def thermal_kinetic_constant(alpha, t, n_terms=None):
    """K(t) = alpha (1-t) sum_n t^n int (e_n')^2 x dx, with tail bound."""
    if not 0.0 <= t < 1.0:
        raise ParameterDomainError(f"t must lie in [0, 1), got {t}")
    n_top = _thermal_n_terms(t, n_terms)
    vals = np.array([_kinetic_term(alpha, n) for n in range(n_top + 1)])
    tn = np.power(t, np.arange(n_top + 1, dtype=np.float64))
    total = alpha * (1.0 - t) * float(np.sum(tn * vals))
    tail = 0.0 if t == 0.0 else (
        t ** (n_top + 1) / (1.0 - t) * alpha * (1.0 - t) * float(np.max(vals)))
    return total, tail


def thermal_quantize(alpha, t, obs, n_terms=None, basis=None):
    """Quantization with the thermal weight, by its closed per-term series.

    p maps to P; q^beta to c_(beta-1)(t) Q^beta; qp to c_0(t) D;
    p^2 (kinetic) to P^2 + K(t)/Q^2.  The reported series_tail is the
    geometric bound on the truncated constant.
    """
    if not alpha > 0.0:
        raise ParameterDomainError(f"alpha must be positive, got {alpha}")
    if obs.kind == "momentum_power" and obs.n == 1:
        terms = [(1.0 + 0.0j, 0.0, 1)]
        matrix = _wrap_matrix(
            basis, _operator_matrix_from_terms(basis, terms)) if basis else None
        return QuantizedOperator({"kind": "diff_poly", "terms": terms},
                                 matrix=matrix, series_tail=0.0)
    if obs.kind == "kinetic" or (obs.kind == "momentum_power" and obs.n == 2):
        kconst, tail = thermal_kinetic_constant(alpha, t, n_terms)
        terms = [(1.0 + 0.0j, 0.0, 2), (complex(kconst), -2.0, 0)]
        matrix = _wrap_matrix(
            basis, _operator_matrix_from_terms(basis, terms)) if basis else None
        return QuantizedOperator({"kind": "diff_poly", "terms": terms},
                                 matrix=matrix, series_tail=tail)
    if obs.kind == "dilation":
        c0, tail = thermal_constant(alpha, t, 0.0, n_terms)
        matrix = None
        if basis is not None:
            matrix = _wrap_matrix(basis, c0 * dilation_matrix(basis))
        return QuantizedOperator(
            {"kind": "dilation", "d_coeff": complex(c0),
             "constant": 0.0 + 0.0j}, matrix=matrix, series_tail=tail)
    if obs.kind == "monomial_sum":
        entries = None if basis is None else np.zeros(
            (basis.size, basis.size), dtype=np.complex128)
        cf_terms, tail_total = [], 0.0
        for coeff, beta, n in obs.terms:
            if n != 0:
                raise UnsupportedObservableError(
                    "thermal monomials support only pure position powers; "
                    "use dilation/kinetic kinds for mixed terms")
            c, tail = thermal_constant(alpha, t, beta - 1.0, n_terms)
            cf_terms.append((complex(coeff * c), beta, 0))
            tail_total += abs(coeff) * tail
            if entries is not None:
                entries += coeff * c * xpow_dk_matrix(basis, beta, 0)
        matrix = _wrap_matrix(basis, entries) if basis is not None else None
        return QuantizedOperator({"kind": "diff_poly", "terms": cf_terms},
                                 matrix=matrix, series_tail=tail_total)
    raise UnsupportedObservableError(
        f"thermal quantization does not cover kind {obs.kind!r}")

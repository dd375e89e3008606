"""End-to-end verification suite.

Ten numbered checks exercise the package across module boundaries:
representation identities, the regularized trace, thermal and
coherent-state constants, weight normalization, the canonical limit of
the flat weight, phase-space marginals, lower symbols, the
half-oscillator example, and covariance of the quantization map.  Each
check compares computed values against closed forms or independently
assembled references and reports a pass/fail verdict with the measured
numbers; nothing here reuses the code path it is checking as its own
reference.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import _kernels, halfosc, phase_space, quantize, weights
from .affine_group import GroupElement
from .quadrature import adaptive_integrate, gauss_laguerre_rule
from .representation import (BasisSpec, apply_u, basis_wavefunction,
                             fiducial_constant, homomorphism_defect, inner,
                             laguerre_ground, trace_u, trace_u_closed)
from .specfun import bessel_scaled, mbessel_halfline_integral

__all__ = ["CheckResult", "ALL_CHECKS", "run_check", "run_all"]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    runtime: float

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        return (f"{verdict} {self.number:2d} {self.name}: {self.detail} "
                f"[{self.runtime:.1f}s]")


def _result(number, name, t0, passed, detail):
    return CheckResult(number=number, name=name, passed=bool(passed),
                       detail=detail, runtime=time.time() - t0)


def check_unitarity_homomorphism():
    """Inner products are preserved by U(g); products of U compose."""
    t0 = time.time()
    rng = np.random.default_rng(20260815)
    worst = 0.0
    for k in range(20):
        alpha = float([1.0, 2.0, 3.0][k % 3])
        m, n = int(rng.integers(0, 7)), int(rng.integers(0, 7))
        g = GroupElement(q=float(rng.uniform(0.3, 3.0)),
                         p=float(rng.uniform(-2.0, 2.0)))
        val = inner(apply_u(g, basis_wavefunction(alpha, m)),
                    apply_u(g, basis_wavefunction(alpha, n)))
        worst = max(worst, abs(val - (1.0 if m == n else 0.0)))
    defect = homomorphism_defect(BasisSpec(2.0, 30), GroupElement(1.15, 0.2),
                                 GroupElement(0.9, -0.15), window=10)
    runtime = time.time() - t0
    ok = worst <= 1e-10 and defect <= 1e-4 and runtime < 10.0
    return _result(1, "unitarity_homomorphism", t0, ok,
                   f"unitarity residual {worst:.2e} (tol 1e-10), "
                   f"product defect {defect:.2e} at N=30 (tol 1e-4)")


def check_trace_formula():
    """Diagonal trace series reaches sqrt(q)/|q-1|, independent of p."""
    t0 = time.time()
    basis = BasisSpec(alpha=1e-4, n_max=1)
    worst = 0.0
    spread = 0.0
    for q in (0.5, 2.0, 4.0):
        vals = []
        for p in (0.3, -1.1):
            g = GroupElement(q, p)
            val = complex(trace_u(basis, g))
            vals.append(val)
            worst = max(worst, abs(val - trace_u_closed(g)))
        spread = max(spread, abs(vals[0] - vals[1]))
    runtime = time.time() - t0
    ok = worst <= 1e-4 and runtime < 30.0
    return _result(2, "trace_formula", t0, ok,
                   f"worst closed-form error {worst:.2e} (tol 1e-4), "
                   f"p-dependence {spread:.2e}")


def check_thermal_constant():
    """Thermal normalization chain equals 2 pi/alpha; Bessel closed form."""
    t0 = time.time()
    worst = 0.0
    for alpha in (1.0, 2.0, 3.0):
        for t in (0.2, 0.5, 0.8):
            got = weights.thermal_bessel_constant(alpha, t)
            worst = max(worst, abs(got - 2.0 * math.pi / alpha))
    worst_bessel = 0.0
    for gam, mu, alpha in ((2.1, 1.3, 0.5), (3.0, 1.0, 1.0), (1.7, 1.2, 2.5)):
        closed = mbessel_halfline_integral(gam, mu, alpha)
        direct, _ = adaptive_integrate(
            lambda x: math.exp(-(gam - mu) * x)
            * bessel_scaled("I", alpha, mu * x) / x,
            0.0, math.inf, rel_tol=1e-12)
        worst_bessel = max(worst_bessel, abs(closed - direct) / abs(closed))
    runtime = time.time() - t0
    ok = worst <= 1e-6 and worst_bessel <= 1e-8 and runtime < 20.0
    return _result(3, "thermal_constant", t0, ok,
                   f"chain error {worst:.2e} over 9 (alpha,t) pairs "
                   f"(tol 1e-6), Bessel identity {worst_bessel:.2e} "
                   f"(tol 1e-8)")


def check_weight_traces():
    """Unit trace of the flat and coherent-state weights, both routes."""
    t0 = time.time()
    cases = [("aw", weights.builtin("aw"))]
    for alpha in (2.0, 3.0, 5.0):
        cases.append((f"acs({alpha:g})", weights.builtin("acs", alpha=alpha)))
    worst = 0.0
    for _, w in cases:
        res = weights.trace_condition(w)
        worst = max(worst, abs(res.fourier_route - 1.0),
                    abs(res.principal_route - 1.0))
    return _result(4, "weight_traces", t0, worst <= 1e-6,
                   f"worst deviation from unit trace {worst:.2e} over "
                   f"{len(cases)} weights x 2 routes (tol 1e-6)")


def _basis_deriv_polys(alpha, nmax, x):
    # (alpha/2 - x/2) L_n - x L_(n-1)^(alpha+1): the polynomial part of
    # the basis derivative after stripping x^(alpha/2 - 1) e^(-x/2)
    lag = _kernels.laguerre_table(alpha, nmax, x)
    out = (0.5 * alpha - 0.5 * x) * lag
    if nmax >= 1:
        out[1:] -= x * _kernels.laguerre_table(alpha + 1.0, nmax - 1, x)
    return out


def check_canonical_limit():
    """Flat weight: u(q) -> u(Q), p^2 -> P^2, qp -> (QP+PQ)/2 at N=40."""
    t0 = time.time()
    aw = weights.builtin("aw")
    alpha, nmax = 2.0, 40
    basis = BasisSpec(alpha=alpha, n_max=nmax)
    n_in = basis.size - 2
    norms = quantize._basis_norms(alpha, nmax)
    outer = norms[:, None] * norms[None, :]

    a_u = quantize.quantize_position_fn(aw, lambda q: math.exp(-q), basis)
    ref_u = quantize.multiplication_matrix(basis, lambda x: math.exp(-x))
    r_u = float(np.max(np.abs(a_u.matrix.entries[:n_in, :n_in]
                              - ref_u[:n_in, :n_in])))

    # P^2 reference from the derivative identity with an exact rule
    xg, wg = gauss_laguerre_rule(nmax + 8, alpha=alpha - 2.0)
    g_tab = _basis_deriv_polys(alpha, nmax, xg)
    ref_p2 = (g_tab * wg) @ g_tab.T * outer
    a_p2 = quantize.quantize_p_power(aw, 2, basis)
    spurious = max(abs(c) for c, _, k in a_p2.closed_form["terms"] if k != 2)
    r_p2 = float(np.max(np.abs(a_p2.matrix.entries[:n_in, :n_in]
                               - ref_p2[:n_in, :n_in])))

    # D reference: -i(x e_m e_n' + delta/2), same exact-rule assembly
    xg, wg = gauss_laguerre_rule(nmax + 8, alpha=alpha)
    lag = _kernels.laguerre_table(alpha, nmax, xg)
    g_tab = _basis_deriv_polys(alpha, nmax, xg)
    ref_d = -1j * ((lag * wg) @ g_tab.T * outer + 0.5 * np.eye(nmax + 1))
    a_d = quantize.quantize_dilation(aw, basis)
    coeff_dev = max(abs(a_d.closed_form["d_coeff"] - 1.0),
                    abs(a_d.closed_form["constant"]))
    r_d = float(np.max(np.abs(a_d.matrix.entries[:n_in, :n_in]
                              - ref_d[:n_in, :n_in])))

    worst = max(r_u, r_p2, r_d)
    ok = worst <= 1e-8 and spurious == 0.0 and coeff_dev == 0.0
    return _result(5, "canonical_limit", t0, ok,
                   f"interior residuals u(Q) {r_u:.2e}, P^2 {r_p2:.2e}, "
                   f"D {r_d:.2e} (tol 1e-8); spurious p^2 terms "
                   f"{spurious:.1e}, dilation coefficient deviation "
                   f"{coeff_dev:.1e}")


def check_acs_constants():
    """Ground-fiducial moments match the Gamma ratio; kinetic constant."""
    t0 = time.time()
    worst = 0.0
    for alpha in (2.0, 3.0, 4.5):
        psi = laguerre_ground(alpha)
        for gamma in (-1.0, 0.0, 0.5, 1.0):
            if alpha - 1.0 - gamma <= 0.0:
                continue
            got = fiducial_constant(psi, gamma)
            want = math.exp(gammaln(alpha - 1.0 - gamma) - gammaln(alpha + 1.0))
            worst = max(worst, abs(got - want) / want)
    k_dev = 0.0
    for alpha in (1.0, 2.0, 3.0):
        k, _ = quantize.thermal_kinetic_constant(alpha, 0.0)
        k_dev = max(k_dev, abs(k - 0.25 * alpha))
    k3, _ = quantize.thermal_kinetic_constant(3.0, 0.0)
    ok = worst <= 1e-10 and k_dev <= 1e-12 and k3 == 0.75
    return _result(6, "acs_constants", t0, ok,
                   f"moment constants vs Gamma ratio {worst:.2e} "
                   f"(tol 1e-10); kinetic constant deviation from alpha/4 "
                   f"{k_dev:.1e}, threshold value 3/4 exact: {k3 == 0.75}")


def check_wigner_marginals():
    """Both marginal identities, unit mass, and realness for phi_1..phi_4."""
    t0 = time.time()
    grid = phase_space.default_grid()
    worst_pm = worst_qm = worst_mass = worst_imag = 0.0
    for n in (1, 2, 3, 4):
        phi = halfosc.eigenstate_analytic(n).wavefunction
        dist = phase_space.wigner_aw(phi, grid)
        worst_imag = max(worst_imag, dist.residuals["imag"])
        pm = phase_space.wigner_marginal_p(phi, grid.q_nodes)
        l1 = float(np.trapezoid(np.abs(pm - np.abs(phi(grid.q_nodes)) ** 2),
                                grid.q_nodes))
        worst_pm = max(worst_pm, l1)
        qm = phase_space.wigner_marginal_q(phi, grid.p_nodes)
        ref = phase_space.momentum_density(phi, grid.p_nodes)
        worst_qm = max(worst_qm, float(np.trapezoid(np.abs(qm - ref),
                                                    grid.p_nodes)))
        mass = phase_space.wigner_normalization(phi)
        worst_mass = max(worst_mass, abs(mass - 1.0))
    runtime = time.time() - t0
    ok = (worst_pm <= 1e-5 and worst_qm <= 1e-5 and worst_mass <= 1e-6
          and worst_imag <= 1e-8 and runtime < 120.0)
    return _result(7, "wigner_marginals", t0, ok,
                   f"L1 errors: q-density {worst_pm:.2e}, momentum density "
                   f"{worst_qm:.2e} (tol 1e-5); mass deviation "
                   f"{worst_mass:.2e} (tol 1e-6); imaginary residual "
                   f"{worst_imag:.1e} (tol 1e-8)")


def check_lower_symbol():
    """Convolution-route lower symbols: p^2 smoothing and exact u(q)."""
    t0 = time.time()
    aw = weights.builtin("aw")
    rng = np.random.default_rng(7)
    obs_p2 = quantize.Observable.monomial_sum([(1.0, 0.0, 2)])
    worst = 0.0
    for _ in range(10):
        q = float(rng.uniform(0.2, 4.0))
        p = float(rng.uniform(-3.0, 3.0))
        got = phase_space.lower_symbol(aw, obs_p2, GroupElement(q, p),
                                       method="convolution")
        worst = max(worst, abs(got - (p * p + 0.25 / (q * q))))
    obs_u = quantize.Observable.position_fn(lambda q: q ** 1.5)
    u_dev = max(abs(phase_space.lower_symbol(aw, obs_u, GroupElement(q, 0.4),
                                             method="convolution") - q ** 1.5)
                for q in (0.3, 1.0, 2.7))
    ok = worst <= 1e-4 and u_dev == 0.0
    return _result(8, "lower_symbol", t0, ok,
                   f"p^2 portrait error {worst:.2e} at 10 sampled points "
                   f"(tol 1e-4); u=q^1.5 deviation {u_dev:.1e} (exact)")


def check_half_oscillator():
    """Spectrum three ways plus stationarity of the ground density."""
    t0 = time.time()
    exact = np.array([1.5, 3.5, 5.5, 7.5])
    fd = np.array([e for e, _ in halfosc.eigensolve_fd(4)])
    fd_err = float(np.max(np.abs(fd - exact)))
    lag = halfosc.laguerre_spectrum(4, BasisSpec(alpha=2.0, n_max=60))
    lag_err = float(np.max(np.abs(lag - exact)))
    basis = BasisSpec(alpha=2.0, n_max=80)
    h_op = halfosc.hamiltonian_matrix(basis)
    phi1 = halfosc.eigenstate_analytic(1).wavefunction
    grid = phase_space.PhaseSpaceGrid(q_nodes=np.geomspace(0.2, 5.0, 24),
                                      p_nodes=np.linspace(-5.0, 5.0, 24))
    frames = phase_space.evolve_density(phi1, h_op, [0.0, 0.7, 1.4],
                                        laguerre_ground(2.0), grid)
    drift = max(float(np.max(np.abs(f.values - frames[0].values)))
                for f in frames[1:])
    ok = fd_err <= 1e-4 and lag_err <= 1e-3 and drift <= 1e-6
    return _result(9, "half_oscillator", t0, ok,
                   f"finite-difference energy error {fd_err:.2e} (tol 1e-4), "
                   f"Laguerre spectrum error {lag_err:.2e} at N=60 "
                   f"(tol 1e-3), stationary drift {drift:.2e} (tol 1e-6)")


def check_covariance():
    """Group translates of A_q and A_qp match translated observables."""
    t0 = time.time()
    aw = weights.builtin("aw")
    basis = BasisSpec(alpha=2.0, n_max=30)
    rng = np.random.default_rng(42)
    details = []
    ok = True
    for f_kind in ("q", "qp"):
        g0 = GroupElement(q=float(rng.uniform(0.5, 2.0)),
                          p=float(rng.uniform(-1.0, 1.0)))
        out = quantize.covariance_check(aw, basis, f_kind, g0)
        ok = ok and out["passed"]
        details.append(f"f={f_kind}: residual {out['residual']:.2e} vs "
                       f"2x estimate {2.0 * out['estimate']:.2e}")
    return _result(10, "covariance", t0, ok, "; ".join(details))


ALL_CHECKS = [
    (1, "unitarity_homomorphism", check_unitarity_homomorphism),
    (2, "trace_formula", check_trace_formula),
    (3, "thermal_constant", check_thermal_constant),
    (4, "weight_traces", check_weight_traces),
    (5, "canonical_limit", check_canonical_limit),
    (6, "acs_constants", check_acs_constants),
    (7, "wigner_marginals", check_wigner_marginals),
    (8, "lower_symbol", check_lower_symbol),
    (9, "half_oscillator", check_half_oscillator),
    (10, "covariance", check_covariance),
]


def run_check(number):
    """Run one numbered check and return its CheckResult."""
    for num, _, fn in ALL_CHECKS:
        if num == number:
            return fn()
    raise ValueError(f"no check numbered {number}")


def run_all(numbers=None, emit=None):
    """Run the selected checks (all by default); returns (results, ok)."""
    results = []
    for num, _, fn in ALL_CHECKS:
        if numbers is not None and num not in numbers:
            continue
        res = fn()
        results.append(res)
        if emit is not None:
            emit(res.line())
    return results, all(r.passed for r in results)

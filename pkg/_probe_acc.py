import math
import time

import numpy as np

from affinequant import quantize, weights
from affinequant.affine_group import GroupElement
from affinequant.quadrature import adaptive_integrate
from affinequant.representation import (
    BasisSpec, basis_wavefunction, apply_u, inner, homomorphism_defect,
    trace_u, trace_u_closed, fiducial_constant, laguerre_ground)
from affinequant.specfun import mbessel_halfline_integral, bessel_scaled
from affinequant import phase_space
from affinequant.representation import admissibility_constant

# --- criterion 1
t0 = time.time()
rng = np.random.default_rng(20260815)
worst = 0.0
for k in range(20):
    alpha = float([1.0, 2.0, 3.0][k % 3])
    m, n = int(rng.integers(0, 7)), int(rng.integers(0, 7))
    g = GroupElement(q=float(rng.uniform(0.3, 3.0)), p=float(rng.uniform(-2, 2)))
    em = basis_wavefunction(alpha, m)
    en = basis_wavefunction(alpha, n)
    val = inner(apply_u(g, em), apply_u(g, en))
    worst = max(worst, abs(val - (1.0 if m == n else 0.0)))
print("c1 unitarity worst %.2e (%.1fs)" % (worst, time.time() - t0))
t0 = time.time()
d = homomorphism_defect(BasisSpec(2.0, 30), GroupElement(1.15, 0.2),
                        GroupElement(0.9, -0.15), window=10)
print("c1 homomorphism defect %.2e (%.1fs)" % (d, time.time() - t0))

# --- criterion 2
t0 = time.time()
basis = BasisSpec(alpha=1e-4, n_max=1)
worst = 0.0
for q in (0.5, 2.0, 4.0):
    for p in (0.3, -1.1):
        g = GroupElement(q, p)
        val = complex(trace_u(basis, g))
        err = abs(val - trace_u_closed(g))
        worst = max(worst, err)
        print("  trace q=%.1f p=%+.1f val=%.6f%+.1ej err %.2e"
              % (q, p, val.real, val.imag, err))
print("c2 worst %.2e (%.1fs)" % (worst, time.time() - t0))

# --- criterion 3
t0 = time.time()
worst = 0.0
for alpha in (1.0, 2.0, 3.0):
    for t in (0.2, 0.5, 0.8):
        got = weights.thermal_bessel_constant(alpha, t)
        worst = max(worst, abs(got - 2.0 * math.pi / alpha))
print("c3 chain worst %.2e" % worst)
worstb = 0.0
for (gam, mu, alpha) in ((2.1, 1.3, 0.5), (3.0, 1.0, 1.0), (1.7, 1.2, 2.5)):
    closed = mbessel_halfline_integral(gam, mu, alpha)
    direct, _ = adaptive_integrate(
        lambda x: math.exp(-(gam - mu) * x) * bessel_scaled("I", alpha, mu * x) / x,
        0.0, math.inf, rel_tol=1e-12)
    worstb = max(worstb, abs(closed - direct) / abs(closed))
print("c3 bessel identity worst %.2e (%.1fs)" % (worstb, time.time() - t0))

# --- criterion 4
t0 = time.time()
for label, w in [("aw", weights.builtin("aw")),
                 ("acs a=2", weights.builtin("acs", alpha=2.0)),
                 ("acs a=3", weights.builtin("acs", alpha=3.0)),
                 ("acs a=5", weights.builtin("acs", alpha=5.0))]:
    res = weights.trace_condition(w)
    print("  c4 %-8s route1 %.10f route2 %.10f" % (
        label, res.fourier_route.real, res.principal_route.real))
print("c4 (%.1fs)" % (time.time() - t0))

# --- criterion 5
t0 = time.time()
aw = weights.builtin("aw")
basis = BasisSpec(alpha=2.0, n_max=40)
a_u = quantize.quantize_position_fn(aw, lambda q: math.exp(-q), basis)
ref = quantize.multiplication_matrix(basis, lambda x: math.exp(-x))
n_in = basis.size - 2
r1 = np.max(np.abs(a_u.matrix.entries[:n_in, :n_in] - ref[:n_in, :n_in]))
full1 = np.max(np.abs(a_u.matrix.entries - ref))
a_p2 = quantize.quantize_p_power(aw, 2, basis)
print("  p2 terms:", a_p2.closed_form["terms"])
ref_p2 = -quantize.xpow_dk_matrix(basis, 0.0, 2)
r2 = np.max(np.abs(a_p2.matrix.entries - ref_p2))
a_d = quantize.quantize_dilation(aw, basis)
print("  dilation coeff %s const %s" % (a_d.closed_form["d_coeff"],
                                        a_d.closed_form["constant"]))
ref_d = quantize.dilation_matrix(basis)
r3 = np.max(np.abs(a_d.matrix.entries - ref_d))
print("c5 u(Q) interior %.2e (full %.2e)  P2 %.2e  D %.2e (%.1fs)"
      % (r1, full1, r2, r3, time.time() - t0))

# --- criterion 6
t0 = time.time()
from scipy.special import gammaln
worst = 0.0
for alpha in (2.0, 3.0, 4.5):
    psi = laguerre_ground(alpha)
    for gamma in (-1.0, 0.0, 0.5, 1.0):
        if alpha - 1.0 - gamma <= 0:
            continue
        got = fiducial_constant(psi, gamma)
        want = math.exp(gammaln(alpha - 1.0 - gamma) - gammaln(alpha + 1.0))
        worst = max(worst, abs(got - want) / want)
k1, _ = quantize.thermal_kinetic_constant(1.0, 0.0)
k3, _ = quantize.thermal_kinetic_constant(3.0, 0.0)
print("c6 cgamma worst %.2e  K(a=1,t=0)=%.15f  K(a=3,t=0)=%.15f  exact? %s (%.1fs)"
      % (worst, k1, k3, k3 == 0.75, time.time() - t0))

# --- criterion 8
t0 = time.time()
rng = np.random.default_rng(7)
worst = 0.0
obs_p2 = quantize.Observable.monomial_sum([(1.0, 0.0, 2)])
for _ in range(10):
    q = float(rng.uniform(0.2, 4.0))
    p = float(rng.uniform(-3.0, 3.0))
    got = phase_space.lower_symbol(aw, obs_p2, GroupElement(q, p),
                                   method="convolution")
    want = p * p + 1.0 / (4.0 * q * q)
    worst = max(worst, abs(got - want))
obs_u = quantize.Observable.position_fn(lambda q: q ** 1.5)
exact_dev = max(abs(phase_space.lower_symbol(aw, obs_u, GroupElement(q, 0.4),
                                             method="convolution") - q ** 1.5)
                for q in (0.3, 1.0, 2.7))
print("c8 p2 conv worst %.2e  u=q^1.5 dev %.2e (%.1fs)"
      % (worst, exact_dev, time.time() - t0))

# --- criterion 10
t0 = time.time()
rng = np.random.default_rng(42)
basis30 = BasisSpec(alpha=2.0, n_max=30)
for f_kind in ("q", "qp"):
    g0 = GroupElement(q=float(rng.uniform(0.5, 2.0)), p=float(rng.uniform(-1, 1)))
    out = quantize.covariance_check(aw, basis30, f_kind, g0)
    print("  c10 f=%-2s g0=(%.3f,%.3f) residual %.3e estimate %.3e passed %s"
          % (f_kind, g0.q, g0.p, out["residual"], out["estimate"], out["passed"]))
print("c10 (%.1fs)" % (time.time() - t0))

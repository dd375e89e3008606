import math
import time
import warnings

import numpy as np

from affinequant import halfosc, phase_space
from affinequant.errors import AccuracyWarning, ParameterDomainError
from affinequant.quadrature import adaptive_integrate
from affinequant.representation import BasisSpec

# 1) analytic states: phi_1 closed form, norms, orthogonality, energies
s1 = halfosc.eigenstate_analytic(1)
x = np.linspace(0.1, 5, 7)
ref = 2.0 * math.pi ** -0.25 * x * np.exp(-0.5 * x * x)
print("phi1 closed-form err", np.max(np.abs(s1.wavefunction(x) - ref)))
print("E:", [halfosc.eigenstate_analytic(n).energy for n in range(1, 5)])

states = [halfosc.eigenstate_analytic(n) for n in range(1, 5)]
for i in range(4):
    for j in range(i, 4):
        val, _ = adaptive_integrate(
            lambda t: states[i].wavefunction(t) * states[j].wavefunction(t),
            0.0, math.inf, rel_tol=1e-12)
        want = 1.0 if i == j else 0.0
        assert abs(val - want) < 1e-10, (i, j, val)
print("orthonormality n<=4 ok")

# 2) FD solver
t0 = time.time()
pairs = halfosc.eigensolve_fd(4)
print("fd time %.2fs" % (time.time() - t0))
for k, (e, st) in enumerate(pairs):
    exact = 2 * (k + 1) - 0.5
    print("  E_%d = %.8f err %.2e" % (k + 1, e, abs(e - exact)))
    assert abs(e - exact) < 1e-4

# eigenvector matches analytic phi_1 in L2 grid norm
e1, st1 = pairs[0]
h = st1.x_nodes[1] - st1.x_nodes[0]
diff = st1.samples - states[0].wavefunction(st1.x_nodes)
grid_err = math.sqrt(h * np.sum(diff ** 2))
print("fd phi1 L2 grid err", grid_err)
assert grid_err <= 1e-4

# interpolation call on sample-backed state
print("interp err", abs(st1(1.3) - states[0].wavefunction(1.3)))

# second-order convergence: error ratio ~4 on doubling
_, e_c, _ = halfosc._fd_energies_states(4, 12.0, 1000)
_, e_f, _ = halfosc._fd_energies_states(4, 12.0, 2000)
exact = np.array([1.5, 3.5, 5.5, 7.5])
print("conv ratios", np.abs(e_c - exact) / np.abs(e_f - exact))

# AccuracyWarning at low resolution
with warnings.catch_warnings(record=True) as rec:
    warnings.simplefilter("always")
    halfosc.eigensolve_fd(2, x_max=8.0, n_points=500)
assert any(isinstance(w.message, AccuracyWarning) for w in rec), rec
print("AccuracyWarning:", str(rec[0].message))

try:
    halfosc.eigensolve_fd(0)
except ParameterDomainError as exc:
    print("level-count guard ok:", exc)

# 3) Laguerre spectrum
for nmax in (40, 60):
    t0 = time.time()
    ev = halfosc.laguerre_spectrum(4, BasisSpec(alpha=2.0, n_max=nmax))
    err = np.max(np.abs(ev - exact))
    print("laguerre N=%d: %s err %.2e (%.1fs)" % (nmax, ev, err, time.time() - t0))

try:
    halfosc.hamiltonian_matrix(BasisSpec(alpha=0.5, n_max=10))
except ParameterDomainError as exc:
    print("alpha guard ok:", exc)

import math
import time

import numpy as np

from affinequant import phase_space as ps
from affinequant import quantize as qz
from affinequant import weights as wt
from affinequant.affine_group import GroupElement
from affinequant.representation import (
    BasisSpec, WaveFunction, laguerre_ground, inner, fiducial_constant,
)

t0 = time.time()

# phi_1 = 2 pi^(-1/4) x exp(-x^2/2), unit norm on (0, inf)
c1 = 2.0 / math.pi ** 0.25
phi1 = WaveFunction(func=lambda x: c1 * x * np.exp(-0.5 * x * x),
                    decay="gaussian", label="phi1", is_real=True)
print("norm phi1:", phi1.norm())
print("support cut:", phi1.support_cut())

grid = ps.PhaseSpaceGrid(np.geomspace(0.2, 4.0, 24), np.linspace(-6, 6, 31))
t = time.time()
wig = ps.wigner_aw(phi1, grid)
print("wigner grid ok, residuals:", wig.residuals, "dt=%.2f" % (time.time() - t))

# pointwise reference at (q,p)=(1.2, 0.7) by direct adaptive integral
from affinequant.quadrature import adaptive_integrate
q0, p0 = 1.2, 0.7
ref, _ = adaptive_integrate(
    lambda x: 2.0 * np.real(np.conjugate(phi1(x)) * np.exp(1j * p0 * (x - q0 * q0 / x))
                            * (q0 / x) * phi1(q0 * q0 / x)),
    1e-12, math.inf, rel_tol=1e-11)
g2 = ps.PhaseSpaceGrid(np.array([q0]), np.array([p0]))
got = ps.wigner_aw(phi1, g2).values[0, 0]
print("wigner point: got %.12f ref %.12f diff %.2e" % (got, ref, abs(got - ref)))

# p-marginal at a few q
t = time.time()
qs = np.array([0.05, 0.3, 1.0, 2.5, 6.0])
marg = ps.wigner_marginal_p(phi1, qs)
truth = np.abs(phi1(qs)) ** 2
print("marginal_p diffs:", np.abs(marg - truth), "dt=%.2f" % (time.time() - t))

# q-marginal at a few p vs momentum density
t = time.time()
pnodes = np.array([-3.0, -0.5, 0.0, 1.0, 4.0])
mq = ps.wigner_marginal_q(phi1, pnodes)
md = ps.momentum_density(phi1, pnodes)
print("marginal_q:", mq)
print("momentum  :", md)
print("diffs:", np.abs(mq - md), "dt=%.2f" % (time.time() - t))

# normalization
t = time.time()
mass = ps.wigner_normalization(phi1)
print("mass: %.9f (err %.2e) dt=%.2f" % (mass, abs(mass - 1.0), time.time() - t))

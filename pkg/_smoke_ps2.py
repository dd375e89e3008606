import math
import time

import numpy as np

from affinequant import phase_space as ps
from affinequant import quantize as qz
from affinequant import weights as wt
from affinequant.affine_group import GroupElement
from affinequant.representation import (
    BasisSpec, WaveFunction, laguerre_ground, fiducial_constant,
)

c1 = 2.0 / math.pi ** 0.25
phi1 = WaveFunction(func=lambda x: c1 * x * np.exp(-0.5 * x * x),
                    decay="gaussian", label="phi1", is_real=True)

# --- acs_symbol: <psi | psi> = 1 at identity
psi = laguerre_ground(2.0)
gid = GroupElement(1.0, 0.0)
print("acs_symbol identity:", ps.acs_symbol(psi, psi, gid))

# --- acs_density nonneg + grid route vs pointwise symbol
grid = ps.PhaseSpaceGrid(np.geomspace(0.3, 3.0, 7), np.linspace(-2, 2, 5))
dens = ps.acs_density(phi1, psi, grid)
i, j = 3, 2
g = GroupElement(float(grid.q_nodes[i]), float(grid.p_nodes[j]))
w_direct = ps.acs_symbol(phi1, psi, g)
from affinequant.representation import admissibility_constant
rho_direct = abs(w_direct) ** 2 / (2 * math.pi * admissibility_constant(psi))
print("acs_density point %.12f vs direct %.12f diff %.2e"
      % (dens.values[i, j], rho_direct, abs(dens.values[i, j] - rho_direct)))

# --- closed lower symbols, aw
aw = wt.builtin("aw")
g = GroupElement(0.8, 1.3)
obs_p2 = qz.Observable.momentum_power(2)
print("aw p^2 lower:", ps.lower_symbol(aw, obs_p2, g),
      "expect", 1.3 ** 2 + 1.0 / (4 * 0.8 ** 2))
obs_u = qz.Observable.position_fn(lambda x: np.sqrt(x))
print("aw sqrt(q) lower:", ps.lower_symbol(aw, obs_u, g), "expect", math.sqrt(0.8))
obs_d = qz.Observable.dilation()
print("aw qp lower:", ps.lower_symbol(aw, obs_d, g), "expect", 0.8 * 1.3)

# --- closed lower symbols, ACS ground alpha=2
acs2 = wt.builtin("acs", alpha=2.0)
obs_q = qz.Observable.position_fn(lambda x: x)
print("acs q lower:", ps.lower_symbol(acs2, obs_q, g), "expect", 3.0 * 0.8)
val = ps.lower_symbol(acs2, obs_p2, g)
cpsi = val - 1.3 ** 2
print("acs p^2 lower: c(psi)/q^2 -> c(psi) = %.9f expect %.9f"
      % (cpsi * 0.8 ** 2, 1.0 / (2.0 * (2.0 - 1.0))))
print("acs qp lower:", ps.lower_symbol(acs2, obs_d, g), "expect", 3.0 * 0.8 * 1.3)

# alpha=3: c(psi) = 1/4, q factor (3+1)/(3-1) = 2
acs3 = wt.builtin("acs", alpha=3.0)
print("acs3 q lower:", ps.lower_symbol(acs3, obs_q, g), "expect", 2.0 * 0.8)
val3 = ps.lower_symbol(acs3, obs_p2, g)
print("acs3 c(psi):", (val3 - 1.3 ** 2) * 0.8 ** 2, "expect 0.25")

# --- trace route vs closed, aw, p^2
basis = BasisSpec(2.0, 50)
t = time.time()
a_p2 = qz.quantize(aw, obs_p2, basis).matrix.entries
for (qq, pp) in [(1.0, 0.5), (0.7, -1.2), (2.0, 0.0), (1.4, 2.0)]:
    gv = GroupElement(qq, pp)
    tr = ps.lower_symbol_trace(basis, a_p2, gv)
    closed = pp ** 2 + 1.0 / (4 * qq ** 2)
    print("trace aw p2 at (%.2f,%.2f): %.8f vs %.8f diff %.2e imag %.1e"
          % (qq, pp, tr.real, closed, abs(tr.real - closed), abs(tr.imag)))
print("trace dt=%.2f" % (time.time() - t))

# --- trace route with fiducial (ACS) vs closed
t = time.time()
a_q = qz.quantize(acs2, qz.Observable.position_fn(lambda x: x), basis).matrix.entries
for (qq, pp) in [(1.0, 0.5), (0.7, -1.2)]:
    gv = GroupElement(qq, pp)
    tr = ps.lower_symbol_trace(basis, a_q, gv, fiducial=acs2.fiducial)
    closed = 3.0 * qq
    print("trace acs q at (%.2f,%.2f): %.8f vs %.8f diff %.2e"
          % (qq, pp, tr.real, closed, abs(tr.real - closed)))
print("fiducial trace dt=%.2f" % (time.time() - t))

# --- Fubini-Study oracle with e_0^(2) = x e^{-x/2}/sqrt(2)
fs = ps.fubini_study(laguerre_ground(2.0))
print("FS: c_m3=%.9f (3) c_m4=%.9f (12) L=%.9f (0.75)"
      % (fs["c_m3"], fs["c_m4"], fs["L"]))
print("metric at q=2:", fs["metric"](2.0, 0.0),
      "expect dp2=24, dq2=0.375")

import json
import math
import os
import shutil
import time

import numpy as np

from affinequant import halfosc, phase_space
from affinequant.representation import BasisSpec, laguerre_ground

grid = phase_space.PhaseSpaceGrid(
    q_nodes=np.geomspace(0.05, 8.0, 40), p_nodes=np.linspace(-8.0, 8.0, 48))

for n in (1, 2):
    t0 = time.time()
    bundle = halfosc.figure_data(n, grid)
    dt = time.time() - t0
    keys = sorted(bundle.keys())
    print("n=%d keys %s (%.1fs)" % (n, keys, dt))
    assert keys == sorted(["n", "energy", "grid", "density", "wigner",
                           "wavelet_re", "wavelet_im", "acs_density",
                           "reconstructed_density", "momentum_density"])
    dq = np.gradient(grid.q_nodes)
    l1 = np.sum(np.abs(bundle["reconstructed_density"] - bundle["density"]) * dq)
    print("  reconstruction L1 err %.2e" % l1)
    assert l1 < 1e-5
    print("  wigner min %.4f (negative for n>=2: %s)"
          % (bundle["wigner"].values.min(), bundle["wigner"].values.min() < -1e-3))
    assert bundle["acs_density"].values.min() >= 0.0
    if n == 2:
        assert bundle["wigner"].values.min() < -1e-3

outdir = "/tmp/ho_bundle"
shutil.rmtree(outdir, ignore_errors=True)
mpath = halfosc.write_figure_bundle(bundle, outdir, tolerances={"mass": 1e-6})
manifest = json.load(open(mpath))
print("manifest n=%d energy=%s files=%d" % (manifest["n"], manifest["energy"],
                                            len(manifest["files"])))
import hashlib
for name, digest in manifest["files"].items():
    p = os.path.join(outdir, name)
    assert os.path.exists(p), name
    actual = hashlib.sha256(open(p, "rb").read()).hexdigest()
    assert actual == digest, name
print("checksums verified:", sorted(manifest["files"]))

# stationarity: phi_1 under the aw-quantized half-oscillator Hamiltonian
basis = BasisSpec(alpha=2.0, n_max=80)
h_op = halfosc.hamiltonian_matrix(basis)
phi1 = halfosc.eigenstate_analytic(1).wavefunction
fid = laguerre_ground(2.0)
small = phase_space.PhaseSpaceGrid(q_nodes=np.geomspace(0.2, 5.0, 24),
                                   p_nodes=np.linspace(-5.0, 5.0, 24))
t0 = time.time()
frames = phase_space.evolve_density(phi1, h_op, [0.0, 0.7, 1.4], fid, small)
drift = max(np.max(np.abs(f.values - frames[0].values)) for f in frames[1:])
print("stationarity drift %.2e (%.1fs)" % (drift, time.time() - t0))
assert drift <= 1e-6

"""Backend parity: the compiled kernels and the numpy fallback must agree
to near machine precision on every exported entry point, and the
environment switch must select the requested implementation."""

import os
import subprocess
import sys

import numpy as np
import pytest

from affinequant import _kernels
from affinequant._kernels import _py

native = pytest.importorskip(
    "affinequant._kernels._native",
    reason="compiled extension not built in this environment")

RNG = np.random.default_rng(20260815)


def test_backend_reports_a_known_name():
    assert _kernels.BACKEND in ("native", "python")


def test_laguerre_table_parity():
    x = RNG.uniform(0.01, 40.0, size=64)
    for alpha in (0.5, 2.0, 4.5):
        a = native.laguerre_table(alpha, 12, x)
        b = _py.laguerre_table(alpha, 12, x)
        assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(b)))


def test_jacobi_seq_parity():
    for (a, b) in [(0.0, 2.0), (1.5, 0.5)]:
        for y in (-0.9, -0.2, 0.4, 0.99):
            va = np.asarray(native.jacobi_seq(a, b, y, 14))
            vb = np.asarray(_py.jacobi_seq(a, b, y, 14))
            assert np.max(np.abs(va - vb)) < 1e-12 * max(1.0, np.max(np.abs(vb)))


def test_u_matrix_parity():
    for (q, p) in [(0.7, -0.9), (1.15, 0.2), (2.4, 1.3)]:
        a = np.asarray(native.u_matrix(2.0, 16, q, p))
        b = np.asarray(_py.u_matrix(2.0, 16, q, p))
        assert np.max(np.abs(a - b)) < 1e-12


def test_u_diag_parity():
    for (q, p) in [(0.5, 0.3), (1.8, -1.1)]:
        a = np.asarray(native.u_diag(2.5, 20, q, p))
        b = np.asarray(_py.u_diag(2.5, 20, q, p))
        assert np.max(np.abs(a - b)) < 1e-12


def test_cos_transform_parity():
    coeff = RNG.standard_normal(128)
    s = np.linspace(0.0, 6.0, 128)
    omega = np.linspace(0.0, 9.0, 40)
    a = np.asarray(native.cos_transform(coeff, s, omega))
    b = np.asarray(_py.cos_transform(coeff, s, omega))
    assert np.max(np.abs(a - b)) < 1e-11


def test_phase_transform_parity():
    env = (RNG.standard_normal(96) + 1j * RNG.standard_normal(96))
    env = np.ascontiguousarray(env, dtype=np.complex128)
    x = np.linspace(0.01, 8.0, 96)
    p = np.linspace(-6.0, 6.0, 33)
    a = np.asarray(native.phase_transform(env, x, p))
    b = np.asarray(_py.phase_transform(env, x, p))
    assert np.max(np.abs(a - b)) < 1e-11


def _backend_of(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("AFFINEQUANT_BACKEND", None)
    else:
        env["AFFINEQUANT_BACKEND"] = env_value
    out = subprocess.run(
        [sys.executable, "-c",
         "from affinequant._kernels import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env)
    return out


def test_environment_selects_python_backend():
    out = _backend_of("python")
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


def test_environment_selects_native_backend():
    out = _backend_of("native")
    assert out.returncode == 0
    assert out.stdout.strip() == "native"


def test_environment_rejects_unknown_backend():
    out = _backend_of("fortran")
    assert out.returncode != 0
    assert "AFFINEQUANT_BACKEND" in out.stderr

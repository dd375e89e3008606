"""Covariant integral quantization on the positive half-plane.

Subpackages follow the computation pipeline: special functions and
quadrature underneath, the affine group and its unitary representation,
weight functions and the quantization map, then phase-space portraits and
the half-oscillator worked example.  ``affinequant.acceptance`` bundles
the end-to-end checks the CLI ``verify`` subcommand runs.
"""

from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]

"""Special functions: orthogonal polynomials, modified Bessel, gamma.

Polynomial families are evaluated by their forward three-term recurrences,
which are stable on the natural domains used here (Laguerre on x >= 0,
Jacobi on [-1, 1], Hermite on the real line).  Modified Bessel functions
are exposed in exponentially scaled form as the primitive API because the
places they enter (thermal kernels, convolution weights) need products in
which the exponentials cancel analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from . import _kernels
from .errors import ParameterDomainError, PoleError

__all__ = [
    "PolyFamily",
    "orthopoly_eval",
    "bessel",
    "bessel_scaled",
    "gamma_fn",
    "log_gamma",
]


@dataclass(frozen=True)
class PolyFamily:
    """Tagged orthogonal-polynomial family.

    ``kind`` is one of ``"laguerre"`` (parameter ``alpha``), ``"jacobi"``
    (parameters ``a``, ``b``) or ``"hermite"`` (no parameters).
    """

    kind: str
    alpha: float = 0.0
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.kind == "laguerre":
            if not self.alpha > -1.0:
                raise ParameterDomainError(
                    f"Laguerre parameter must exceed -1, got {self.alpha}")
        elif self.kind == "jacobi":
            if not (self.a > -1.0 and self.b > -1.0):
                raise ParameterDomainError(
                    f"Jacobi parameters must exceed -1, got ({self.a}, {self.b})")
        elif self.kind != "hermite":
            raise ParameterDomainError(f"unknown polynomial family {self.kind!r}")

    @classmethod
    def laguerre(cls, alpha):
        return cls("laguerre", alpha=float(alpha))

    @classmethod
    def jacobi(cls, a, b):
        return cls("jacobi", a=float(a), b=float(b))

    @classmethod
    def hermite(cls):
        return cls("hermite")


def _hermite_values(n, x):
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h_cur = 2.0 * x
    for k in range(2, n + 1):
        h_prev, h_cur = h_cur, 2.0 * x * h_cur - 2.0 * (k - 1) * h_prev
    return h_cur


def orthopoly_eval(family, n, x):
    """Evaluate the degree-n member of an orthogonal family at x.

    Vectorized over ``x``.  Scalar input returns a float.
    """
    if n < 0 or n != int(n):
        raise ParameterDomainError(f"degree must be a nonnegative integer, got {n}")
    n = int(n)
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if family.kind == "laguerre":
        vals = _kernels.laguerre_table(family.alpha, n, np.ascontiguousarray(xa))[n]
    elif family.kind == "jacobi":
        vals = np.array([_kernels.jacobi_seq(family.a, family.b, float(t), n)[n]
                         for t in xa])
    else:
        vals = _hermite_values(n, xa)
    return float(vals[0]) if scalar else vals


def bessel_scaled(kind, order, x):
    """Scaled modified Bessel values: e^(-x) I_order(x) or e^(x) K_order(x).

    These are the overflow-safe primitives; ``bessel`` wraps them.
    """
    if kind not in ("I", "K"):
        raise ParameterDomainError(f"kind must be 'I' or 'K', got {kind!r}")
    if order < 0:
        raise ParameterDomainError(f"order must be >= 0, got {order}")
    xa = np.asarray(x, dtype=np.float64)
    if np.any(xa <= 0.0):
        raise ParameterDomainError("argument must be positive")
    if kind == "I":
        out = _sp.ive(order, xa)
    else:
        out = _sp.kve(order, xa)
    return float(out) if np.isscalar(x) else out


def bessel(kind, order, x):
    """Unscaled I_order(x) or K_order(x); overflows gracefully to inf/0."""
    xa = np.asarray(x, dtype=np.float64)
    scaled = bessel_scaled(kind, order, x)
    factor = np.exp(xa) if kind == "I" else np.exp(-xa)
    out = scaled * factor
    return float(out) if np.isscalar(x) else out


def gamma_fn(x):
    """Gamma function; rejects evaluation at the poles."""
    xa = np.asarray(x, dtype=np.float64)
    at_pole = (xa <= 0.0) & (xa == np.floor(xa))
    if np.any(at_pole):
        raise PoleError(f"gamma pole at nonpositive integer argument {x}")
    out = _sp.gamma(xa)
    return float(out) if np.isscalar(x) else out


def log_gamma(x):
    """log Gamma(x) for x > 0 (used for large factorial ratios)."""
    xa = np.asarray(x, dtype=np.float64)
    if np.any(xa <= 0.0):
        raise ParameterDomainError("log_gamma requires positive argument")
    out = _sp.gammaln(xa)
    return float(out) if np.isscalar(x) else out


def log_factorial_ratio(num_offsets, den_offsets, n):
    """log of prod Gamma(n + a_i + 1) / prod Gamma(n + b_j + 1).

    Helper for matrix-element prefactors; keeps all factorial ratios in
    log space per the stability policy.
    """
    val = 0.0
    for a in num_offsets:
        val += _sp.gammaln(n + a + 1.0)
    for b in den_offsets:
        val -= _sp.gammaln(n + b + 1.0)
    return val


def mbessel_halfline_integral(gamma, mu, alpha):
    """Closed form of the half-line integral of (1/x) e^(-gamma x) I_alpha(mu x).

    Equals (1/alpha) [gamma/mu - sqrt(gamma^2/mu^2 - 1)]^alpha, valid for
    gamma > mu > 0 and alpha > 0.
    """
    if not (gamma > mu > 0.0):
        raise ParameterDomainError(
            f"requires gamma > mu > 0, got gamma={gamma}, mu={mu}")
    if alpha <= 0.0:
        raise ParameterDomainError(f"requires alpha > 0, got {alpha}")
    r = gamma / mu
    return (r - math.sqrt(r * r - 1.0)) ** alpha / alpha

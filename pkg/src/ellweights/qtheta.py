"""Truncated q-series evaluation of the skew Jacobi theta function.

The building block is

    theta(x) = (x^(1/2) - x^(-1/2)) * phi(q*x) * phi(q/x),
    phi(x)   = prod_{s>=0} (1 - q^s x),

with |q| < 1.  All multiplicative arguments are handled as complex
logarithms: x = exp(lx) and x^(1/2) := exp(lx/2), so inversion is exact
negation and the parity theta(1/x) = -theta(x) holds to rounding instead
of breaking on a branch cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import RangeError

#: machine epsilon for double precision
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class LogValue:
    """Complex logarithm of a multiplicative parameter.

    ``LogValue(l)`` represents x = exp(l); negating the log inverts the
    value exactly, adding logs multiplies values.
    """

    value: complex

    def __neg__(self) -> "LogValue":
        return LogValue(-self.value)

    def __add__(self, other) -> "LogValue":
        return LogValue(self.value + _as_log(other))

    def __sub__(self, other) -> "LogValue":
        return LogValue(self.value - _as_log(other))

    def exp(self) -> complex:
        return cmath.exp(self.value)

    def half_power(self) -> complex:
        """exp(l/2), the branch-fixed square root of the value."""
        return cmath.exp(self.value / 2)


def _as_log(lx) -> complex:
    return lx.value if isinstance(lx, LogValue) else complex(lx)


def default_trunc(q: complex) -> int:
    """Default product truncation: tail below 1e-36 of the leading factor
    for |q| <= 0.5, never fewer than 24 factors."""
    aq = abs(q)
    if aq <= 0.0 or aq >= 1.0:
        raise ValueError(f"|q| must lie in (0, 1), got {aq}")
    return max(24, math.ceil(36.0 / -math.log10(aq)))


@dataclass(frozen=True)
class ThetaContext:
    """Evaluation environment for all q-series.

    Attributes
    ----------
    log_q : complex
        Logarithm of the modular parameter; Re(log_q) < 0 so |q| < 1.
    trunc : int
        Number of retained factors in each infinite product.
    tol : float
        Acceptance tolerance for identity residuals.
    log_range : float
        Overflow guard: |Re lx| above this raises RangeError.
    pole_tol : float
        Modulus below which a theta denominator counts as a pole.
    """

    log_q: complex
    trunc: int
    tol: float = 1e-8
    log_range: float = 32.0
    pole_tol: float = 1e-12

    def __post_init__(self):
        if not abs(cmath.exp(self.log_q)) < 1.0:
            raise ValueError("|q| = |exp(log_q)| must be strictly below 1")
        if self.trunc < 1 or self.tol <= 0.0:
            raise ValueError("trunc must be positive and tol > 0")
        # dropped tail of phi must fall below machine epsilon
        need = math.ceil(math.log(_EPS) / self.log_q.real)
        if self.trunc < need:
            raise ValueError(f"trunc={self.trunc} too small for |q|: need >= {need}")

    @property
    def q(self) -> complex:
        return cmath.exp(self.log_q)

    @classmethod
    def create(cls, q: complex = 0.3, trunc: int | None = None,
               tol: float = 1e-8, **kwargs) -> "ThetaContext":
        """Build a context from the modular parameter itself."""
        q = complex(q)
        if trunc is None:
            trunc = default_trunc(q)
        return cls(log_q=cmath.log(q), trunc=trunc, tol=tol, **kwargs)


@lru_cache(maxsize=32)
def _q_powers(log_q: complex, trunc: int) -> np.ndarray:
    # q^s for s = 0 .. trunc-1
    return np.exp(log_q * np.arange(trunc))


def phi(ctx: ThetaContext, lx) -> complex:
    """Truncated q-Pochhammer product prod_{s=0}^{trunc-1} (1 - q^s exp(lx))."""
    w = _as_log(lx)
    if abs(w.real) > ctx.log_range:
        raise RangeError(f"|Re log x| = {abs(w.real):.3g} exceeds {ctx.log_range}")
    x = cmath.exp(w)
    return complex(np.prod(1.0 - _q_powers(ctx.log_q, ctx.trunc) * x))


def theta(ctx: ThetaContext, lx) -> complex:
    """Skew Jacobi theta function of x = exp(lx)."""
    w = _as_log(lx)
    if abs(w.real) > ctx.log_range:
        raise RangeError(f"|Re log x| = {abs(w.real):.3g} exceeds {ctx.log_range}")
    qs = _q_powers(ctx.log_q, ctx.trunc)
    xp = cmath.exp(ctx.log_q + w)
    xm = cmath.exp(ctx.log_q - w)
    front = cmath.exp(w / 2) - cmath.exp(-w / 2)
    return front * complex(np.prod((1.0 - qs * xp) * (1.0 - qs * xm)))

"""Parameter-swap symmetry of the restriction matrix and the interpolation
function joining the weight functions of the two dual parameter groups.

The symmetry states that an entry at (I, J) equals, up to the global sign
(-1)^(n(n-1)/2), the entry at the reflected-inverse indices evaluated after
swapping the two parameter groups: z slots take the reversed mu values and
mu slots take the inverted z values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import IllConditionedError
from .permcomb import Permutation, all_permutations, compose, mirror_index
from .qtheta import ThetaContext
from .restriction import build_A_direct, restriction_point
from .weightfn import ChernPoint, ParameterPoint, W, weight_terms


def kappa_substitute(p: ParameterPoint) -> ParameterPoint:
    """Swap the two parameter groups: z slot i takes mu at the reversed
    index, mu slot i takes 1/z_i; hbar is unchanged."""
    n = p.n
    return ParameterPoint(
        log_z=tuple(p.log_mu[n - 1 - i] for i in range(n)),
        log_mu=tuple(-p.log_z[i] for i in range(n)),
        log_h=p.log_h)


def global_sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def _entry_with_scale(I: Permutation, J: Permutation, p: ParameterPoint,
                      ctx: ThetaContext) -> tuple[complex, float]:
    terms = weight_terms(I, restriction_point(J, p), p, ctx, at_restriction=True)
    return sum(terms), max(abs(t) for t in terms)


def mirror_residual(I: Permutation, J: Permutation, p: ParameterPoint,
                    ctx: ThetaContext) -> float:
    """Normalized residual |LHS - RHS| / (|LHS| + |RHS| + S) of the
    parameter-swap identity at (I, J), where S is the largest term modulus
    met while evaluating either side."""
    n = len(I)
    lhs, s1 = _entry_with_scale(I, J, p, ctx)
    rhs_raw, s2 = _entry_with_scale(mirror_index(J), mirror_index(I),
                                    kappa_substitute(p), ctx)
    rhs = global_sign(n) * rhs_raw
    denom = abs(lhs) + abs(rhs) + max(s1, s2)
    if denom == 0.0:
        return 0.0   # both sides vanish identically (triangular zeros)
    return abs(lhs - rhs) / denom


@dataclass(frozen=True)
class DualityInterface:
    """Evaluator for the two-slot interpolation function.

    Holds the inverse of the restriction matrix built with the Kahler slots
    replaced by the dual equivariant parameters; evaluations share it
    read-only.
    """

    p: ParameterPoint                      # log_z = z, log_h = hbar
    log_z_dual: tuple[complex, ...]        # z'
    dual_log_mu: tuple[complex, ...]       # mu arguments of the dual-side W
    ctx: ThetaContext

    @classmethod
    def create(cls, p: ParameterPoint, ctx: ThetaContext,
               log_z_dual=None, dual_log_mu=None) -> "DualityInterface":
        """By default z' is read from p.log_mu and the dual-side Kahler
        arguments are 1/z."""
        if log_z_dual is None:
            log_z_dual = p.log_mu
        if dual_log_mu is None:
            dual_log_mu = tuple(-v for v in p.log_z)
        return cls(p=p, log_z_dual=tuple(log_z_dual),
                   dual_log_mu=tuple(dual_log_mu), ctx=ctx)

    @cached_property
    def _base_point(self) -> ParameterPoint:
        return ParameterPoint(log_z=self.p.log_z, log_mu=self.log_z_dual,
                              log_h=self.p.log_h)

    @cached_property
    def _dual_point(self) -> ParameterPoint:
        return ParameterPoint(log_z=self.log_z_dual[::-1],
                              log_mu=self.dual_log_mu, log_h=self.p.log_h)

    @cached_property
    def _inverse(self) -> np.ndarray:
        A = build_A_direct(Permutation.identity(self.p.n), self._base_point,
                           self.ctx).entries
        inv = np.linalg.inv(A)
        cond = np.linalg.norm(A, 1) * np.linalg.norm(inv, 1)
        if cond > 1.0 / self.ctx.tol:
            raise IllConditionedError(f"condition estimate {cond:.3e}")
        return inv

    def value(self, t: ChernPoint, t_prime: ChernPoint) -> complex:
        """The interpolation double sum at Chern points (t, t')."""
        n = self.p.n
        order = all_permutations(n)
        inv = self._inverse
        w_first = [W(J, t, self._base_point, self.ctx) for J in order]
        w_second = [W(mirror_index(I), t_prime, self._dual_point, self.ctx)
                    for I in order]
        total = 0.0 + 0j
        for i in range(len(order)):
            for j in range(len(order)):
                total += inv[i, j] * w_first[j] * w_second[i]
        return global_sign(n) * total


def interface_value(t: ChernPoint, t_prime: ChernPoint, p: ParameterPoint,
                    dual_log_mu, ctx: ThetaContext) -> complex:
    """One-shot evaluation of the interpolation function; p carries z in its
    z slots, z' in its mu slots and hbar.  Pass dual_log_mu=None for the
    default dual-side Kahler arguments 1/z."""
    return DualityInterface.create(p, ctx, dual_log_mu=dual_log_mu).value(t, t_prime)


def interface_first_restriction(iface: DualityInterface, I: Permutation) -> ChernPoint:
    """Second-slot fixed point: restriction point of I^{-1} in the dual
    equivariant parameters."""
    dual = ParameterPoint(log_z=iface.log_z_dual, log_mu=iface.log_z_dual,
                          log_h=iface.p.log_h)
    return restriction_point(I.inverse(), dual)


def interface_second_restriction(iface: DualityInterface, I: Permutation) -> ChernPoint:
    """First-slot fixed point: restriction point of I^{-1} in z."""
    return restriction_point(I.inverse(), iface.p)


def interpolation_residuals(iface: DualityInterface, I: Permutation,
                            t: ChernPoint, t_prime: ChernPoint) -> tuple[float, float]:
    """Residuals of the two fixed-point interpolation identities at I with
    the supplied generic Chern points."""
    n = iface.p.n
    sgn = global_sign(n)
    lhs1 = iface.value(t, interface_first_restriction(iface, I))
    rhs1 = W(I, t, iface._base_point, iface.ctx)
    r1 = abs(lhs1 - rhs1) / (abs(lhs1) + abs(rhs1) + 1e-300)
    lhs2 = iface.value(interface_second_restriction(iface, I), t_prime)
    comp = compose(I, Permutation.longest(n))   # word n + 1 - I_j
    rhs2 = sgn * W(comp, t_prime, iface._dual_point, iface.ctx)
    r2 = abs(lhs2 - rhs2) / (abs(lhs2) + abs(rhs2) + 1e-300)
    return r1, r2

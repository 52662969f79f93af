"""Elliptic weight functions and the diagonal theta product.

W_I is assembled from the case-analysis factor psi over consecutive
Chern-root levels, divided by the level-internal theta pairs, then
symmetrized within each level.  The symmetrization is the plain
(unnormalized) sum over the product of level permutation groups; the
closed n = 2 forms come out of that normalization on the nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PoleError
from .permcomb import Permutation, compose_values, fixed_point_tables, mirror_index
from .qtheta import ThetaContext, theta

#: theta-denominator modulus below which a random point counts as resonant
RESONANCE_TOL = 1e-4


@dataclass(frozen=True)
class ParameterPoint:
    """Logs of the equivariant parameters z, the Kahler parameters mu and
    the symplectic weight hbar."""

    log_z: tuple[complex, ...]
    log_mu: tuple[complex, ...]
    log_h: complex

    def __post_init__(self):
        if len(self.log_z) != len(self.log_mu):
            raise ValueError("z and mu must have equal length")
        object.__setattr__(self, "log_z", tuple(complex(v) for v in self.log_z))
        object.__setattr__(self, "log_mu", tuple(complex(v) for v in self.log_mu))
        object.__setattr__(self, "log_h", complex(self.log_h))

    @property
    def n(self) -> int:
        return len(self.log_z)

    def z(self, i: int) -> complex:
        """log z_i, 1-based."""
        return self.log_z[i - 1]

    def mu(self, i: int) -> complex:
        return self.log_mu[i - 1]

    def permute_z(self, sigma: Permutation) -> "ParameterPoint":
        """Slot permutation z_sigma = (z_{sigma(1)}, ..., z_{sigma(n)})."""
        return ParameterPoint(
            log_z=tuple(self.log_z[s - 1] for s in sigma.word),
            log_mu=self.log_mu, log_h=self.log_h)

    def permute_mu(self, sigma: Permutation) -> "ParameterPoint":
        return ParameterPoint(
            log_z=self.log_z,
            log_mu=tuple(self.log_mu[s - 1] for s in sigma.word),
            log_h=self.log_h)

    def swap_z(self, k: int) -> "ParameterPoint":
        """Exchange z_k and z_{k+1}."""
        lz = list(self.log_z)
        lz[k - 1], lz[k] = lz[k], lz[k - 1]
        return ParameterPoint(log_z=tuple(lz), log_mu=self.log_mu, log_h=self.log_h)

    def swap_mu(self, k: int) -> "ParameterPoint":
        lm = list(self.log_mu)
        lm[k - 1], lm[k] = lm[k], lm[k - 1]
        return ParameterPoint(log_z=self.log_z, log_mu=tuple(lm), log_h=self.log_h)

    def to_json(self) -> dict:
        return {
            "log_z": [[v.real, v.imag] for v in self.log_z],
            "log_mu": [[v.real, v.imag] for v in self.log_mu],
            "log_h": [self.log_h.real, self.log_h.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParameterPoint":
        return cls(
            log_z=tuple(complex(r, i) for r, i in data["log_z"]),
            log_mu=tuple(complex(r, i) for r, i in data["log_mu"]),
            log_h=complex(*data["log_h"]))


def resonance_margin(p: ParameterPoint, ctx: ThetaContext) -> float:
    """Smallest modulus among the theta denominators a generic evaluation
    can meet: theta of z_i/z_j, mu_i/mu_j (i != j) and their hbar-shifted
    versions including theta(hbar) itself."""
    n = p.n
    lh = p.log_h
    vals = []
    for i in range(n):
        for j in range(n):
            if i != j:
                vals.append(abs(theta(ctx, p.log_z[i] - p.log_z[j])))
                vals.append(abs(theta(ctx, p.log_mu[i] - p.log_mu[j])))
            vals.append(abs(theta(ctx, lh + p.log_z[i] - p.log_z[j])))
            vals.append(abs(theta(ctx, lh + p.log_mu[i] - p.log_mu[j])))
    return min(vals)


def is_generic(p: ParameterPoint, ctx: ThetaContext,
               threshold: float = RESONANCE_TOL) -> bool:
    return resonance_margin(p, ctx) >= threshold


def check_generic(p: ParameterPoint, ctx: ThetaContext,
                  threshold: float = RESONANCE_TOL) -> None:
    margin = resonance_margin(p, ctx)
    if margin < threshold:
        raise PoleError(f"parameter point is resonant: margin {margin:.3e}")


@dataclass(frozen=True)
class ChernPoint:
    """Chern-root arguments: level k holds the k logs t^(k)_1 .. t^(k)_k
    for k = 1 .. n-1."""

    levels: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        for k, lv in enumerate(self.levels, start=1):
            if len(lv) != k:
                raise ValueError(f"level {k} must hold {k} entries, got {len(lv)}")
        object.__setattr__(
            self, "levels",
            tuple(tuple(complex(v) for v in lv) for lv in self.levels))

    @property
    def n(self) -> int:
        return len(self.levels) + 1

    def permute_level(self, k: int, perm: tuple[int, ...]) -> "ChernPoint":
        """Reorder the entries of level k by a 0-based index tuple."""
        levels = list(self.levels)
        levels[k - 1] = tuple(levels[k - 1][i] for i in perm)
        return ChernPoint(tuple(levels))


def psi(I: Permutation, k: int, a: int, c: int, lx,
        p: ParameterPoint, ctx: ThetaContext) -> complex:
    """Case-analysis theta factor comparing the c-th ordered index at level
    k+1 against the a-th ordered index at level k; lx is the log of the
    Chern-root ratio it multiplies."""
    n = len(I)
    if not (1 <= a <= k <= n - 1 and 1 <= c <= k + 1):
        raise ValueError(f"indices out of range: k={k}, a={a}, c={c} for n={n}")
    lx = getattr(lx, "value", lx)
    tab = fixed_point_tables(I)
    ia = tab.ordered[k - 1][a - 1]
    ic = tab.ordered[k][c - 1]
    if ic < ia:
        return theta(ctx, p.log_h + lx)
    if ic > ia:
        return theta(ctx, lx)
    exp_h = 1 - (1 if I.word[k] < ia else 0)     # 1 - p_{I,k+1}(ia)
    j = tab.jindex(k, a)
    return theta(ctx, lx + exp_h * p.log_h + p.mu(k + 1) - p.mu(j))


def _level_args(I: Permutation, t: ChernPoint, p: ParameterPoint):
    if t.n != len(I):
        raise ValueError(f"Chern point is for n={t.n}, permutation for n={len(I)}")
    if p.n != len(I):
        raise ValueError("parameter point size mismatch")
    return list(t.levels) + [list(p.log_z)]


def U(I: Permutation, t: ChernPoint, p: ParameterPoint, ctx: ThetaContext,
      at_restriction: bool = False) -> complex:
    """Single (unsymmetrized) alternating product term of the weight function.

    Raises PoleError when a level-internal theta denominator vanishes; at
    flagged restriction points only an exact zero trips the guard.
    """
    n = len(I)
    levels = _level_args(I, t, p)
    guard = 0.0 if at_restriction else ctx.pole_tol
    num = 1.0 + 0j
    den = 1.0 + 0j
    for k in range(1, n):
        tk, tk1 = levels[k - 1], levels[k]
        for a in range(1, k + 1):
            for c in range(1, k + 2):
                num *= psi(I, k, a, c, tk1[c - 1] - tk[a - 1], p, ctx)
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                f = theta(ctx, tk[a - 1] + p.log_h - tk[b - 1]) \
                    * theta(ctx, tk[b - 1] - tk[a - 1])
                if abs(f) <= guard:
                    raise PoleError(
                        f"denominator theta vanished at level {k} (|.|={abs(f):.3e})")
                den *= f
    return num / den


def weight_terms(I: Permutation, t: ChernPoint, p: ParameterPoint,
                 ctx: ThetaContext, at_restriction: bool = False) -> list[complex]:
    """All symmetrization terms of W_I in a fixed deterministic order."""
    n = len(I)
    terms = []
    for perms in itertools.product(
            *[itertools.permutations(range(k)) for k in range(1, n)]):
        tp = t
        for k, perm in enumerate(perms, start=1):
            tp = tp.permute_level(k, perm)
        terms.append(U(I, tp, p, ctx, at_restriction=at_restriction))
    return terms


def W(I: Permutation, t: ChernPoint, p: ParameterPoint, ctx: ThetaContext,
      at_restriction: bool = False) -> complex:
    """Weight function: unnormalized symmetrization of U over every
    Chern-root level."""
    return sum(weight_terms(I, t, p, ctx, at_restriction=at_restriction))


def W_sigma(sigma: Permutation, I: Permutation, t: ChernPoint,
            p: ParameterPoint, ctx: ThetaContext,
            at_restriction: bool = False) -> complex:
    """Chamber-twisted weight function: W at the value-wise composed index
    sigma^{-1} o I with the z slots permuted by sigma."""
    K = compose_values(sigma.inverse(), I)
    return W(K, t, p.permute_z(sigma), ctx, at_restriction=at_restriction)


def P(I: Permutation, log_w: tuple[complex, ...], p: ParameterPoint,
      ctx: ThetaContext) -> complex:
    """Diagonal theta product over pairs k < l: theta(hbar w_{I_l}/w_{I_k})
    when I_l < I_k and theta(w_{I_l}/w_{I_k}) when I_l > I_k, with argument
    slots filled from log_w."""
    n = len(I)
    if len(log_w) != n:
        raise ValueError("argument list size mismatch")
    out = 1.0 + 0j
    for k in range(1, n):
        for l in range(k + 1, n + 1):
            il, ik = I.word[l - 1], I.word[k - 1]
            lx = log_w[il - 1] - log_w[ik - 1]
            out *= theta(ctx, p.log_h + lx) if il < ik else theta(ctx, lx)
    return out


def dual_diagonal_index(I: Permutation) -> Permutation:
    """Index of the mu-side factor in the diagonal closed form."""
    return mirror_index(I)

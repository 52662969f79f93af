"""Felder's elliptic dynamical R-matrix and the two matrix recursions.

Two three-term relations tie neighbouring entries of the restriction
matrix together:

* the exchange relation moves both indices by the value swap s_k and
  exchanges z_k with z_{k+1}; its coefficients are Felder R-matrix entries
  in the Kahler parameters at x = z_k/z_{k+1}, with a, b the positions of
  the values k, k+1 in the row index.  The displayed identity holds when
  those values appear in natural order (a < b), which is exactly the
  orientation the recursion consumes.
* the dual relation moves both indices by the position swap s_k and
  exchanges mu_k with mu_{k+1}; its coefficients are the substituted
  entries at x = mu_{k+1}/mu_k with a = n - J_k + 1, b = n - J_{k+1} + 1
  read off the column word, valid when J_k > J_{k+1}.

Each relation, instantiated twice (once at the swapped point), solves to a
two-term update.  The exchange recursion grows rows upward from the row of
the identity; the dual recursion grows columns downward from the column of
the longest permutation.  Both seeds are fixed by triangularity plus the
closed-form diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, PoleError, ResonanceError
from .permcomb import Permutation, all_permutations
from .qtheta import ThetaContext, theta
from .restriction import A_diagonal, A_direct, RestrictionMatrix
from .weightfn import ParameterPoint

FELDER_KINDS = ("diag_equal", "diag", "exchange")


def felder_R(kind: str, j: int, k: int, lx, p: ParameterPoint,
             ctx: ThetaContext) -> complex:
    """Entry of the elliptic dynamical R-matrix in Felder's normalization.

    ``diag_equal`` is the unit entry with equal upper indices; ``diag`` is
    the x-diagonal entry with distinct indices j, k; ``exchange`` is the
    index-exchanging entry.  lx is the log of the spectral argument x.
    """
    if kind == "diag_equal":
        return 1.0 + 0j
    if kind not in FELDER_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if j == k:
        raise ValueError("distinct indices required for non-trivial entries")
    lx = getattr(lx, "value", lx)
    lmu = p.mu(j) - p.mu(k)
    den_x = theta(ctx, lx + p.log_h)
    den_mu = theta(ctx, lmu)
    if abs(den_x) < ctx.pole_tol or abs(den_mu) < ctx.pole_tol:
        raise PoleError("R-matrix denominator vanished")
    if kind == "diag":
        return theta(ctx, lx) * theta(ctx, p.log_h + lmu) / (den_x * den_mu)
    return theta(ctx, lx + lmu) * theta(ctx, p.log_h) / (den_x * den_mu)


def dual_substitute(p: ParameterPoint) -> ParameterPoint:
    """Parameter substitution defining the dual R-matrix: z slot i takes
    1/mu_i, mu slot i takes z at the reversed index."""
    n = p.n
    return ParameterPoint(
        log_z=tuple(-p.log_mu[i] for i in range(n)),
        log_mu=tuple(p.log_z[n - 1 - i] for i in range(n)),
        log_h=p.log_h)


def dual_R(kind: str, j: int, k: int, lx, p: ParameterPoint,
           ctx: ThetaContext) -> complex:
    """Felder entry evaluated after the dual parameter substitution."""
    return felder_R(kind, j, k, lx, dual_substitute(p), ctx)


# ---------------------------------------------------------------------------
# raw relation residuals
# ---------------------------------------------------------------------------

def exchange_residual(I: Permutation, J: Permutation, k: int,
                      p: ParameterPoint, ctx: ThetaContext,
                      entry=None) -> float:
    """Normalized residual of the exchange relation for the pair
    {I, I value_swap k} at column J.

    The relation is anchored at the member with the values k, k+1 in
    natural order; passing either member gives the same residual.  The
    ``entry`` callable (defaults to direct evaluation) maps
    (I, J, point) -> complex and lets callers reuse precomputed matrices.
    The residual is normalized by the combined modulus of the three terms,
    so cancellation between them does not masquerade as error.
    """
    if entry is None:
        ident = Permutation.identity(len(I))
        entry = lambda I_, J_, p_: A_direct(ident, I_, J_, p_, ctx)
    if I.inverse()(k) > I.inverse()(k + 1):
        I = I.value_swap(k)
    a, b = I.inverse()(k), I.inverse()(k + 1)
    x = p.z(k) - p.z(k + 1)
    r1 = felder_R("diag", a, b, x, p, ctx)
    r2 = felder_R("exchange", b, a, x, p, ctx)
    lhs = entry(I.value_swap(k), J.value_swap(k), p.swap_z(k))
    t1 = r1 * entry(I, J, p)
    t2 = r2 * entry(I.value_swap(k), J, p)
    return abs(lhs - t1 - t2) / (abs(lhs) + abs(t1) + abs(t2) + 1e-300)


def dual_residual(I: Permutation, J: Permutation, k: int,
                  p: ParameterPoint, ctx: ThetaContext,
                  entry=None) -> float:
    """Normalized residual of the dual relation for the column pair
    {J, J pos_swap k} at row I, anchored at the member with J_k > J_{k+1};
    normalization as in exchange_residual."""
    if entry is None:
        ident = Permutation.identity(len(I))
        entry = lambda I_, J_, p_: A_direct(ident, I_, J_, p_, ctx)
    if J(k) < J(k + 1):
        J = J.pos_swap(k)
    n = len(J)
    a, b = n - J(k) + 1, n - J(k + 1) + 1
    x = p.mu(k + 1) - p.mu(k)
    r1 = dual_R("diag", a, b, x, p, ctx)
    r2 = dual_R("exchange", b, a, x, p, ctx)
    lhs = entry(I.pos_swap(k), J.pos_swap(k), p.swap_mu(k))
    t1 = r1 * entry(I, J, p)
    t2 = r2 * entry(I, J.pos_swap(k), p)
    return abs(lhs - t1 - t2) / (abs(lhs) + abs(t1) + abs(t2) + 1e-300)


# ---------------------------------------------------------------------------
# recursion drivers
# ---------------------------------------------------------------------------

@dataclass
class _PrimalBuilder:
    """Row recursion: memoized over (row, column, z-slot permutation)."""

    p: ParameterPoint
    ctx: ThetaContext

    def __post_init__(self):
        self.memo: dict = {}
        self.idw = Permutation.identity(self.p.n)

    def _point(self, pi: Permutation) -> ParameterPoint:
        return self.p.permute_z(pi)

    def value(self, I: Permutation, J: Permutation, pi: Permutation,
              k_choice: int | None = None) -> complex:
        key = (I.word, J.word, pi.word, k_choice)
        if key in self.memo:
            return self.memo[key]
        if I.word == self.idw.word:
            v = A_diagonal(self.idw, self._point(pi), self.ctx) \
                if J.word == self.idw.word else 0.0 + 0j
            self.memo[key] = v
            return v
        k = k_choice if k_choice is not None else I.value_descents()[0]
        Iold = I.value_swap(k)
        a, b = Iold.inverse()(k), Iold.inverse()(k + 1)
        x = self.p.z(pi(k)) - self.p.z(pi(k + 1))
        try:
            r1x = felder_R("diag", a, b, x, self.p, self.ctx)
            r2x = felder_R("exchange", b, a, x, self.p, self.ctx)
            r1i = felder_R("diag", a, b, -x, self.p, self.ctx)
            r2i = felder_R("exchange", b, a, -x, self.p, self.ctx)
        except PoleError as exc:
            raise ResonanceError(f"resonant coefficient at row {I.word}: {exc}")
        den = 1.0 - r2x * r2i
        if abs(den) < self.ctx.pole_tol ** 0.5:
            raise ResonanceError(f"singular exchange update at row {I.word}")
        pis = pi.pos_swap(k)
        v = (r1i * self.value(Iold, J.value_swap(k), pis)
             + r2i * r1x * self.value(Iold, J, pi)) / den
        self.memo[key] = v
        return v


@dataclass
class _DualBuilder:
    """Column recursion: memoized over (row, column, mu-slot permutation)."""

    p: ParameterPoint
    ctx: ThetaContext

    def __post_init__(self):
        self.memo: dict = {}
        self.s0 = Permutation.longest(self.p.n)

    def _point(self, rho: Permutation) -> ParameterPoint:
        return self.p.permute_mu(rho)

    def _coeffs(self, Jlong: Permutation, k: int, rho: Permutation):
        n = self.p.n
        a, b = n - Jlong(k) + 1, n - Jlong(k + 1) + 1
        x = self.p.mu(rho(k + 1)) - self.p.mu(rho(k))
        try:
            r1 = dual_R("diag", a, b, x, self.p, self.ctx)
            r2 = dual_R("exchange", b, a, x, self.p, self.ctx)
        except PoleError as exc:
            raise ResonanceError(f"resonant coefficient at column {Jlong.word}: {exc}")
        return r1, r2

    def value(self, I: Permutation, C: Permutation, rho: Permutation,
              k_choice: int | None = None) -> complex:
        key = (I.word, C.word, rho.word, k_choice)
        if key in self.memo:
            return self.memo[key]
        if C.word == self.s0.word:
            v = A_diagonal(self.s0, self._point(rho), self.ctx) \
                if I.word == self.s0.word else 0.0 + 0j
            self.memo[key] = v
            return v
        k = k_choice if k_choice is not None else C.word_ascents()[0]
        Jlong = C.pos_swap(k)
        rhos = rho.pos_swap(k)
        r1c, r2c = self._coeffs(Jlong, k, rho)
        r1s, r2s = self._coeffs(Jlong, k, rhos)
        den = 1.0 - r2c * r2s
        if abs(den) < self.ctx.pole_tol ** 0.5:
            raise ResonanceError(f"singular dual update at column {C.word}")
        v = (r1s * self.value(I.pos_swap(k), Jlong, rhos)
             + r2s * r1c * self.value(I, Jlong, rho)) / den
        self.memo[key] = v
        return v


def _assemble(builder, p: ParameterPoint, ctx: ThetaContext, provenance: str,
              crosscheck: bool) -> RestrictionMatrix:
    n = p.n
    order = all_permutations(n)
    ident = Permutation.identity(n)
    m = len(order)
    entries = np.empty((m, m), dtype=complex)
    for i, I in enumerate(order):
        for j, J in enumerate(order):
            entries[i, j] = builder.value(I, J, ident)
    matrix = RestrictionMatrix(n=n, sigma=ident, order=order, entries=entries,
                               provenance=provenance, point=p)
    if crosscheck:
        _crosscheck(builder, matrix, ctx, provenance)
    return matrix


def _crosscheck(builder, matrix: RestrictionMatrix, ctx: ThetaContext,
                provenance: str) -> None:
    """Rebuild every row (column) through each alternative descent and
    require agreement."""
    ident = Permutation.identity(matrix.n)
    primal = provenance == "r_recursion"
    for X in matrix.order:
        choices = X.value_descents() if primal else X.word_ascents()
        for k in choices[1:]:
            for Y in matrix.order:
                args = (X, Y, ident, k) if primal else (Y, X, ident, k)
                got = builder.value(*args)
                base = matrix.entry(X, Y) if primal else matrix.entry(Y, X)
                scale = 1.0 + matrix.max_abs()
                if abs(got - base) / scale > ctx.tol:
                    raise ConsistencyError(
                        f"descent k={k} disagrees at ({X.word}, {Y.word}): "
                        f"|delta|/scale = {abs(got - base) / scale:.3e}")


def build_A_by_R_recursion(p: ParameterPoint, ctx: ThetaContext,
                           crosscheck: bool = False) -> RestrictionMatrix:
    """Rebuild the full matrix from the closed-form diagonal using the
    exchange relation, row by row in length order."""
    return _assemble(_PrimalBuilder(p, ctx), p, ctx, "r_recursion", crosscheck)


def build_A_by_dual_recursion(p: ParameterPoint, ctx: ThetaContext,
                              crosscheck: bool = False) -> RestrictionMatrix:
    """Rebuild the full matrix from the closed-form diagonal using the dual
    relation, column by column in co-length order."""
    return _assemble(_DualBuilder(p, ctx), p, ctx, "dual_recursion", crosscheck)

"""Fixed-point restriction of weight functions and the restriction matrix.

The entry at row I, column J is the weight function of I evaluated at the
Chern-root substitution picked out by J (level k takes the z values on J's
k-th ordered index set).  The matrix is lower triangular in Bruhat order
with an explicit theta-product diagonal.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .permcomb import (Permutation, all_permutations, bruhat_leq,
                       compose_values, fixed_point_tables, mirror_index)
from .qtheta import ThetaContext
from .weightfn import ChernPoint, P, ParameterPoint, W_sigma


def restriction_point(J: Permutation, p: ParameterPoint) -> ChernPoint:
    """Chern point with level k holding log z at J's ordered index sets,
    entries in increasing index order."""
    tab = fixed_point_tables(J)
    n = len(J)
    return ChernPoint(tuple(
        tuple(p.z(i) for i in tab.ordered[k]) for k in range(n - 1)))


def A_direct(sigma: Permutation, I: Permutation, J: Permutation,
             p: ParameterPoint, ctx: ThetaContext) -> complex:
    """Matrix entry by direct evaluation: W_sigma at the column's
    restriction point."""
    return W_sigma(sigma, I, restriction_point(J, p), p, ctx, at_restriction=True)


def A_diagonal(I: Permutation, p: ParameterPoint, ctx: ThetaContext) -> complex:
    """Closed form of the diagonal entry: the sign of I times the z-side
    product at index I times the mu-side product at the reflected inverse
    index, with reversed mu arguments."""
    n = len(I)
    M = mirror_index(I)
    return I.sign() * P(I, p.log_z, p, ctx) * P(M, p.log_mu[::-1], p, ctx)


def ao_normalization_factor(sigma: Permutation, I: Permutation,
                            p: ParameterPoint, ctx: ThetaContext) -> complex:
    """Scalar relating the holomorphic normalization to the one whose
    diagonal is the bare z-side product: dividing the sigma-matrix diagonal
    entry at I by this factor leaves P at the value-wise index sigma^{-1} o I
    with z slots permuted by sigma."""
    K = compose_values(sigma.inverse(), I)
    return K.sign() * P(mirror_index(K), p.log_mu[::-1], p, ctx)


@dataclass(frozen=True)
class RestrictionMatrix:
    """Full n! x n! matrix of fixed-point restrictions.

    Rows and columns are indexed by ``order`` (the fixed linear extension
    of Bruhat order: by length, then lexicographically).
    """

    n: int
    sigma: Permutation
    order: tuple[Permutation, ...]
    entries: np.ndarray
    provenance: str
    point: ParameterPoint
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index",
                           {p.word: i for i, p in enumerate(self.order)})
        m = len(self.order)
        if self.entries.shape != (m, m):
            raise ValueError("entry array shape mismatch")

    def index_of(self, I: Permutation) -> int:
        return self._index[I.word]

    def entry(self, I: Permutation, J: Permutation) -> complex:
        return complex(self.entries[self.index_of(I), self.index_of(J)])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def row_scale(self, I: Permutation) -> float:
        return float(np.max(np.abs(self.entries[self.index_of(I)])))

    def max_deviation(self, other: "RestrictionMatrix") -> float:
        """Largest entrywise deviation relative to the joint scale."""
        scale = max(self.max_abs(), other.max_abs(), 1e-300)
        return float(np.max(np.abs(self.entries - other.entries))) / scale

    def zero_pairs(self, tol: float | None = None) -> list[tuple[Permutation, Permutation]]:
        """Observed numerically-zero entries (support is recorded, not
        asserted: vanishing beyond strict Bruhat order is an observation)."""
        out = []
        for i, I in enumerate(self.order):
            thresh = (tol if tol is not None else 1e-8) * (1.0 + self.row_scale(I))
            for j, J in enumerate(self.order):
                if abs(self.entries[i, j]) < thresh:
                    out.append((I, J))
        return out

    def triangularity_violation(self, tol: float) -> float:
        """Worst |entry| / row-scale over pairs with J strictly above I in
        Bruhat order (0.0 when triangular to tolerance)."""
        worst = 0.0
        for i, I in enumerate(self.order):
            scale = 1.0 + self.row_scale(I)
            for j, J in enumerate(self.order):
                if I.word != J.word and bruhat_leq(I, J):
                    worst = max(worst, abs(self.entries[i, j]) / scale)
        return worst

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "sigma": self.sigma.to_json(),
            "order": [p.to_json() for p in self.order],
            "entries": [[[v.real, v.imag] for v in row] for row in self.entries],
            "provenance": self.provenance,
            "point": self.point.to_json(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RestrictionMatrix":
        order = tuple(Permutation.from_json(w) for w in data["order"])
        entries = np.array(
            [[complex(r, i) for r, i in row] for row in data["entries"]],
            dtype=complex)
        return cls(n=data["n"], sigma=Permutation.from_json(data["sigma"]),
                   order=order, entries=entries,
                   provenance=data["provenance"],
                   point=ParameterPoint.from_json(data["point"]))

    def to_csv(self) -> str:
        """Moduli table for quick inspection."""
        labels = ["".join(map(str, p.word)) for p in self.order]
        lines = ["|A|," + ",".join(labels)]
        for i, lab in enumerate(labels):
            vals = ",".join(repr(float(abs(v))) for v in self.entries[i])
            lines.append(f"{lab},{vals}")
        return "\n".join(lines) + "\n"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("ELLWEIGHTS_THREADS", "1")))
    except ValueError:
        return 1


def build_A_direct(sigma: Permutation, p: ParameterPoint, ctx: ThetaContext,
                   threads: int | None = None) -> RestrictionMatrix:
    """Assemble the full matrix by direct evaluation.

    Entries are independent; with threads > 1 they are evaluated in a pool
    but always assembled in the fixed row-major order.
    """
    n = p.n
    order = all_permutations(n)
    pairs = [(I, J) for I in order for J in order]
    threads = default_threads() if threads is None else threads

    errors: list[str] = []

    def one(pair):
        I, J = pair
        try:
            return A_direct(sigma, I, J, p, ctx)
        except Exception as exc:  # aggregate, report after the sweep
            errors.append(f"entry ({I.word}, {J.word}): {exc}")
            return complex("nan")

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, pairs))
    else:
        values = [one(pair) for pair in pairs]

    if errors:
        raise RuntimeError("unevaluable entries:\n" + "\n".join(errors))

    m = len(order)
    entries = np.array(values, dtype=complex).reshape(m, m)
    return RestrictionMatrix(n=n, sigma=sigma, order=order, entries=entries,
                             provenance="direct", point=p)

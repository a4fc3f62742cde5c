"""Exact integer linear algebra: relation matrices and Smith normal form.

Matrices are lists of lists of Python ints so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentation import TrianglePresentation, orbit_representative

__all__ = [
    "AbelianDecomposition",
    "SmithForm",
    "relation_matrix",
    "smith_normal_form",
    "abelianization",
    "matmul",
]

Matrix = list[list[int]]


@dataclass(frozen=True)
class AbelianDecomposition:
    """``Z^free_rank`` plus cyclic factors ``Z/d`` for ``d`` in ``invariant_factors``."""

    invariant_factors: tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    U: Matrix | None = None
    V: Matrix | None = None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def relation_matrix(triples, n: int | None = None) -> Matrix:
    """Exponent sums of the relators, one row per rotation orbit."""
    ts = triples.triples if isinstance(triples, TrianglePresentation) else triples
    if n is None:
        n = triples.plane.n
    rows = []
    for t in sorted({orbit_representative(t) for t in ts}):
        row = [0] * n
        for v in t:
            row[v] += 1
        rows.append(row)
    return rows


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in A]


def _identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(M: Matrix, transforms: bool = False) -> SmithForm:
    """Diagonal ``d1 | d2 | ...`` of ``M`` with ``d >= 0``.

    Pivots are the entries of smallest nonzero absolute value in the remaining
    block, ties to the lowest (row, column).  With ``transforms`` the
    unimodular ``U`` and ``V`` satisfying ``U M V = D`` are returned too.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    k = len(A[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(k) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in A:
            r[dst] += f * r[src]
        if V is not None:
            for r in V:
                r[dst] += f * r[src]

    for t in range(min(m, k)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, k):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty |= A[i][t] != 0
            for j in range(t + 1, k):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty |= A[t][j] != 0
            if dirty:
                continue
            # pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, k))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
        if A[t][t] == 0:
            break
    diag = tuple(A[i][i] for i in range(min(m, k)))
    return SmithForm(diag, U, V)


def abelianization(triples, n: int | None = None) -> AbelianDecomposition:
    """Abelian invariants of the group with one generator per point and a
    relator ``a_x a_y a_z`` per triple."""
    if n is None:
        n = triples.plane.n
    M = relation_matrix(triples, n)
    diag = smith_normal_form(M).diagonal if M else ()
    rank = sum(1 for d in diag if d)
    return AbelianDecomposition(tuple(d for d in diag if d > 1), n - rank)

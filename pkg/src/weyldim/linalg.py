"""Sparse reduced row echelon form over exact rationals.

Rows are dicts {column index: nonzero Fraction}.  Column indices are
plain ints; SMALLER index means higher elimination priority, so callers
encode their column order (the filtration engine uses degree-descending
degrevlex) in the numbering.  The RowSpace container keeps a fully
back-eliminated basis at all times, so the stored rows are literally the
RREF of everything added and reduction against the space is a single
ascending pass.

Everything is Fraction arithmetic: ranks and reduced coordinates are
exact, never approximate.  Filtration-step dimensions at n = 3 involve
matrices with tens of thousands of rows; the occupancy index keeps each
insertion proportional to actual fill rather than to the rank.
"""

from __future__ import annotations

from fractions import Fraction

SparseRow = dict[int, Fraction]

_ZERO = Fraction(0)


def _axpy(target: SparseRow, coeff: Fraction, source: SparseRow) -> None:
    """target += coeff * source, dropping cancellations."""
    for c, v in source.items():
        cur = target.get(c, _ZERO) + coeff * v
        if cur:
            target[c] = cur
        else:
            target.pop(c, None)


class RowSpace:
    """Incrementally built row space with canonical RREF basis.

    Invariants: every stored row has coefficient 1 on its pivot column and
    zero on every other pivot column (full back-elimination), and
    occupancy[c] is exactly the set of pivots whose row touches the
    non-pivot column c.
    """

    __slots__ = ("pivots", "occupancy")

    def __init__(self):
        self.pivots: dict[int, SparseRow] = {}
        self.occupancy: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "RowSpace":
        dup = RowSpace()
        dup.pivots = {p: dict(row) for p, row in self.pivots.items()}
        dup.occupancy = {c: set(s) for c, s in self.occupancy.items()}
        return dup

    def reduce(self, row: SparseRow) -> SparseRow:
        """Canonical residual of row modulo the space (row is not modified).

        One ascending pass suffices: stored rows contain no pivot column
        other than their own, so elimination never reintroduces one.
        """
        out = {c: v for c, v in row.items() if v}
        for c in sorted(out):
            piv = self.pivots.get(c)
            if piv is None:
                continue
            coeff = out.get(c)
            if coeff:
                _axpy(out, -coeff, piv)
        return out

    def add(self, row: SparseRow) -> int | None:
        """Insert a row; returns its pivot column, or None if dependent."""
        res = self.reduce(row)
        if not res:
            return None
        p = min(res)
        lead = res[p]
        if lead != 1:
            res = {c: v / lead for c, v in res.items()}
        # back-eliminate the new pivot from the rows that touch it
        for q in self.occupancy.pop(p, ()):
            other = self.pivots[q]
            coeff = other.pop(p)
            for c, v in res.items():
                if c == p:
                    continue
                cur = other.get(c, _ZERO) - coeff * v
                if cur:
                    if c not in other:
                        self.occupancy.setdefault(c, set()).add(q)
                    other[c] = cur
                else:
                    del other[c]
                    self.occupancy[c].discard(q)
        self.pivots[p] = res
        for c in res:
            if c != p:
                self.occupancy.setdefault(c, set()).add(p)
        return p

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)

    def contains_space(self, other: "RowSpace") -> bool:
        return all(self.contains(r) for r in other.pivots.values())

    def pivot_columns(self) -> list[int]:
        return sorted(self.pivots)

    def rows(self) -> list[SparseRow]:
        """RREF rows ordered by pivot column; fresh copies."""
        return [dict(self.pivots[p]) for p in sorted(self.pivots)]


def rref_dense(matrix: list[list]) -> tuple[list[list[Fraction]], int]:
    """RREF of a dense rational matrix; returns (same-shape matrix, rank).

    Pivot choice is the leftmost nonzero column, so output is the unique
    reduced echelon form with zero rows collected at the bottom.
    """
    if not matrix:
        return [], 0
    width = len(matrix[0])
    if any(len(r) != width for r in matrix):
        raise ValueError("ragged matrix")
    space = RowSpace()
    for r in matrix:
        space.add({j: Fraction(v) for j, v in enumerate(r) if v})
    out = []
    for row in space.rows():
        out.append([row.get(j, _ZERO) for j in range(width)])
    while len(out) < len(matrix):
        out.append([_ZERO] * width)
    return out, space.rank


def rank_of_rows(rows: list[SparseRow]) -> int:
    space = RowSpace()
    for r in rows:
        space.add(r)
    return space.rank

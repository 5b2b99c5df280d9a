"""Incremental row echelon form over the rationals for sparse vectors."""

from __future__ import annotations

from fractions import Fraction

SparseVec = dict  # index -> nonzero Fraction


def sparse(vec: dict) -> SparseVec:
    return {k: Fraction(v) for k, v in vec.items() if v}


class Echelon:
    """Span of inserted vectors, kept reduced with one pivot per row.

    Rows are normalized to pivot value 1, and every stored row has zeros at
    the other rows' pivots, so ``reduce`` is a single pass.
    """

    def __init__(self):
        self.rows: dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        v = dict(vec)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if not c:
                continue
            for k, x in self.rows[p].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, vec: SparseVec) -> bool:
        """Add ``vec`` to the span; returns False when it was already there."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {k: x * inv for k, x in v.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def copy(self) -> "Echelon":
        out = Echelon()
        out.rows = {p: dict(r) for p, r in self.rows.items()}
        return out

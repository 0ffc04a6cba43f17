"""Exact sparse linear algebra over Q, rows stored as {column: Fraction}."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

SparseRow = dict[int, Fraction]


class RowReducer:
    """Incremental reduced row echelon form.

    Pivot rows are kept fully reduced, so reducing a new row needs a single
    pass over its pivot columns.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, SparseRow] = {}

    def reduce(self, row: Mapping[int, Fraction | int]) -> SparseRow:
        r: SparseRow = {c: Fraction(v) for c, v in row.items() if v}
        for col in [c for c in r if c in self.pivots]:
            f = r.get(col)
            if not f:
                continue
            for c, v in self.pivots[col].items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def add(self, row: Mapping[int, Fraction | int]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        for prow in self.pivots.values():
            f = prow.get(col)
            if f:
                for c, v in r.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        self.pivots[col] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def nullspace(rows: Iterable[Mapping[int, Fraction | int]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v in Q^ncols : row . v = 0 for every row}."""
    red = RowReducer()
    for row in rows:
        red.add(row)
    free = [c for c in range(ncols) if c not in red.pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, prow in red.pivots.items():
            x = prow.get(f)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def integral_primitive(v: list[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]

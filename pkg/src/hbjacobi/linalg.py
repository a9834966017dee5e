"""Exact sparse row reduction over the rationals.

Vectors are dicts ``{column_key: Fraction}`` with no zero entries.  Columns
are ordered by a caller-supplied rank so pivot choice is deterministic for
identical inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, Mapping

SparseVec = Dict[Hashable, Fraction]


def add_scaled(target: SparseVec, source: Mapping[Hashable, Fraction], scale: Fraction) -> None:
    """In place ``target += scale * source``, dropping zeros."""
    if not scale:
        return
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class EchelonBasis:
    """Incrementally maintained reduced row echelon form.

    ``order`` maps a column key to a sortable rank.  The pivot of a row is
    its highest-ranked column, so reducing a vector rewrites it in terms of
    lower-ranked columns, and the reduced form is unique for a fixed span.
    """

    def __init__(self, order: Callable[[Hashable], object]):
        self._order = order
        self._rows: Dict[Hashable, SparseVec] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> Iterable[Hashable]:
        return self._rows.keys()

    def _pivot(self, vec: Mapping[Hashable, Fraction]) -> Hashable:
        return max(vec, key=self._order)

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> SparseVec:
        """Return the unique representative of ``vec`` modulo the span."""
        out: SparseVec = {k: Fraction(v) for k, v in vec.items() if v}
        # rows are kept fully reduced (no row mentions another row's pivot),
        # so subtracting rows never reintroduces a pivot column
        for piv in [k for k in out if k in self._rows]:
            c = out.get(piv)
            if c:
                add_scaled(out, self._rows[piv], -c)
        return out

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        """Insert a relation; return True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        piv = self._pivot(r)
        inv = 1 / r[piv]
        r = {k: v * inv for k, v in r.items()}
        # keep existing rows fully reduced against the new pivot
        for p, row in self._rows.items():
            c = row.get(piv)
            if c:
                add_scaled(row, r, -c)
        self._rows[piv] = r
        return True

    def contains(self, vec: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)


def rank_of(rows: Iterable[Mapping[Hashable, Fraction]], order: Callable[[Hashable], object] = repr) -> int:
    basis = EchelonBasis(order)
    for r in rows:
        basis.add(r)
    return len(basis)

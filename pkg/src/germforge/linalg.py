"""Exact incremental Gaussian elimination over sparse Fraction vectors.

Vectors are dicts mapping hashable labels to Fraction coefficients. A RowBasis
keeps a reduced row echelon span: each stored row has coefficient 1 at its
pivot label, the pivot is the row's largest label under the caller's key
function, and no row contains another row's pivot. Residuals returned by
reduce() are therefore canonical, which keeps every consumer deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional

Vec = Dict[Hashable, Fraction]


class RowBasis:
    __slots__ = ("keyfn", "rows")

    def __init__(self, keyfn: Callable[[Hashable], object]) -> None:
        self.keyfn = keyfn
        self.rows: Dict[Hashable, Vec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        """Fully reduced residual of vec modulo the span."""
        work = {k: Fraction(c) for k, c in vec.items() if c}
        out: Vec = {}
        while work:
            k = max(work, key=self.keyfn)
            c = work.pop(k)
            if c == 0:
                continue
            row = self.rows.get(k)
            if row is None:
                # no pivot here; only smaller labels remain, so k is settled
                out[k] = out.get(k, Fraction(0)) + c
                continue
            for k2, c2 in row.items():
                if k2 == k:
                    continue
                s = work.get(k2, Fraction(0)) - c * c2
                if s:
                    work[k2] = s
                else:
                    work.pop(k2, None)
        return {k: c for k, c in out.items() if c}

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Vec) -> Optional[Vec]:
        """Insert vec's residual; returns the new normalized row, or None."""
        r = self.reduce(vec)
        if not r:
            return None
        pivot = max(r, key=self.keyfn)
        inv = 1 / r[pivot]
        r = {k: c * inv for k, c in r.items()}
        # keep existing rows reduced against the new pivot
        for p, row in self.rows.items():
            c = row.get(pivot)
            if c:
                for k2, c2 in r.items():
                    s = row.get(k2, Fraction(0)) - c * c2
                    if s:
                        row[k2] = s
                    else:
                        row.pop(k2, None)
        self.rows[pivot] = r
        return r

    def extend(self, vecs) -> int:
        added = 0
        for v in vecs:
            if self.add(v) is not None:
                added += 1
        return added


def nullspace(vectors: List[Vec], dim_labels: List[Hashable], keyfn) -> List[Dict[Hashable, Fraction]]:
    """Kernel of the linear map sending unit coordinate t to vectors[t].

    Returns combination dicts {t: coeff} with sum_t coeff * vectors[t] = 0,
    one per kernel dimension, deterministically ordered. dim_labels tags the
    coordinates (usually range(len(vectors))).
    """
    if len(vectors) != len(dim_labels):
        raise ValueError("one label per vector")
    basis = RowBasis(keyfn)
    combos: Dict[Hashable, Vec] = {}  # pivot -> combination achieving that row
    kernel: List[Dict[Hashable, Fraction]] = []
    for t, v in enumerate(vectors):
        # reduce v while tracking the combination of inputs used
        work = {k: Fraction(c) for k, c in v.items() if c}
        combo: Vec = {dim_labels[t]: Fraction(1)}
        while work:
            k = max(work, key=keyfn)
            c = work.pop(k)
            if c == 0:
                continue
            row = basis.rows.get(k)
            if row is None:
                # v has a fresh pivot: store row and its combination
                inv = 1 / c
                rest = dict(work)
                rest[k] = c
                newrow = {k2: c2 * inv for k2, c2 in rest.items()}
                basis.rows[k] = newrow
                combos[k] = {k2: c2 * inv for k2, c2 in combo.items()}
                combo = {}
                work = {}
                break
            for k2, c2 in row.items():
                if k2 == k:
                    continue
                s = work.get(k2, Fraction(0)) - c * c2
                if s:
                    work[k2] = s
                else:
                    work.pop(k2, None)
            cc = combos[k]
            for k2, c2 in cc.items():
                s = combo.get(k2, Fraction(0)) - c * c2
                if s:
                    combo[k2] = s
                else:
                    combo.pop(k2, None)
        else:
            # v reduced to zero: combo is a kernel element
            if combo:
                kernel.append(combo)
    return kernel

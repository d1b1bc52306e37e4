"""Koszul complexes over quotient rings, with finite-length homology dims.

The complex K_p = Lambda^p(A^m) for A = O/relations is presented by explicit
differential matrices over O; kernels and images over A are obtained by
adjoining relation columns to every syzygy computation. H_p is the subquotient
ker(d_p)/im(d_{p+1}), presented as O^t/L for L the preimage of the image
module under the kernel presentation, and its dimension is a staircase count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .errors import GermforgeError
from .polyring import LOCAL_DS, Order, Poly, Ring
from .stdbasis import (
    Submodule,
    Vector,
    preimage_module,
    vec_add,
    vec_is_zero,
    vec_poly_mul,
    vec_zero,
)


@dataclass(frozen=True)
class KoszulInstance:
    """Sequence s_1..s_m over the quotient of ring by relations."""

    ring: Ring
    relations: Tuple[Poly, ...]
    sequence: Tuple[Poly, ...]
    order: Order = LOCAL_DS

    def __post_init__(self):
        object.__setattr__(self, "relations",
                           tuple(p for p in self.relations if not p.is_zero()))
        object.__setattr__(self, "sequence", tuple(self.sequence))
        for p in self.relations + self.sequence:
            if p.ring is not self.ring:
                raise ValueError("all elements must live in the instance ring")
        _verify_complex(self)

    @property
    def length(self) -> int:
        return len(self.sequence)


def _basis_index(m: int, p: int) -> Dict[Tuple[int, ...], int]:
    return {S: i for i, S in enumerate(combinations(range(m), p))}


def _differential(inst: KoszulInstance, p: int) -> List[Vector]:
    """Columns of d_p: K_p -> K_{p-1}, one vector in O^rank(K_{p-1}) per
    basis element e_S of K_p; d(e_S) = sum_t (-1)^t s_{i_t} e_{S minus i_t}."""
    m = inst.length
    ring = inst.ring
    lower = _basis_index(m, p - 1)
    cols: List[Vector] = []
    for S in combinations(range(m), p):
        col = [ring.zero()] * len(lower)
        for t, i in enumerate(S):
            T = tuple(j for j in S if j != i)
            coeff = inst.sequence[i] if t % 2 == 0 else -inst.sequence[i]
            col[lower[T]] = col[lower[T]] + coeff
        cols.append(tuple(col))
    return cols


def _verify_complex(inst: KoszulInstance) -> None:
    # d_{p-1} o d_p = 0 over O itself, checked on every basis generator
    m = inst.length
    ring = inst.ring
    for p in range(2, m + 1):
        upper = _differential(inst, p)
        lower = _differential(inst, p - 1)
        rank_out = len(_basis_index(m, p - 2))
        for col in upper:
            acc = vec_zero(ring, rank_out)
            for c, low in zip(col, lower):
                acc = vec_add(acc, vec_poly_mul(low, c))
            if not vec_is_zero(acc):
                raise AssertionError("differentials do not compose to zero")


def _relation_block(inst: KoszulInstance, rank: int) -> List[Vector]:
    ring = inst.ring
    out: List[Vector] = []
    for r in inst.relations:
        for b in range(rank):
            v = [ring.zero()] * rank
            v[b] = r
            out.append(tuple(v))
    return out


def _kernel_gens(inst: KoszulInstance, p: int) -> List[Vector]:
    """Generators in O^rank(K_p) of ker(d_p) over the quotient ring."""
    m = inst.length
    ring = inst.ring
    rank_p = len(_basis_index(m, p))
    if rank_p == 0:
        return []
    if p == 0:
        return [(ring.one(),)]
    cols = _differential(inst, p)
    rank_low = len(_basis_index(m, p - 1))
    sub = _relation_block(inst, rank_low)
    coeffs = preimage_module(cols, sub, ring, rank_low)
    return [c for c in coeffs if not vec_is_zero(c)]


def _image_gens(inst: KoszulInstance, p: int) -> List[Vector]:
    """Generators in O^rank(K_p) of im(d_{p+1}) plus the relation multiples."""
    m = inst.length
    rank_p = len(_basis_index(m, p))
    gens = _relation_block(inst, rank_p)
    if p + 1 <= m:
        gens = _differential(inst, p + 1) + gens
    return gens


def homology_dimension(inst: KoszulInstance, p: int) -> int:
    """dim of H_p = ker(d_p)/im(d_{p+1}) over the quotient ring."""
    m = inst.length
    if p < 0 or p > m:
        return 0
    ker = _kernel_gens(inst, p)
    if not ker:
        return 0
    rank_p = len(_basis_index(m, p))
    im = _image_gens(inst, p)
    L = preimage_module(ker, im, inst.ring, rank_p)
    qd = Submodule(inst.ring, len(ker), L, inst.order).quotient_dimension()
    if not qd.is_finite:
        raise GermforgeError("INFINITE_LENGTH",
                             f"homology module H_{p} has infinite length")
    return qd.value


def koszul_homology_dims(inst: KoszulInstance, p_max: int) -> List[int]:
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    return [homology_dimension(inst, p) for p in range(p_max + 1)]


def koszul_euler(inst: KoszulInstance) -> int:
    """Alternating sum including H_0: sum_{i>=0} (-1)^i dim H_i."""
    dims = koszul_homology_dims(inst, inst.length)
    return sum(d if i % 2 == 0 else -d for i, d in enumerate(dims))


def koszul_euler_from_one(inst: KoszulInstance) -> int:
    """Alternating sum starting at H_1; exposed alongside the inclusive one."""
    dims = koszul_homology_dims(inst, inst.length)
    return sum(-d if i % 2 == 1 else d for i, d in enumerate(dims) if i >= 1)

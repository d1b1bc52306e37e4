"""Standard and Groebner bases for ideals and submodules of free modules.

One engine serves both ring flavors: plain Buchberger with the sugar strategy
for the global order 'dp', Mora's tangent-cone algorithm with ecart-minimal
reducer selection (weak normal forms) for the local order 'ds'. Module terms
are ordered position-over-term with position 0 greatest, which makes the
embedded-identity trick an elimination order: syzygies drop out of a single
global basis computation.

Syzygies, preimages, colons and intersections are always computed under the
global order; the resulting polynomial generators generate the same module
over the localized ring, so local quotient dimensions can be read off a local
staircase of globally computed generators. Under a global order the normal
form is the canonical fully reduced one; under a local order it is Mora's
weak normal form (zero exactly on members of the localized ideal/module).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import GermforgeError
from .polyring import (
    GLOBAL_DP,
    LOCAL_DS,
    Mono,
    Order,
    Poly,
    Ring,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    monomials_up_to_degree,
)

Vector = Tuple[Poly, ...]
MTerm = Tuple[int, Mono]  # (position, monomial); position 0 is greatest


# ---------------------------------------------------------------------------
# vector helpers


def vec_zero(ring: Ring, rank: int) -> Vector:
    z = ring.zero()
    return (z,) * rank

def vec_is_zero(v: Vector) -> bool:
    return all(p.is_zero() for p in v)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def vec_scale(a: Vector, c: Fraction) -> Vector:
    return tuple(x * c for x in a)


def vec_term_mul(a: Vector, mono: Mono, coeff: Fraction) -> Vector:
    return tuple(x.term_mul(mono, coeff) for x in a)


def vec_poly_mul(a: Vector, p: Poly) -> Vector:
    return tuple(x * p for x in a)


def vec_max_degree(v: Vector) -> int:
    return max((p.total_degree() for p in v), default=-1)


def vec_leading(v: Vector, order: Order) -> Tuple[int, Mono, Fraction]:
    """(position, monomial, coefficient) of the leading term, POT."""
    for pos, p in enumerate(v):
        if not p.is_zero():
            m, c = p.leading(order)
            return pos, m, c
    raise ValueError("zero vector has no leading term")


def vec_ecart(v: Vector, order: Order) -> int:
    pos, m, _ = vec_leading(v, order)
    return vec_max_degree(v) - mono_deg(m)


def _monic(v: Vector, order: Order) -> Vector:
    _, _, c = vec_leading(v, order)
    return vec_scale(v, 1 / c)


def _primitive(v: Vector) -> Vector:
    """Scale to integer coefficients with content 1. Monic scaling compounds
    denominators across chained local reductions until every arithmetic step
    runs gcd on huge integers; content scaling keeps coefficients small."""
    num_gcd = 0
    den_lcm = 1
    for p in v:
        for c in p.terms.values():
            num_gcd = gcd(num_gcd, c.numerator)
            den_lcm = den_lcm // gcd(den_lcm, c.denominator) * c.denominator
    if num_gcd == 0:
        return v
    scale = Fraction(den_lcm, num_gcd)
    if scale == 1:
        return v
    return vec_scale(v, scale)


# ---------------------------------------------------------------------------
# reduction


def _find_reducer(pos: int, m: Mono, basis: List[Vector], leads: List[Tuple[int, Mono, Fraction]],
                  skip: int = -1) -> int:
    for i, (bp, bm, _) in enumerate(leads):
        if i != skip and bp == pos and mono_divides(bm, m):
            return i
    return -1


def reduce_vector_global(v: Vector, basis: List[Vector], order: Order,
                         leads: Optional[List[Tuple[int, Mono, Fraction]]] = None) -> Vector:
    """Canonical fully reduced normal form under a global order."""
    if leads is None:
        leads = [vec_leading(b, order) for b in basis]
    rank = len(v)
    ring = v[0].ring if v else None
    result_terms: List[Tuple[int, Mono, Fraction]] = []
    work = v
    while not vec_is_zero(work):
        pos, m, c = vec_leading(work, order)
        i = _find_reducer(pos, m, basis, leads)
        if i >= 0:
            bp, bm, bc = leads[i]
            factor_mono = mono_div(m, bm)
            work = vec_sub(work, vec_term_mul(basis[i], factor_mono, c / bc))
        else:
            result_terms.append((pos, m, c))
            single = [ring.zero() for _ in range(rank)]
            single[pos] = ring.monomial(m, c)
            work = vec_sub(work, tuple(single))
    if not result_terms:
        return vec_zero(ring, rank) if ring is not None else v
    out = [dict() for _ in range(rank)]
    for pos, m, c in result_terms:
        out[pos][m] = c
    return tuple(Poly(ring, d) for d in out)


def reduce_vector_mora(v: Vector, basis: List[Vector], order: Order) -> Vector:
    """Mora weak normal form: zero iff v lies in the localized module."""
    reducers = list(basis)
    ecarts = [vec_ecart(b, order) for b in basis]
    leads = [vec_leading(b, order) for b in basis]
    h = v
    while not vec_is_zero(h):
        pos, m, c = vec_leading(h, order)
        best = -1
        best_key = None
        for i, (bp, bm, _) in enumerate(leads):
            if bp == pos and mono_divides(bm, m):
                key = (ecarts[i], i)
                if best_key is None or key < best_key:
                    best, best_key = i, key
        if best < 0:
            return h
        e_h = vec_max_degree(h) - mono_deg(m)
        if ecarts[best] > e_h:
            reducers.append(h)
            ecarts.append(e_h)
            leads.append((pos, m, c))
        bp, bm, bc = leads[best]
        work_basis = reducers[best]
        h = _primitive(vec_sub(h, vec_term_mul(work_basis, mono_div(m, bm), c / bc)))
    return h


def reduce_vector(v: Vector, basis: List[Vector], order: Order) -> Vector:
    if order.is_local:
        return reduce_vector_mora(v, basis, order)
    return reduce_vector_global(v, basis, order)


# ---------------------------------------------------------------------------
# basis completion


def _spair_parts(gi: Vector, gj: Vector, order: Order):
    pi, mi, ci = vec_leading(gi, order)
    pj, mj, cj = vec_leading(gj, order)
    L = mono_lcm(mi, mj)
    return L, mono_div(L, mi), mono_div(L, mj), ci, cj


def std_basis_vectors(vectors: Sequence[Vector], order: Order, ring: Ring, rank: int) -> List[Vector]:
    """Interreduced standard basis of the submodule generated by vectors."""
    if order.is_local:
        norm = _primitive
    else:
        def norm(v):
            return _monic(v, order)
    G: List[Vector] = [norm(v) for v in vectors if not vec_is_zero(v)]
    if not G:
        return []
    leads = [vec_leading(g, order) for g in G]
    sugars = [vec_max_degree(g) for g in G]

    def pair_entry(i: int, j: int):
        (pi, mi, _), (pj, mj, _) = leads[i], leads[j]
        if pi != pj:
            return None
        L = mono_lcm(mi, mj)
        # product criterion, valid for rank-1 global bases
        if rank == 1 and not order.is_local and mono_mul(mi, mj) == L:
            return None
        sugar = max(sugars[i] + mono_deg(mono_div(L, mi)),
                    sugars[j] + mono_deg(mono_div(L, mj)))
        return (sugar, order.key(L), j, i), L

    pending: Dict[Tuple[int, int], Tuple[tuple, Mono]] = {}
    done: Set[Tuple[int, int]] = set()
    for j in range(len(G)):
        for i in range(j):
            e = pair_entry(i, j)
            if e is not None:
                pending[(i, j)] = e
            else:
                done.add((i, j))

    while pending:
        (i, j), (key, L) = min(pending.items(), key=lambda kv: kv[1][0])
        del pending[(i, j)]
        done.add((i, j))
        # chain criterion: k divides the lcm and both side pairs are settled
        skip = False
        pi = leads[i][0]
        for k in range(len(G)):
            if k in (i, j):
                continue
            kp, km, _ = leads[k]
            if kp == pi and mono_divides(km, L):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a in done and b in done and a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        _, ui, uj, ci, cj = _spair_parts(G[i], G[j], order)
        s = vec_sub(vec_term_mul(G[i], ui, cj), vec_term_mul(G[j], uj, ci))
        h = reduce_vector(s, G, order)
        if vec_is_zero(h):
            continue
        h = norm(h)
        G.append(h)
        leads.append(vec_leading(h, order))
        sugars.append(vec_max_degree(h))
        t = len(G) - 1
        for i2 in range(t):
            e = pair_entry(i2, t)
            if e is not None:
                pending[(i2, t)] = e
            else:
                done.add((i2, t))
    return _interreduce(G, order, ring, rank)


def _interreduce(G: List[Vector], order: Order, ring: Ring, rank: int) -> List[Vector]:
    leads = [vec_leading(g, order) for g in G]
    keep: List[int] = []
    for i, (pi, mi, _) in enumerate(leads):
        redundant = False
        for j, (pj, mj, _) in enumerate(leads):
            if i == j or pj != pi:
                continue
            if mono_divides(mj, mi) and (mj != mi or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    kept = [G[i] for i in keep]
    kept.sort(key=lambda g: tuple(_mterm_key(vec_leading(g, order), order)))
    if order.is_local:
        return [_monic(g, order) for g in kept]
    # global: tail-reduce to the canonical reduced basis
    out: List[Vector] = []
    for i, g in enumerate(kept):
        others = [h for j, h in enumerate(kept) if j != i]
        r = reduce_vector_global(g, others, order) if others else g
        out.append(_monic(r, order))
    out.sort(key=lambda g: tuple(_mterm_key(vec_leading(g, order), order)))
    return out


def _mterm_key(lead: Tuple[int, Mono, Fraction], order: Order):
    pos, m, _ = lead
    return (-pos,) + tuple(_flatten_key(order.key(m)))


def _flatten_key(k) -> list:
    out = []
    for part in k:
        if isinstance(part, tuple):
            out.extend(part)
        else:
            out.append(part)
    return out


# ---------------------------------------------------------------------------
# quotient dimensions


@dataclass(frozen=True)
class QuotientDim:
    """Dimension of a quotient; value None means infinite."""

    value: Optional[int]
    witness: Tuple[MTerm, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def monomials(self) -> Tuple[Mono, ...]:
        return tuple(m for _, m in self.witness)

    def __str__(self) -> str:
        return "INFINITE" if self.value is None else str(self.value)


INFINITE = QuotientDim(None, ())


def _truncated_quotient_local(gens: Sequence[Vector], ring: Ring, rank: int,
                              order: Order, caps: Tuple[int, ...] = (4, 9, 14)) -> Optional[QuotientDim]:
    """Exact local quotient dimension by degree-truncated elimination.

    A local lead term is the lowest-degree term, so truncating tails above
    degree N never moves leads: pivots of the image of the module in
    O^rank/m^{N+1}O^rank are exactly the lead terms of module elements whose
    lead degree is at most N. If some degree d <= N has no standard monomial
    left, Nakayama gives m^d O^rank inside the module, and the standard
    monomials below degree d are the exact cobasis. Returns None when no cap
    yields a certificate (infinite quotient or staircase deeper than caps);
    callers then fall back to a full standard basis.
    """
    n = ring.n
    if rank == 0:
        return QuotientDim(0, ())
    if not gens:
        return None

    def pivot_key(pm):
        return (-pm[0],) + tuple(order.key(pm[1]))

    for N in caps:
        rows = []
        for v in gens:
            base = min(p.order_at_origin() for p in v if not p.is_zero())
            if base > N:
                continue
            for delta in monomials_up_to_degree(n, N - base):
                row = {}
                for pos, p in enumerate(v):
                    for m, c in p.terms.items():
                        mm = mono_mul(m, delta)
                        if mono_deg(mm) <= N:
                            row[(pos, mm)] = c
                if row:
                    rows.append(row)
        pivots: Dict[Tuple[int, Mono], Dict[Tuple[int, Mono], Fraction]] = {}
        for row in rows:
            work = dict(row)
            while work:
                piv = max(work, key=pivot_key)
                hit = pivots.get(piv)
                if hit is None:
                    inv = 1 / work[piv]
                    pivots[piv] = {k: c * inv for k, c in work.items()}
                    break
                c = work[piv]
                for k, v2 in hit.items():
                    nv = work.get(k, Fraction(0)) - c * v2
                    if nv:
                        work[k] = nv
                    else:
                        work.pop(k, None)
        free_by_deg: Dict[int, List[MTerm]] = {d: [] for d in range(N + 1)}
        for pos in range(rank):
            for m in monomials_up_to_degree(n, N):
                if (pos, m) not in pivots:
                    free_by_deg[mono_deg(m)].append((pos, m))
        for d in range(N + 1):
            if not free_by_deg[d]:
                witness = [t for dd in range(d) for t in free_by_deg[dd]]
                witness.sort(key=lambda t: (t[0], GLOBAL_DP.key(t[1])))
                return QuotientDim(len(witness), tuple(witness))
    return None


def staircase_dimension(lead_terms: Sequence[MTerm], rank: int, n: int) -> QuotientDim:
    """Count monomials outside the leading module, per position."""
    by_pos: List[List[Mono]] = [[] for _ in range(rank)]
    for pos, m in lead_terms:
        by_pos[pos].append(m)
    witness: List[MTerm] = []
    zero = (0,) * n
    for pos in range(rank):
        monos = by_pos[pos]
        # minimalize
        monos = [m for i, m in enumerate(monos)
                 if not any(j != i and mono_divides(m2, m) and (m2 != m or j < i)
                            for j, m2 in enumerate(monos))]
        if any(m == zero for m in monos):
            continue
        # finite iff every variable has a pure power among the leads
        for i in range(n):
            if not any(m[i] > 0 and all(e == 0 for k, e in enumerate(m) if k != i)
                       for m in monos):
                return INFINITE
        seen = {zero}
        queue = [zero]
        while queue:
            m = queue.pop()
            if any(mono_divides(lm, m) for lm in monos):
                continue
            witness.append((pos, m))
            for i in range(n):
                child = m[:i] + (m[i] + 1,) + m[i + 1:]
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
    witness.sort(key=lambda t: (t[0], GLOBAL_DP.key(t[1])))
    return QuotientDim(len(witness), tuple(witness))


# ---------------------------------------------------------------------------
# submodules and ideals


class Submodule:
    """Finitely generated submodule of the rank-r free module, with a cached
    standard basis under its order."""

    __slots__ = ("ring", "rank", "gens", "order", "_basis", "_leads", "_qdim")

    def __init__(self, ring: Ring, rank: int, gens: Sequence[Vector], order: Order) -> None:
        self.ring = ring
        self.rank = rank
        cleaned = []
        for v in gens:
            if len(v) != rank:
                raise ValueError("generator has wrong length")
            if any(p.ring != ring for p in v):
                raise ValueError("generator from a different ring")
            if not vec_is_zero(v):
                cleaned.append(tuple(v))
        self.gens: Tuple[Vector, ...] = tuple(cleaned)
        self.order = order
        self._basis: Optional[List[Vector]] = None
        self._leads = None
        self._qdim: Optional[QuotientDim] = None

    def basis(self) -> List[Vector]:
        if self._basis is None:
            self._basis = std_basis_vectors(self.gens, self.order, self.ring, self.rank)
            self._leads = [vec_leading(b, self.order) for b in self._basis]
        return self._basis

    def lead_terms(self) -> List[MTerm]:
        self.basis()
        return [(p, m) for (p, m, _) in self._leads]

    def normal_form(self, v: Vector) -> Vector:
        return reduce_vector(v, self.basis(), self.order)

    def contains(self, v: Vector) -> bool:
        return vec_is_zero(self.normal_form(v))

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(v) for v in other.gens)

    def equals(self, other: "Submodule") -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def quotient_dimension(self) -> QuotientDim:
        """dim of O^rank / this module under its order."""
        if self._qdim is None:
            fast = None
            if self.order.is_local and self._basis is None:
                fast = _truncated_quotient_local(self.gens, self.ring,
                                                 self.rank, self.order)
            if fast is None:
                fast = staircase_dimension(self.lead_terms(), self.rank,
                                           self.ring.n)
            self._qdim = fast
        return self._qdim

    def with_order(self, order: Order) -> "Submodule":
        return self if order == self.order else Submodule(self.ring, self.rank, self.gens, order)


class Ideal:
    """Ideal with generators and a cached standard basis under its order."""

    __slots__ = ("ring", "gens", "order", "_mod", "_tracked")

    def __init__(self, ring: Ring, gens: Sequence[Poly], order: Order = LOCAL_DS) -> None:
        self.ring = ring
        self.gens: Tuple[Poly, ...] = tuple(g for g in gens if not g.is_zero())
        if any(g.ring != ring for g in self.gens):
            raise ValueError("generator from a different ring")
        self.order = order
        self._mod: Optional[Submodule] = None
        self._tracked = None

    def _module(self) -> Submodule:
        if self._mod is None:
            self._mod = Submodule(self.ring, 1, [(g,) for g in self.gens], self.order)
        return self._mod

    def basis(self) -> List[Poly]:
        return [v[0] for v in self._module().basis()]

    def lead_monomials(self) -> List[Mono]:
        return [m for _, m in self._module().lead_terms()]

    def normal_form(self, p: Poly) -> Poly:
        return self._module().normal_form((p,))[0]

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return bool(self.gens) and self.contains(self.ring.one())

    def quotient_dimension(self) -> QuotientDim:
        """dim of O/I (local ring for 'ds', polynomial ring for 'dp')."""
        return self._module().quotient_dimension()

    def with_order(self, order: Order) -> "Ideal":
        return self if order == self.order else Ideal(self.ring, self.gens, order)

    def sum(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens, self.order)

    def __repr__(self) -> str:
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inner}; {self.order.kind})"

    # -- transformation-tracked global basis, for exact polynomial lifting

    def tracked_basis(self) -> List[Tuple[Poly, Tuple[Poly, ...]]]:
        """Global Groebner basis with coordinates over the original generators."""
        if self._tracked is None:
            self._tracked = _tracked_groebner(self.ring, list(self.gens))
        return self._tracked

    def lift(self, p: Poly) -> Optional[Tuple[Poly, ...]]:
        """Coordinates c with p = sum c_j * gens[j], or None if p is not a
        member of the polynomial (global) ideal."""
        nf, coords = _tracked_divide(p, self.tracked_basis(), self.ring, len(self.gens))
        return None if not nf.is_zero() else coords


# ---------------------------------------------------------------------------
# tracked global Groebner basis (rank 1) for exact lifting


def _tracked_divide(p: Poly, tracked: List[Tuple[Poly, Tuple[Poly, ...]]], ring: Ring,
                    ngens: int) -> Tuple[Poly, Tuple[Poly, ...]]:
    order = GLOBAL_DP
    coords = [ring.zero() for _ in range(ngens)]
    leads = [b.leading(order) for b, _ in tracked]
    work = p
    result = ring.zero()
    while not work.is_zero():
        m, c = work.leading(order)
        hit = -1
        for i, (bm, bc) in enumerate(leads):
            if mono_divides(bm, m):
                hit = i
                break
        if hit < 0:
            t = ring.monomial(m, c)
            result = result + t
            work = work - t
            continue
        bm, bc = leads[hit]
        fac_mono, fac_coeff = mono_div(m, bm), c / bc
        b, bcoords = tracked[hit]
        work = work - b.term_mul(fac_mono, fac_coeff)
        for j in range(ngens):
            coords[j] = coords[j] + bcoords[j].term_mul(fac_mono, fac_coeff)
    return result, tuple(coords)


def _tracked_groebner(ring: Ring, gens: List[Poly]) -> List[Tuple[Poly, Tuple[Poly, ...]]]:
    order = GLOBAL_DP
    tracked: List[Tuple[Poly, Tuple[Poly, ...]]] = []
    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        _, c = g.leading(order)
        unit = [ring.zero() for _ in range(len(gens))]
        unit[j] = ring.const(1 / c)
        tracked.append((g * (1 / c), tuple(unit)))

    def add_pairs(t: int, pending: list) -> None:
        for i in range(t):
            mi, _ = tracked[i][0].leading(order)
            mj, _ = tracked[t][0].leading(order)
            L = mono_lcm(mi, mj)
            if mono_mul(mi, mj) == L:
                continue
            sugar = mono_deg(L)
            pending.append((sugar, order.key(L), t, i))

    pending: List[tuple] = []
    for t in range(len(tracked)):
        add_pairs(t, pending)
    while pending:
        pending.sort()
        _, _, j, i = pending.pop(0)
        bi, ci = tracked[i]
        bj, cj = tracked[j]
        mi, _ = bi.leading(order)
        mj, _ = bj.leading(order)
        L = mono_lcm(mi, mj)
        ui, uj = mono_div(L, mi), mono_div(L, mj)
        s = bi.term_mul(ui, Fraction(1)) - bj.term_mul(uj, Fraction(1))
        scoords = tuple(ci[t].term_mul(ui, Fraction(1)) - cj[t].term_mul(uj, Fraction(1))
                        for t in range(len(ci)))
        nf, qcoords = _tracked_divide(s, tracked, ring, len(gens))
        if nf.is_zero():
            continue
        m, c = nf.leading(order)
        inv = 1 / c
        final = tuple((scoords[t] - qcoords[t]) * inv for t in range(len(gens)))
        tracked.append((nf * inv, final))
        add_pairs(len(tracked) - 1, pending)
    return tracked


# ---------------------------------------------------------------------------
# syzygies, preimages, colon, intersection, saturation


def module_syzygies(vectors: Sequence[Vector], ring: Ring, rank: int) -> Submodule:
    """Kernel of the map O^k -> O^rank sending unit vector i to vectors[i]."""
    k = len(vectors)
    if k == 0:
        return Submodule(ring, 0, [], GLOBAL_DP)
    zero = ring.zero()
    one = ring.one()
    embedded: List[Vector] = []
    for i, v in enumerate(vectors):
        if len(v) != rank:
            raise ValueError("vector of wrong rank")
        tail = [zero] * k
        tail[i] = one
        embedded.append(tuple(v) + tuple(tail))
    basis = std_basis_vectors(embedded, GLOBAL_DP, ring, rank + k)
    syz: List[Vector] = []
    for b in basis:
        if all(p.is_zero() for p in b[:rank]):
            syz.append(b[rank:])
    for s in syz:
        acc = vec_zero(ring, rank)
        for c, v in zip(s, vectors):
            acc = vec_add(acc, vec_poly_mul(v, c))
        if not vec_is_zero(acc):
            raise AssertionError("syzygy postcheck failed")
    return Submodule(ring, k, syz, GLOBAL_DP)


def preimage_module(targets: Sequence[Vector], sub_gens: Sequence[Vector], ring: Ring,
                    rank: int) -> List[Vector]:
    """Generators of {c in O^k : sum c_i * targets[i] lies in <sub_gens>}."""
    k = len(targets)
    if k == 0:
        return []
    combined = list(targets) + list(sub_gens)
    syz = module_syzygies(combined, ring, rank)
    out: List[Vector] = []
    seen = set()
    for s in syz.gens:
        head = s[:k]
        if vec_is_zero(head):
            continue
        key = tuple(frozenset(p.terms.items()) for p in head)
        if key not in seen:
            seen.add(key)
            out.append(head)
    return out


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {h : h*J is contained in I}, exact for I's ring flavor."""
    ring = I.ring
    if not J.gens:
        return Ideal(ring, [ring.one()], I.order)
    if not I.gens:
        return Ideal(ring, [], I.order)
    s = len(J.gens)
    target: Vector = tuple(J.gens)
    sub: List[Vector] = []
    zero = ring.zero()
    for g in I.gens:
        for j in range(s):
            v = [zero] * s
            v[j] = g
            sub.append(tuple(v))
    heads = preimage_module([target], sub, ring, s)
    gens = [h[0] for h in heads]
    out = Ideal(ring, gens, I.order)
    # membership postcheck on generators
    for h in out.gens:
        for f in J.gens:
            if not I.contains(h * f):
                raise AssertionError("ideal quotient postcheck failed")
    return out


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    vectors = [(g,) for g in I.gens] + [(h,) for h in J.gens]
    syz = module_syzygies(vectors, ring, 1)
    r = len(I.gens)
    gens = []
    for s in syz.gens:
        acc = ring.zero()
        for c, g in zip(s[:r], I.gens):
            acc = acc + c * g
        if not acc.is_zero():
            gens.append(acc)
    return Ideal(ring, gens, I.order)


def module_intersection(U: Submodule, V: Submodule) -> Submodule:
    if U.ring != V.ring or U.rank != V.rank:
        raise ValueError("modules from different ambients")
    vectors = list(U.gens) + list(V.gens)
    syz = module_syzygies(vectors, U.ring, U.rank)
    r = len(U.gens)
    gens: List[Vector] = []
    for s in syz.gens:
        acc = vec_zero(U.ring, U.rank)
        for c, u in zip(s[:r], U.gens):
            acc = vec_add(acc, vec_poly_mul(u, c))
        if not vec_is_zero(acc):
            gens.append(acc)
    return Submodule(U.ring, U.rank, gens, U.order)


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^infinity): iterated quotient until stable."""
    current = I
    while True:
        nxt = ideal_quotient(current, J)
        if current.contains_ideal(nxt):
            return current
        current = nxt


# ---------------------------------------------------------------------------
# dimensions of quotients and subquotients


def std_basis(gens: Sequence[Poly], order: Order, ring: Optional[Ring] = None) -> List[Poly]:
    """Interreduced standard basis of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = ring or gens[0].ring
    vecs = std_basis_vectors([(g,) for g in gens], order, ring, 1)
    return [v[0] for v in vecs]


def normal_form(p: Poly, I: Ideal) -> Poly:
    return I.normal_form(p)


def quotient_dimension(I: Ideal) -> QuotientDim:
    return I.quotient_dimension()


def subideal_preimage(I: Ideal, J: Ideal) -> Submodule:
    """The module L = {c in O^k : sum c_i g_i in J} for J contained in I;
    O^k/L is then isomorphic to I/J with unit vector i mapping to gens[i]."""
    for h in J.gens:
        if not I.contains(h):
            raise GermforgeError("PRECONDITION_VIOLATED",
                                 f"not a subideal: {h} is outside the ambient ideal")
    k = len(I.gens)
    targets = [(g,) for g in I.gens]
    sub = [(h,) for h in J.gens]
    L = preimage_module(targets, sub, I.ring, 1) if k else []
    return Submodule(I.ring, k, L, I.order)


def relative_quotient_dimension(I: Ideal, J: Ideal) -> QuotientDim:
    """dim I/J for J contained in I, via the module quotient O^k/L; the
    witness tags (generator index, monomial), so witness entry (j, m) stands
    for the class of m * gens[j]."""
    return subideal_preimage(I, J).quotient_dimension()


def power_ideal(ring: Ring, k: int, order: Order = LOCAL_DS) -> Ideal:
    """The k-th power of the maximal ideal at the origin."""
    if k <= 0:
        return Ideal(ring, [ring.one()], order)
    gens = [ring.monomial(m) for m in monomials_of_degree(ring.n, k)]
    return Ideal(ring, gens, order)


def hilbert_samuel(I: Ideal, m: int) -> int:
    """dim I/(I intersect m^{m+1}) at the origin (local)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    ring = I.ring
    n = ring.n
    full = comb(n + m, n)  # dim O/m^{m+1}
    if not I.gens:
        return 0
    mk = power_ideal(ring, m + 1)
    joined = Ideal(ring, tuple(I.gens) + mk.gens, LOCAL_DS)
    qd = joined.quotient_dimension()
    if not qd.is_finite:
        raise AssertionError("O/(I + m^{m+1}) must be finite dimensional")
    return full - qd.value


# ---------------------------------------------------------------------------
# zero-dimensional radical (Seidenberg)


def _univ_normalize(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _univ_derive(c: List[Fraction]) -> List[Fraction]:
    return _univ_normalize([c[i] * i for i in range(1, len(c))])


def _univ_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and _univ_normalize(a):
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i in range(len(b)):
            a[shift + i] -= factor * b[i]
        _univ_normalize(a)
    return _univ_normalize(q), _univ_normalize(a)


def _univ_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a, b = list(a), list(b)
    while b:
        _, r = _univ_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def zero_dim_radical(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal under a global order (Seidenberg):
    adjoin the squarefree part of each variable's minimal polynomial."""
    if I.order.is_local:
        raise GermforgeError("LOCAL_ORDER_UNSUPPORTED",
                             "radical computation needs a global order")
    qd = I.quotient_dimension()
    if not qd.is_finite:
        raise GermforgeError("NOT_ZERO_DIMENSIONAL",
                             "radical is implemented for zero-dimensional ideals only")
    from .linalg import nullspace  # local import to avoid a cycle at load

    ring = I.ring
    extra: List[Poly] = []
    for i in range(ring.n):
        # minimal polynomial of variable i on the finite quotient
        powers: List[Dict] = []
        x = ring.var(i)
        acc = ring.one()
        for t in range(qd.value + 1):
            nf = I.normal_form(acc)
            powers.append(dict(nf.terms))
            acc = acc * x
        kern = nullspace(powers, list(range(len(powers))), GLOBAL_DP.key)
        if not kern:
            raise AssertionError("no univariate dependence on a finite quotient")
        # lowest-degree dependence: kernel vectors are found in insertion order
        combo = kern[0]
        deg = max(combo)
        coeffs = [Fraction(0)] * (deg + 1)
        for t, c in combo.items():
            coeffs[t] = c
        sf = _squarefree_part(coeffs)
        p = ring.zero()
        for t, c in enumerate(sf):
            if c:
                p = p + ring.var(i) ** t * c
        extra.append(p)
    out = Ideal(ring, tuple(I.gens) + tuple(extra), I.order)
    return Ideal(ring, tuple(out.basis()), I.order)


def _squarefree_part(c: List[Fraction]) -> List[Fraction]:
    c = _univ_normalize(list(c))
    d = _univ_derive(list(c))
    if not d:
        return c
    g = _univ_gcd(c, d)
    q, r = _univ_divmod(c, g)
    if r:
        raise AssertionError("gcd must divide")
    if q:
        lead = q[-1]
        q = [x / lead for x in q]
    return q


# ---------------------------------------------------------------------------
# bounded Artin-Rees style inclusion check


def artin_rees_check(I: Ideal, lam: int, m_max: int, degree_bound: int = 0) -> bool:
    """True iff I intersect m^{m+lam} is contained in m^m * I for every
    m <= m_max (at the origin). The verification is exact: generators of the
    intersection are membership-tested; degree_bound is accepted for
    interface stability and recorded nowhere else."""
    if lam < 0 or m_max < 1:
        raise ValueError("need lam >= 0 and m_max >= 1")
    ring = I.ring
    for m in range(1, m_max + 1):
        inter = ideal_intersection(I.with_order(LOCAL_DS), power_ideal(ring, m + lam))
        target_gens = [g.term_mul(mono, Fraction(1))
                       for g in I.gens
                       for mono in monomials_of_degree(ring.n, m)]
        target = Ideal(ring, target_gens, LOCAL_DS)
        for h in inter.gens:
            if not target.contains(h):
                return False
    return True

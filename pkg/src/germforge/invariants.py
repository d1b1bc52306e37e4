"""Singularity invariants of a germ relative to an ideal.

Codimensions are dimensions of I/tau computed through the module quotient
O^k/L, where L collects the coefficient vectors landing in tau. Versality is
decided exactly in a truncated model of that quotient: if D is the largest
witness degree, every vector with components in m^{D+1} reduces to zero in
the localized quotient, so the degree-<D slice is a faithful model. No
degree guesswork enters; the model dimension is asserted against the
codimension before any conclusion is drawn.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GermforgeError
from .linalg import RowBasis
from .polyring import GLOBAL_DP, Mono, Poly, Ring, monomials_of_degree, monomials_up_to_degree
from .stdbasis import (
    Ideal,
    QuotientDim,
    Submodule,
    ideal_quotient,
    subideal_preimage,
)
from .tangent import tangent_ideal, theta_preserving, theta_vanishing


def _require_member(f: Poly, I: Ideal) -> None:
    if not I.contains(f):
        raise GermforgeError("F_NOT_IN_IDEAL", f"{f} is not a member of the ideal")


def extended_codim(f: Poly, I: Ideal) -> QuotientDim:
    """dim I/tau_e(f) where tau_e comes from all ideal-preserving fields."""
    _require_member(f, I)
    tau = tangent_ideal(f, theta_preserving(I))
    return subideal_preimage(I, tau).quotient_dimension()


def plain_codim(f: Poly, I: Ideal) -> QuotientDim:
    """dim I/tau(f) where tau uses only fields vanishing at the origin."""
    _require_member(f, I)
    tau = tangent_ideal(f, theta_vanishing(I))
    return subideal_preimage(I, tau).quotient_dimension()


def tau_extended(f: Poly, I: Ideal) -> Ideal:
    _require_member(f, I)
    return tangent_ideal(f, theta_preserving(I))


def determinacy_bound(f: Poly, I: Ideal) -> int:
    """Minimal m with m^m * I inside tau_e(f); 0 means I itself is inside."""
    c = extended_codim(f, I)
    if not c.is_finite:
        raise GermforgeError("NOT_FINITE_CODIM", "determinacy needs finite codimension")
    if c.value == 0:
        return 0
    tau = tangent_ideal(f, theta_preserving(I))
    n = I.ring.n
    for m in range(1, c.value + 1):
        if all(tau.contains(g.term_mul(gamma, Fraction(1)))
               for gamma in monomials_of_degree(n, m) for g in I.gens):
            return m
    raise AssertionError("determinacy exceeded the codimension bound")


def positive_codim_locus(f: Poly, I: Ideal) -> Ideal:
    """(tau_e(f) : I) in the global ring; its zero set is where f has
    positive extended codimension as a function."""
    _require_member(f, I)
    tau = tangent_ideal(f, theta_preserving(I))
    return ideal_quotient(tau.with_order(GLOBAL_DP), I.with_order(GLOBAL_DP))


# ---------------------------------------------------------------------------
# unfoldings and versality


@dataclass(frozen=True)
class Unfolding:
    """Polynomial family F over base germ f; the parameters are the trailing
    variables of ring and setting them to zero recovers f."""

    ring: Ring
    F: Poly
    params: Tuple[str, ...]
    base_ring: Ring
    f: Poly

    def __post_init__(self):
        if self.ring.names[:self.base_ring.n] != self.base_ring.names:
            raise ValueError("extended ring must start with the base variables")
        if set(self.params) != set(self.ring.names[self.base_ring.n:]):
            raise ValueError("parameters must be exactly the trailing variables")
        if self.specialized() != self.f:
            raise GermforgeError("F_NOT_UNFOLDING", "setting parameters to zero does not recover f")

    def specialized(self) -> Poly:
        images = [self.base_ring.var(i) for i in range(self.base_ring.n)]
        images += [self.base_ring.zero()] * len(self.params)
        return self.F.substitute(images, self.base_ring)

    def derivative_at_zero(self, which: int) -> Poly:
        """dF/ds_which with all parameters set to zero, in the base ring."""
        dF = self.F.derive(self.base_ring.n + which)
        images = [self.base_ring.var(i) for i in range(self.base_ring.n)]
        images += [self.base_ring.zero()] * len(self.params)
        return dF.substitute(images, self.base_ring)


def make_unfolding(f: Poly, params: Sequence[str], F: Poly) -> Unfolding:
    """Package a total polynomial F (in base variables plus params) over f."""
    return Unfolding(F.ring, F, tuple(params), f.ring, f)


def validate_unfolding(U: Unfolding, I: Ideal) -> None:
    """F - f must lie in the ideal I generates in the extended polynomial
    ring; this is the computable form of 'every slice stays inside I'."""
    ext = U.ring
    n = U.base_ring.n
    lifted = [g.rename(ext, list(range(n))) for g in I.gens]
    I_ext = Ideal(ext, lifted, GLOBAL_DP)
    f_ext = U.f.rename(ext, list(range(n)))
    if not I_ext.contains(U.F - f_ext):
        raise GermforgeError("F_NOT_UNFOLDING",
                             "F - f is not a combination of the ideal generators")


def _quotient_model(I: Ideal, L: Submodule, c: int):
    """Truncated model of O^k/L: labels (position, monomial) of degree < M,
    the reducer for L's image, and M. Exactness: every witness monomial has
    degree < M, and any vector with all components in m^M reduces to zero in
    the localized quotient, so the slice has dimension exactly c."""
    qd = L.quotient_dimension()
    M = 1 + max(sum(m) for _, m in qd.witness)
    k = L.rank
    labels = [(pos, m) for pos in range(k)
              for m in monomials_up_to_degree(I.ring.n, M - 1)]
    keyf = lambda lab: (-lab[0],) + tuple(GLOBAL_DP.key(lab[1]))
    basis = RowBasis(keyf)
    for l in L.gens:
        for delta in monomials_up_to_degree(I.ring.n, M - 1):
            row: Dict = {}
            for pos, comp in enumerate(l):
                shifted = comp.term_mul(delta, Fraction(1)).truncate(M - 1)
                for m, coeff in shifted.terms.items():
                    row[(pos, m)] = coeff
            if row:
                basis.add(row)
    model_dim = len(labels) - basis.rank
    if model_dim != c:
        raise AssertionError("truncated quotient model disagrees with the codimension")
    return basis, keyf, M


def _coords_vector(coords: Sequence[Poly], M: int) -> Dict:
    vec: Dict = {}
    for pos, comp in enumerate(coords):
        for m, coeff in comp.truncate(M - 1).terms.items():
            vec[(pos, m)] = coeff
    return vec


def versality_check(U: Unfolding, I: Ideal) -> bool:
    """True iff tau_e(f) plus the span of the parameter derivatives at the
    origin of the parameter space fills I."""
    _require_member(U.f, I)
    validate_unfolding(U, I)
    tau = tangent_ideal(U.f, theta_preserving(I))
    L = subideal_preimage(I, tau)
    c = L.quotient_dimension()
    if not c.is_finite:
        return False
    if c.value == 0:
        return True
    basis, keyf, M = _quotient_model(I, L, c.value)
    span = RowBasis(keyf)
    rank = 0
    for i in range(len(U.params)):
        v = U.derivative_at_zero(i)
        coords = I.lift(v)
        if coords is None:
            raise AssertionError("parameter derivative escaped the ideal")
        residual = basis.reduce(_coords_vector(coords, M))
        if span.add(residual) is not None:
            rank += 1
    return rank == c.value


def build_versal_unfolding(f: Poly, I: Ideal) -> Unfolding:
    """F = f + sum s_i h_i with the h_i a basis of I/tau_e(f)."""
    c = extended_codim(f, I)
    if not c.is_finite:
        raise GermforgeError("NOT_FINITE_CODIM", "versal unfoldings need finite codimension")
    ring = I.ring
    basis_elems = [I.gens[pos].term_mul(m, Fraction(1)) for pos, m in c.witness]
    params = _fresh_names(ring, len(basis_elems))
    ext = ring.extend(params)
    n = ring.n
    F = f.rename(ext, list(range(n)))
    for i, h in enumerate(basis_elems):
        F = F + ext.var(n + i) * h.rename(ext, list(range(n)))
    U = Unfolding(ext, F, tuple(params), ring, f)
    if not versality_check(U, I):
        raise AssertionError("constructed unfolding failed its own versality check")
    return U


def _fresh_names(ring: Ring, count: int) -> List[str]:
    for prefix in ("s", "t", "u", "v", "w"):
        names = [f"{prefix}{i + 1}" for i in range(count)]
        if not any(nm in ring.index for nm in names):
            return names
    raise ValueError("could not find fresh parameter names")


# ---------------------------------------------------------------------------
# D(d, k) classification


@dataclass(frozen=True)
class DdkClass:
    d: int
    k: int
    verdict: str  # IS_Ddk | NOT_Ddk | NOT_APPLICABLE


class _TEntry:
    """Ring element modulo J + m^2: a constant plus a linear form in the
    transverse variables. Enough structure to diagonalize with unit pivots."""

    __slots__ = ("c", "lin")

    def __init__(self, c: Fraction, lin: Dict[int, Fraction]) -> None:
        self.c = c
        self.lin = {i: v for i, v in lin.items() if v}

    @staticmethod
    def of(p: Poly, x_vars: Sequence[int]) -> "_TEntry":
        xset = set(x_vars)
        c = Fraction(0)
        lin: Dict[int, Fraction] = {}
        for m, coeff in p.terms.items():
            deg = sum(m)
            if deg == 0:
                c = coeff
            elif deg == 1:
                i = m.index(1)
                if i in xset:
                    lin[i] = lin.get(i, Fraction(0)) + coeff
        return _TEntry(c, lin)

    def add(self, other: "_TEntry") -> "_TEntry":
        lin = dict(self.lin)
        for i, v in other.lin.items():
            lin[i] = lin.get(i, Fraction(0)) + v
        return _TEntry(self.c + other.c, lin)

    def scale(self, s: Fraction) -> "_TEntry":
        return _TEntry(self.c * s, {i: v * s for i, v in self.lin.items()})

    def mul(self, other: "_TEntry") -> "_TEntry":
        lin = {i: v * other.c for i, v in self.lin.items()}
        for i, v in other.lin.items():
            lin[i] = lin.get(i, Fraction(0)) + v * self.c
        return _TEntry(self.c * other.c, lin)

    def inv(self) -> "_TEntry":
        # (c + l)^-1 = 1/c - l/c^2 modulo m^2
        return _TEntry(1 / self.c, {i: -v / (self.c * self.c) for i, v in self.lin.items()})

    def is_zero(self) -> bool:
        return self.c == 0 and not self.lin


def classify_Ddk(f: Poly, J: Ideal) -> DdkClass:
    """Decide whether f, written as a quadratic form in the J-variables, is
    nondegenerate after splitting off unit pivots, with independent linear
    forms on the residual block."""
    ring = f.ring
    y_vars: List[int] = []
    for g in J.gens:
        terms = list(g.terms.items())
        ok = len(terms) == 1 and sum(terms[0][0]) == 1 and terms[0][1] == 1
        if not ok:
            raise GermforgeError("NON_ADAPTED_COORDINATES",
                                 "the ideal generators must be distinct variables")
        y_vars.append(terms[0][0].index(1))
    if len(set(y_vars)) != len(y_vars):
        raise GermforgeError("NON_ADAPTED_COORDINATES", "repeated variable among generators")
    x_vars = [i for i in range(ring.n) if i not in set(y_vars)]
    d = len(x_vars)
    m = len(y_vars)

    # symmetric Gram matrix: f = sum H[i][j] y_i y_j with H symmetric
    upper: Dict[Tuple[int, int], Dict[Mono, Fraction]] = {}
    for mono, coeff in f.terms.items():
        ys = [t for t, yv in enumerate(y_vars) if mono[yv] > 0]
        ydeg = sum(mono[yv] for yv in y_vars)
        if ydeg < 2:
            raise GermforgeError("F_NOT_IN_JSQUARED",
                                 f"term {ring.monomial(mono)} has degree < 2 in the ideal variables")
        i = ys[0]
        rest = list(mono)
        rest[y_vars[i]] -= 1
        j = i if rest[y_vars[i]] > 0 else [t for t in ys if rest[y_vars[t]] > 0][0]
        rest[y_vars[j]] -= 1
        key, res_mono = (i, j), tuple(rest)
        upper.setdefault(key, {})
        upper[key][res_mono] = upper[key].get(res_mono, Fraction(0)) + coeff

    H: List[List[_TEntry]] = [[_TEntry(Fraction(0), {}) for _ in range(m)] for _ in range(m)]
    for (i, j), terms in upper.items():
        p = Poly(ring, terms)
        if i == j:
            H[i][i] = H[i][i].add(_TEntry.of(p, x_vars))
        else:
            half = _TEntry.of(p, x_vars).scale(Fraction(1, 2))
            H[i][j] = H[i][j].add(half)
            H[j][i] = H[j][i].add(half)

    active = list(range(m))
    while True:
        pivot = next((i for i in active if H[i][i].c != 0), None)
        if pivot is None:
            off = next(((i, j) for i in active for j in active
                        if i < j and H[i][j].c != 0), None)
            if off is None:
                break
            i, j = off
            # add row j to row i and column j to column i (char 0: creates a unit)
            for l in active:
                H[i][l] = H[i][l].add(H[j][l])
            for l in active:
                H[l][i] = H[l][i].add(H[l][j])
            continue
        i = pivot
        inv = H[i][i].inv()
        others = [j for j in active if j != i]
        col = {j: H[j][i] for j in others}
        for j in others:
            fac = col[j].mul(inv)
            for l in others:
                H[j][l] = H[j][l].add(fac.mul(H[i][l]).scale(Fraction(-1)))
        active.remove(i)

    k = len(active)
    if k == 0:
        return DdkClass(d, 0, "IS_Ddk")
    needed = k * (k + 1) // 2
    if needed > d:
        return DdkClass(d, k, "NOT_APPLICABLE")
    rows = RowBasis(lambda i: i)
    rank = 0
    for a in range(k):
        for b in range(a, k):
            entry = H[active[a]][active[b]]
            if entry.c != 0:
                raise AssertionError("unsplit block contains a unit entry")
            if rows.add(dict(entry.lin)) is not None:
                rank += 1
    verdict = "IS_Ddk" if rank == needed else "NOT_Ddk"
    return DdkClass(d, k, verdict)


# ---------------------------------------------------------------------------
# report bundle


@dataclass(frozen=True)
class InvariantReport:
    c_ext: QuotientDim
    c_plain: QuotientDim
    determinacy: Optional[int]
    basis: Tuple[Poly, ...]


def invariant_report(f: Poly, I: Ideal) -> InvariantReport:
    c_ext = extended_codim(f, I)
    c_plain = plain_codim(f, I)
    if c_ext.is_finite != c_plain.is_finite:
        raise AssertionError("finiteness of the two codimensions must agree")
    det = determinacy_bound(f, I) if c_ext.is_finite else None
    basis = tuple(I.gens[pos].term_mul(m, Fraction(1)) for pos, m in c_ext.witness)
    return InvariantReport(c_ext, c_plain, det, basis)

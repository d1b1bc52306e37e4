"""Exact deformation harness: seeded generic members, critical-point counts
off the zero set, empirical splitting functions, and conservation checks.

Counts are global: a deformed polynomial's critical points are tallied over
all of affine space (dimension of the saturated Jacobian quotient), not in a
small ball, so every report carries the GLOBAL_COUNT marker. Genericity is
sampled (cross-seed stability plus a degree-drift probe), never certified;
disagreement raises instead of guessing. Rational points are located by
per-variable minimal polynomials and the rational root theorem; when some
mass sits at nonrational points only the aggregate is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GermforgeError
from .invariants import extended_codim, positive_codim_locus
from .linalg import nullspace
from .polyring import GLOBAL_DP, LOCAL_DS, Poly, Ring
from .stdbasis import Ideal, saturation, subideal_preimage
from .tangent import tangent_ideal, theta_preserving

DEFAULT_SEEDS: Tuple[int, ...] = (11, 13)
TRIAL_SEEDS: Tuple[int, ...] = (11, 13, 17, 19, 23, 29, 31, 37)

_MASK = (1 << 64) - 1


class XorShift64:
    """Deterministic 64-bit xorshift; identical streams on every platform."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        s = (seed ^ 0x9E3779B97F4A7C15) & _MASK
        self.state = s if s else 0x2545F4914F6CDD1D

    def next_u64(self) -> int:
        x = self.state
        x ^= (x << 13) & _MASK
        x ^= x >> 7
        x ^= (x << 17) & _MASK
        self.state = x
        return x

    def rational(self) -> Fraction:
        num = 1 + self.next_u64() % 13
        den = 1 + self.next_u64() % 13
        sign = -1 if self.next_u64() & 1 else 1
        return Fraction(sign * num, den)


# ---------------------------------------------------------------------------
# deformations


def _deformation_basis(f: Poly, I: Ideal) -> List[Poly]:
    c = extended_codim(f, I)
    if not c.is_finite:
        raise GermforgeError("NOT_FINITE_CODIM",
                             "deformations are drawn along a finite basis over the tangent ideal")
    return [I.gens[pos].term_mul(m, Fraction(1)) for pos, m in c.witness]


def random_deformation(f: Poly, I: Ideal, degree_bound: Optional[int] = None,
                       seed: int = 11) -> Poly:
    """f plus a seeded rational combination of the cobasis of the tangent
    ideal inside I (monomial multiples of I's generators), keeping the
    elements of total degree at most degree_bound; the result stays in I
    whenever f lies in I. The default bound admits the whole cobasis, so a
    finite versal family is sampled; lower bounds truncate it, which the
    splitting harness detects as drift."""
    basis = _deformation_basis(f, I)
    if not basis:
        return f
    if degree_bound is None:
        degree_bound = max(h.total_degree() for h in basis)
    rng = XorShift64(seed)
    g = f
    for h in basis:
        if h.total_degree() <= degree_bound:
            g = g + h * rng.rational()
    return g


# ---------------------------------------------------------------------------
# critical points off the zero set


@dataclass(frozen=True)
class CriticalReport:
    sat_ideal: Ideal
    count: int
    all_morse: bool


def _det(M: List[List[Poly]], ring: Ring) -> Poly:
    k = len(M)
    if k == 1:
        return M[0][0]
    out = ring.zero()
    for j in range(k):
        if M[0][j].is_zero():
            continue
        minor = [[M[i][t] for t in range(k) if t != j] for i in range(1, k)]
        term = M[0][j] * _det(minor, ring)
        out = out + (term if j % 2 == 0 else -term)
    return out


def hessian_det(g: Poly) -> Poly:
    n = g.ring.n
    return _det([[g.derive(i).derive(j) for j in range(n)] for i in range(n)],
                g.ring)


def critical_points_outside(g: Poly, I: Ideal,
                            raw_saturation: bool = False) -> CriticalReport:
    """Saturate the Jacobian ideal of g by I and count the quotient; the
    Morse certificate adjoins the Hessian determinant and asks for the unit
    ideal. A unit I means no zero set to avoid, so by default saturation is
    skipped and every critical point counts; raw_saturation applies the
    collapse rule for the unit ideal instead, which kills the count."""
    ring = g.ring
    jac = Ideal(ring, [g.derive(i) for i in range(ring.n)], GLOBAL_DP)
    I_dp = I.with_order(GLOBAL_DP)
    if I_dp.is_unit():
        sat = Ideal(ring, [ring.one()], GLOBAL_DP) if raw_saturation else jac
    else:
        sat = saturation(jac, I_dp)
    qd = sat.quotient_dimension()
    if not qd.is_finite:
        raise GermforgeError("POSITIVE_DIMENSIONAL_CRITICAL_LOCUS",
                             "the critical locus off the zero set is not finite")
    with_hess = Ideal(ring, list(sat.gens) + [hessian_det(g)], GLOBAL_DP)
    return CriticalReport(sat, qd.value, with_hess.is_unit())


def corrected_extended_codim(g: Poly, I: Ideal) -> int:
    """Dimension of I over the tangent ideal of g in the global order; by
    finite support this is the sum of the local values over every point."""
    I_dp = I.with_order(GLOBAL_DP)
    tau = tangent_ideal(g, theta_preserving(I_dp))
    qd = subideal_preimage(I_dp, tau).quotient_dimension()
    if not qd.is_finite:
        raise GermforgeError("GENERICITY_SUSPECT",
                             "the deformed member has a positive-dimensional defect locus")
    return qd.value


# ---------------------------------------------------------------------------
# rational point location


def _min_poly(I_dp: Ideal, var: int, bound: int) -> List[Fraction]:
    """Monic minimal polynomial coefficients (low to high) of the image of
    x_var in the finite quotient. Powers go in by increasing degree, so the
    first kernel combination is the minimal relation."""
    ring = I_dp.ring
    x = ring.var(var)
    power = ring.one()
    vectors: List[Dict] = []
    for _ in range(bound + 2):
        vectors.append(dict(I_dp.normal_form(power).terms))
        kernel = nullspace(vectors, list(range(len(vectors))),
                           lambda m: GLOBAL_DP.key(m))
        if kernel:
            combo = kernel[0]
            deg = max(combo)
            lead = combo[deg]
            return [combo.get(t, Fraction(0)) / lead for t in range(deg + 1)]
        power = power * x
    raise AssertionError("minimal polynomial exceeded the dimension bound")


def _divisors(v: int) -> List[int]:
    out = []
    d = 1
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            out.append(v // d)
        d += 1
    return out


def _rational_roots(coeffs: List[Fraction]) -> List[Fraction]:
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    roots = set()
    low = 0
    while ints[low] == 0:
        low += 1
    if low > 0:
        roots.add(Fraction(0))
    lead = abs(ints[-1])
    const = abs(ints[low])
    for p in _divisors(const):
        for q in _divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                value = Fraction(0)
                for c in reversed(ints):
                    value = value * cand + c
                if value == 0:
                    roots.add(cand)
    return sorted(roots)


def _eval(p: Poly, point: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        v = coeff
        for x, e in zip(point, mono):
            v = v * x ** e
        total = total + v
    return total


def locate_rational_points(L: Ideal) -> Optional[List[Tuple[Fraction, ...]]]:
    """Every point of the zero set, when all of them are rational; None when
    part of the multiplicity sits at nonrational points. Completeness is
    decided by comparing located local dimensions against the global one."""
    L_dp = L.with_order(GLOBAL_DP)
    if L_dp.is_unit():
        return []
    qd = L_dp.quotient_dimension()
    if not qd.is_finite:
        return None
    total = qd.value
    candidates: List[Tuple[Fraction, ...]] = [()]
    for i in range(L.ring.n):
        roots = _rational_roots(_min_poly(L_dp, i, total))
        candidates = [c + (r,) for c in candidates for r in roots]
        if not candidates:
            break
    points = [c for c in candidates if all(_eval(g, c) == 0 for g in L_dp.gens)]
    located = 0
    for pt in points:
        moved = Ideal(L.ring, [g.translate(list(pt)) for g in L_dp.gens], LOCAL_DS)
        local = moved.quotient_dimension()
        if not local.is_finite:
            return None
        located += local.value
    if located != total:
        return None
    return points


# ---------------------------------------------------------------------------
# splitting report


@dataclass(frozen=True)
class SplittingReport:
    sigma: Optional[Dict[int, int]]
    corrected: int
    morse: int
    seeds: Tuple[int, ...]
    stable: bool
    warnings: Tuple[str, ...]


def local_extended_codim(g: Poly, I: Ideal, point: Sequence[Fraction]) -> int:
    """Extended codimension of g at a rational point, by translating the
    whole problem so the point becomes the origin."""
    ring = I.ring
    moved_I = Ideal(ring, [h.translate(list(point)) for h in I.gens], LOCAL_DS)
    qd = extended_codim(g.translate(list(point)), moved_I)
    if not qd.is_finite:
        raise GermforgeError("GENERICITY_SUSPECT",
                             "a located point has infinite local codimension")
    return qd.value


def _one_split(f: Poly, I: Ideal, seed: int, degree_bound: Optional[int],
               c_value: int):
    basis = _deformation_basis(f, I)
    bound = degree_bound
    if bound is None:
        bound = max(h.total_degree() for h in basis) if basis else 0
    g = random_deformation(f, I, bound, seed)
    corrected = corrected_extended_codim(g, I)
    if corrected > c_value:
        raise GermforgeError("GENERICITY_SUSPECT",
                             f"seed {seed}: defect mass {corrected} exceeds the "
                             f"codimension {c_value} of the undeformed germ")
    crit = critical_points_outside(g, I)
    if not crit.all_morse:
        raise GermforgeError("GENERICITY_SUSPECT",
                             f"seed {seed}: critical points off the zero set "
                             "are degenerate")
    # drift probe: one degree of extra room must not change the count
    g2 = random_deformation(f, I, bound + 1, seed)
    if g2.terms != g.terms and critical_points_outside(g2, I).count != crit.count:
        raise GermforgeError("GENERICITY_SUSPECT",
                             f"seed {seed}: critical count drifts with the degree bound")
    assert corrected >= crit.count
    if corrected == crit.count:
        # every defect point is one of the nondegenerate critical points,
        # each of local codimension one; no location needed
        sigma: Optional[Dict[int, int]] = {1: crit.count} if crit.count else {}
        return sigma, corrected, crit.count
    points = locate_rational_points(positive_codim_locus(g, I))
    sigma = None
    if points is not None:
        sigma = {}
        mass = 0
        for pt in points:
            k = local_extended_codim(g, I, pt)
            if k > 0:
                sigma[k] = sigma.get(k, 0) + 1
                mass += k
        assert mass == corrected, "located local codimensions must tally"
    return sigma, corrected, crit.count


def empirical_splitting(f: Poly, I: Ideal,
                        seeds: Optional[Sequence[int]] = None,
                        degree_bound: Optional[int] = None) -> SplittingReport:
    c = extended_codim(f, I)
    if not c.is_finite:
        raise GermforgeError("NOT_FINITE_CODIM",
                             "splitting needs finite extended codimension")
    used = tuple(seeds) if seeds else DEFAULT_SEEDS
    warnings = ["GLOBAL_COUNT", "GENERICITY_SAMPLED"]
    if c.value == 0:
        return SplittingReport({}, 0, 0, used, True, tuple(warnings))
    outcomes = [_one_split(f, I, s, degree_bound, c.value) for s in used]
    first = outcomes[0]
    if any(o != first for o in outcomes[1:]):
        raise GermforgeError("GENERICITY_SUSPECT",
                             "seeds disagree on the splitting outcome")
    sigma, corrected, morse = first
    for k, cnt in (sigma or {}).items():
        assert k * cnt <= c.value
    if sigma is None:
        warnings.append("NONRATIONAL_POINTS")
    return SplittingReport(sigma, corrected, morse, used, True, tuple(warnings))


def oracle_morse_number(f: Poly, I: Ideal,
                        seeds: Optional[Sequence[int]] = None,
                        degree_bound: Optional[int] = None) -> int:
    return empirical_splitting(f, I, seeds, degree_bound).morse


# ---------------------------------------------------------------------------
# conservation of number


def conservation_check(f: Poly, I: Ideal, trials: int = 3,
                       assume_reduced: bool = False,
                       degree_bound: Optional[int] = None) -> bool:
    """The multiplicity of f against the nondegenerate-point component at the
    origin must reappear as the total multiplicity, off the zero set, of
    every sampled member of the family."""
    from .jetmorse import (intersection_multiplicity, jet_context,
                           jet_pullback, morse_component)

    c = extended_codim(f, I)
    if not c.is_finite:
        raise GermforgeError("NOT_FINITE_CODIM",
                             "conservation needs finite extended codimension")
    if c.value == 0:
        # the family is constant, so every trial repeats the reference
        return True
    ctx = jet_context(I, 1)
    M = morse_component(ctx, assume_reduced).ideal
    reference = intersection_multiplicity(f, I, ctx, M, "CM")
    I_dp = I.with_order(GLOBAL_DP)
    for t in range(trials):
        g = random_deformation(f, I, degree_bound, TRIAL_SEEDS[t % len(TRIAL_SEEDS)])
        pulled = jet_pullback(g, I, ctx, M).with_order(GLOBAL_DP)
        total = saturation(pulled, I_dp).quotient_dimension()
        if not total.is_finite or total.value != reference:
            return False
    return True

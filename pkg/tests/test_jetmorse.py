import random
from fractions import Fraction

import pytest

from germforge.errors import GermforgeError
from germforge.polyring import GLOBAL_DP, LOCAL_DS, Ring, parse_poly
from germforge.stdbasis import Ideal, ideal_quotient, saturation
from germforge.invariants import extended_codim
from germforge.jetmorse import (
    JetContext,
    LiftedGerm,
    intersection_multiplicity,
    jet_context,
    jet_pullback,
    lift_germ,
    morse_component,
    morse_component_ideal,
    morse_number,
)

from helpers import evalp, kernel_combos

R2 = Ring(["x", "y"])
R1 = Ring(["x"])


def P(s, ring=R2):
    return parse_poly(s, ring)


def ideal(ring, order, *gens):
    return Ideal(ring, [parse_poly(g, ring) for g in gens], order)


EJEM = ideal(R2, LOCAL_DS, "x^2", "y")
CUSP = P("y^2 + x^3")
UNIT1 = Ideal(R1, [parse_poly("1", R1)], LOCAL_DS)


class TestJetContext:
    def test_regression_ring_and_generators(self):
        ctx = jet_context(EJEM, 1)
        assert ctx.ring.names == ("z1", "z2", "a1_0_0", "a1_1_0", "a1_0_1",
                                  "a2_0_0", "a2_1_0", "a2_0_1")
        jr = ctx.ring
        assert ctx.Q[0] == parse_poly("2 z1 a1_0_0 + z1^2 a1_1_0 + z2 a2_1_0", jr)
        assert ctx.Q[1] == parse_poly("z1^2 a1_0_1 + a2_0_0 + z2 a2_0_1", jr)
        assert [str(g) for g in ctx.g_z] == ["z1^2", "z2"]

    def test_variable_count_formula(self):
        assert jet_context(EJEM, 1).ring.n == 2 + 2 * 3
        assert jet_context(EJEM, 2).ring.n == 2 + 2 * 6

    def test_unit_generator_smooth_case(self):
        ctx = jet_context(UNIT1, 1)
        assert ctx.ring.names == ("z1", "a1_0", "a1_1")
        assert [str(q) for q in ctx.Q] == ["a1_1"]

    def test_bad_jet_order(self):
        with pytest.raises(GermforgeError) as ei:
            jet_context(EJEM, 0)
        assert ei.value.code == "PRECONDITION_VIOLATED"

    def test_zero_ideal_rejected(self):
        with pytest.raises(GermforgeError) as ei:
            jet_context(Ideal(R2, [], LOCAL_DS), 1)
        assert ei.value.code == "ZERO_IDEAL"


class TestMorseComponent:
    def test_smooth_case_is_singular_jet_locus(self):
        ctx = jet_context(UNIT1, 1)
        mc = morse_component(ctx)
        assert [str(g) for g in mc.ideal.gens] == ["a1_1"]
        assert mc.certificate == "squarefree-monomials"
        assert not mc.divergent

    def test_radical_unavailable_without_flag(self):
        ctx = jet_context(EJEM, 1)
        with pytest.raises(GermforgeError) as ei:
            morse_component(ctx)
        assert ei.value.code == "RADICAL_UNAVAILABLE"

    def test_assumed_reduced_regression(self):
        ctx = jet_context(EJEM, 1)
        mc = morse_component(ctx, assume_reduced=True)
        assert mc.certificate == "assumed-reduced"
        assert not mc.divergent
        assert mc.ideal.equals(mc.saturated)

    def test_colon_stability(self):
        for ctx in (jet_context(UNIT1, 1), jet_context(EJEM, 1)):
            flag = ctx.base is EJEM
            M = morse_component_ideal(ctx, assume_reduced=flag)
            again = ideal_quotient(M, ctx.J2())
            assert again.equals(M)

    def test_component_vanishes_on_critical_jets_off_base_locus(self):
        # pointwise form of "Z off V(I) = C_1 off V(I)": at rational points
        # with z outside V(I), solutions of Q = 0 satisfy every M' generator
        ctx = jet_context(EJEM, 1)
        M = morse_component_ideal(ctx, assume_reduced=True)
        rng = random.Random(20240915)
        n, total = ctx.n, ctx.ring.n
        a_count = total - n
        hits = 0
        while hits < 20:
            z = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
            if all(evalp(g, z) == 0 for g in ctx.base.gens):
                continue
            # Q is linear in the jet coordinates: solve the 2 x 6 system
            cols = []
            for t in range(a_count):
                point = z + [Fraction(0)] * a_count
                point[n + t] = Fraction(1)
                cols.append({i: evalp(q, point) for i, q in enumerate(ctx.Q)})
            combos = kernel_combos(cols, list(range(a_count)), keyf=lambda k: k)
            if not combos:
                continue
            weights = [Fraction(rng.randint(-5, 5)) for _ in combos]
            a_vals = [Fraction(0)] * a_count
            for w, combo in zip(weights, combos):
                for t, c in combo.items():
                    a_vals[t] += w * c
            point = z + a_vals
            assert all(evalp(q, point) == 0 for q in ctx.Q)
            assert all(evalp(g, point) == 0 for g in M.gens)
            hits += 1

    def test_random_points_agree_on_both_vanishing_loci(self):
        ctx = jet_context(EJEM, 1)
        M = morse_component_ideal(ctx, assume_reduced=True)
        rng = random.Random(7)
        for _ in range(20):
            point = [Fraction(rng.randint(-7, 7), rng.randint(1, 7))
                     for _ in range(ctx.ring.n)]
            if all(evalp(g, point[:ctx.n]) == 0 for g in ctx.base.gens):
                continue
            on_c1 = all(evalp(q, point) == 0 for q in ctx.Q)
            on_m = all(evalp(g, point) == 0 for g in M.gens)
            if on_c1:
                assert on_m


class TestPullback:
    def test_spec_lifting_example(self):
        ctx = jet_context(EJEM, 1)
        lift = LiftedGerm(P("x^2"), EJEM.gens, (R2.one(), R2.zero()))
        pb = jet_pullback(P("x^2"), EJEM, ctx, ctx.J1(), lifting=lift)
        assert pb.equals(ideal(R2, LOCAL_DS, "2x"))

    def test_unit_ideal_pulls_back_to_unit(self):
        ctx = jet_context(EJEM, 1)
        V = Ideal(ctx.ring, [ctx.ring.one()], GLOBAL_DP)
        assert jet_pullback(CUSP, EJEM, ctx, V).is_unit()

    def test_taylor_coefficients(self):
        lift = LiftedGerm(CUSP, EJEM.gens, (P("x + y"), P("y - x^2")))
        assert lift.taylor_coefficient(1, (2, 0)) == P("-1")
        assert lift.taylor_coefficient(0, (0, 1)) == P("1")
        assert lift.taylor_coefficient(0, (0, 0)) == P("x + y")

    def test_bad_lifting_rejected(self):
        with pytest.raises(AssertionError):
            LiftedGerm(CUSP, EJEM.gens, (P("x"), P("x")))

    def test_not_member_rejected(self):
        ctx = jet_context(EJEM, 1)
        with pytest.raises(GermforgeError) as ei:
            jet_pullback(P("x"), EJEM, ctx, ctx.J1())
        assert ei.value.code == "F_NOT_IN_IDEAL"

    def test_local_member_without_polynomial_lifting(self):
        # x = (x - x^2)/(1 - x) locally, but no polynomial combination works
        I = ideal(R2, LOCAL_DS, "x - x^2")
        assert I.contains(P("x"))
        with pytest.raises(GermforgeError) as ei:
            lift_germ(P("x"), I)
        assert ei.value.code == "LIFTING_FAILED"


class TestIntersectionMultiplicity:
    def test_morse_point_multiplicity_one(self):
        ctx = jet_context(UNIT1, 1)
        M = morse_component_ideal(ctx)
        f = parse_poly("x^2", R1)
        assert intersection_multiplicity(f, UNIT1, ctx, M, "CM") == 1
        assert intersection_multiplicity(f, UNIT1, ctx, M, "KOSZUL") == 1

    def test_cusp_of_one_variable(self):
        ctx = jet_context(UNIT1, 1)
        M = morse_component_ideal(ctx)
        f = parse_poly("x^3", R1)
        assert intersection_multiplicity(f, UNIT1, ctx, M, "CM") == 2
        assert intersection_multiplicity(f, UNIT1, ctx, M, "KOSZUL") == 2

    def test_koszul_without_elimination_agrees(self):
        ctx = jet_context(UNIT1, 1)
        M = morse_component_ideal(ctx)
        for s, expect in (("x^2", 1), ("x^3", 2)):
            f = parse_poly(s, R1)
            got = intersection_multiplicity(f, UNIT1, ctx, M, "KOSZUL",
                                            preprocess=False)
            assert got == expect

    def test_lifting_independence(self):
        ctx = jet_context(EJEM, 1)
        M = morse_component_ideal(ctx, assume_reduced=True)
        liftA = LiftedGerm(CUSP, EJEM.gens, (P("x"), P("y")))
        liftB = LiftedGerm(CUSP, EJEM.gens, (P("x + y"), P("y - x^2")))
        vals = {intersection_multiplicity(CUSP, EJEM, ctx, M, "CM", lifting=lf)
                for lf in (liftA, liftB, None)}
        assert vals == {2}

    def test_not_isolated(self):
        ctx = jet_context(EJEM, 1)
        M = morse_component_ideal(ctx, assume_reduced=True)
        lift0 = LiftedGerm(P("x^2"), EJEM.gens, (R2.one(), R2.zero()))
        with pytest.raises(GermforgeError) as ei:
            intersection_multiplicity(P("x^2"), EJEM, ctx, M, "CM", lifting=lift0)
        assert ei.value.code == "NOT_ISOLATED"


class TestMorseNumber:
    def test_cusp_jet_value(self):
        assert morse_number(CUSP, EJEM, method="JET", assume_reduced=True) == 2

    def test_already_morse(self):
        I = ideal(R2, LOCAL_DS, "1")
        assert morse_number(P("x^2 + y^2"), I, method="JET") == 1

    def test_one_variable_cusp(self):
        assert morse_number(parse_poly("x^3", R1), UNIT1, method="JET") == 2

    def test_infinite_codimension_rejected(self):
        with pytest.raises(GermforgeError) as ei:
            morse_number(P("x^2"), EJEM, method="JET")
        assert ei.value.code == "NOT_FINITE_CODIM"

    def test_coordinate_invariance(self):
        # (x, y) -> (x, y + x^2) preserves the ideal
        g = CUSP.substitute([P("x"), P("y + x^2")], R2)
        assert extended_codim(g, EJEM).value == extended_codim(CUSP, EJEM).value == 3
        assert morse_number(g, EJEM, method="JET", assume_reduced=True) == 2


class TestConservation:
    def test_hand_deformation_at_small_rational_times(self):
        ctx = jet_context(EJEM, 1)
        M = morse_component_ideal(ctx, assume_reduced=True)
        reference = intersection_multiplicity(CUSP, EJEM, ctx, M, "CM")
        I_glob = EJEM.with_order(GLOBAL_DP)
        for tv in (Fraction(1, 7), Fraction(1, 11)):
            F = CUSP + P("y") * tv + P("x^2") * tv
            pb = jet_pullback(F, EJEM, ctx, M)
            off = saturation(pb.with_order(GLOBAL_DP), I_glob)
            assert off.quotient_dimension().value == reference
            # the deformed member has exactly two critical points, both
            # rational: (0, -t/2) and (-2t/3, -t/2), each a simple zero
            for cx in (Fraction(0), Fraction(-2, 3) * tv):
                moved = [g.translate([cx, -tv / 2]) for g in pb.gens]
                local = Ideal(R2, moved, LOCAL_DS).quotient_dimension()
                assert local.value == 1

import random
from fractions import Fraction

import pytest

from efdkit.canonical import DeltaKT, FragmentError
from efdkit.gen import random_term
from efdkit.lattice import PrimeSet, boolean_p, divisible_p, trivial_p
from efdkit.models import (
    GammaPerfect,
    PositiveCone,
    RationalGroup,
    TwoMV,
    check_efd_exhaustive,
    check_uniqueness_exhaustive,
    eval_term,
    radical_member,
    sample_elements,
    solutions_for_assignment,
)
from efdkit.terms import (
    Signature,
    boolean_marker,
    build_delta_k,
    build_epsilon_k,
    parse_sentence,
    parse_term,
    print_term,
    uniqueness_quasiidentity,
    xvar,
    zvar,
)
from efdkit.translate import (
    ABSURD_MV,
    RadBasicSentence,
    check_in_two,
    classify_mv_sentences,
    hoop_sentence_to_delta_kt,
    mv_to_hoop,
    phi_rad_decompose,
    simplify_hoop_term,
    star_sentence,
    star_term,
)

GQ = GammaPerfect(RationalGroup())


class TestStarTranslation:
    def test_variable_becomes_absolute_value(self):
        assert print_term(star_term(parse_term("x1", Signature.HOOP))) == r"x1 \/ -x1"

    def test_z_variables_stay(self):
        assert star_term(parse_term("z1", Signature.HOOP)) == zvar(1)

    def test_monus_becomes_truncated_difference(self):
        st = star_term(parse_term("z1 -. z2", Signature.HOOP))
        assert print_term(st) == r"z1 + -z2 \/ 0"

    def test_sentence_appends_nonnegativity(self):
        phi = build_delta_k(3, Signature.HOOP)
        res = star_sentence(phi)
        assert res.sentence.signature is Signature.GROUP
        assert len(res.sentence.equations) == 2
        extra = res.sentence.equations[-1]
        assert print_term(extra[0]) == r"z1 \/ 0" and extra[1] == zvar(1)

    def test_rejects_group_input(self):
        with pytest.raises(FragmentError):
            star_sentence(build_delta_k(2, Signature.GROUP))

    def test_paired_evaluation(self):
        rng = random.Random(11)
        cone = PositiveCone(RationalGroup())
        q = RationalGroup()
        for _ in range(30):
            t = random_term(rng, Signature.HOOP, 2, 3, coeff=4)
            st = star_term(t)
            for _ in range(20):
                env = {
                    xvar(1): Fraction(rng.randint(0, 8), rng.randint(1, 4)),
                    xvar(2): Fraction(rng.randint(0, 8), rng.randint(1, 4)),
                }
                assert eval_term(cone, t, env) == eval_term(q, st, env)


class TestTwoElementCheck:
    def test_epsilon_table(self):
        ct = check_in_two(build_epsilon_k(2))
        assert ct.holds
        assert set(ct.table) == {(0,), (1,)}

    def test_failing_sentence_reports_vector(self):
        # z + ~z = x has no solution at x = 0 in the two-element algebra
        phi = parse_sentence("forall x1 exists! z1 : z1 + ~z1 = x1", Signature.MV)
        ct = check_in_two(phi)
        assert not ct.holds
        assert ct.failing == (0,)

    def test_bound_enforced(self):
        n = 25
        xs = " ".join(f"x{i}" for i in range(1, n + 1))
        phi = parse_sentence(f"forall {xs} exists! z1 : z1 = x1", Signature.MV)
        with pytest.raises(FragmentError):
            check_in_two(phi)


class TestDecomposition:
    def test_branch_count_is_two_to_the_n(self):
        parts = phi_rad_decompose(build_epsilon_k(2))
        assert len(parts) == 2
        assert {p.sign_vector for p in parts} == {(0,), (1,)}

    def test_branches_are_single_equation_mv(self):
        for p in phi_rad_decompose(build_epsilon_k(3)):
            phi = p.sentence
            assert phi.signature is Signature.MV
            assert len(phi.equations) == 1 and phi.m == 1

    def test_all_radical_branch_preserves_radical_solutions(self):
        branch = next(
            p for p in phi_rad_decompose(build_epsilon_k(2)) if p.sign_vector == (0,)
        )
        for x in sample_elements(GQ, 40, seed=9):
            if not radical_member(GQ, x):
                continue
            sols, _ = solutions_for_assignment(GQ, branch.sentence, {xvar(1): x})
            assert sols
            for (z,) in sols:
                assert radical_member(GQ, z)

    def test_branches_hold_in_two_element_model(self):
        for p in phi_rad_decompose(build_epsilon_k(2)):
            assert check_efd_exhaustive(TwoMV(), p.sentence)

    def test_uniqueness_rule_of_input_in_two(self):
        rule = uniqueness_quasiidentity(build_epsilon_k(2))
        assert check_uniqueness_exhaustive(TwoMV(), rule)

    def test_precondition_failure_raises(self):
        phi = parse_sentence("forall x1 exists! z1 : z1 + ~z1 = x1", Signature.MV)
        with pytest.raises(FragmentError):
            phi_rad_decompose(phi)


class TestHoopTranslation:
    def test_radical_branch_maps_to_divisibility(self):
        branch = next(
            p for p in phi_rad_decompose(build_epsilon_k(3)) if p.sign_vector == (0,)
        )
        hoop = mv_to_hoop(branch)
        assert hoop.signature is Signature.HOOP
        k, t = hoop_sentence_to_delta_kt(hoop)
        assert k == 3 and t == xvar(1)

    def test_simplify_units(self):
        t = parse_term("(x1 + 0) -. x1", Signature.HOOP)
        assert simplify_hoop_term(t) == parse_term("0", Signature.HOOP)

    def test_polarity_mismatch_rejected(self):
        # ~z = z equates a co-radical with a radical value
        phi = parse_sentence("exists! z1 : ~z1 = z1", Signature.MV)
        with pytest.raises(FragmentError):
            mv_to_hoop(RadBasicSentence(phi, ()))


class TestMVClassification:
    def test_epsilon_prime_support(self):
        result = classify_mv_sentences([build_epsilon_k(12)])
        assert result.ae_class == divisible_p(PrimeSet.finite({2, 3}))

    def test_union_over_conjunction(self):
        result = classify_mv_sentences([build_epsilon_k(2), build_epsilon_k(5)])
        assert result.ae_class == divisible_p(PrimeSet.finite({2, 5}))

    def test_boolean_marker_forces_boolean(self):
        result = classify_mv_sentences([boolean_marker()])
        assert result.ae_class == boolean_p()

    def test_boolean_marker_dominates_epsilon(self):
        result = classify_mv_sentences([boolean_marker(), build_epsilon_k(2)])
        assert result.ae_class == boolean_p()

    def test_absurd_marker(self):
        result = classify_mv_sentences([ABSURD_MV])
        assert result.ae_class == trivial_p()

    def test_empty_set_is_top(self):
        result = classify_mv_sentences([])
        assert result.ae_class == divisible_p(PrimeSet.finite(()))

    def test_rejects_group_sentence(self):
        with pytest.raises(FragmentError):
            classify_mv_sentences([build_delta_k(2, Signature.GROUP)])

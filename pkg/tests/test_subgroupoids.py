"""Subgroupoid machinery: closure, membership, minimal generating sets,
counting sequences, numerical semigroups, family syntax."""

import pytest
from hypothesis import given, settings, strategies as st

from freemagma import (
    BigSeq,
    CapacityError,
    ExplicitSeq,
    FiniteSet,
    Longitudinal,
    ShiftedFull,
    UnsupportedVariantError,
    brute_count,
    cat_transform,
    catalan_c,
    catalan_numbers,
    closure_up_to,
    contains,
    counting_sequence,
    enumerate_terms,
    family_levels,
    format_family,
    generator_counting_sequence,
    leaf,
    left_comb,
    longitudinal_counting,
    minimal_generating_up_to,
    minimal_generators,
    parse_family,
    product,
    rank_lambda,
    right_comb,
    semigroup_info,
    sum_terms,
    write_sequence_csv,
)

ONE = leaf()
TWO = ONE + ONE
THREE_PLUS = right_comb(3)
THREE_MINUS = left_comb(3)


class TestClosure:
    def test_single_generator_two(self):
        levels = closure_up_to({TWO}, 4)
        assert [len(lvl) for lvl in levels] == [0, 0, 1, 0, 1]
        assert levels[4] == {TWO + TWO}

    def test_full_magma_from_leaf(self):
        levels = closure_up_to({ONE}, 3)
        for k in (1, 2, 3):
            assert levels[k] == set(enumerate_terms(k))

    def test_two_length_three_generators(self):
        levels = closure_up_to({THREE_MINUS, THREE_PLUS}, 6)
        assert [len(lvl) for lvl in levels[1:]] == [0, 0, 2, 0, 0, 4]

    def test_idempotent(self):
        levels = closure_up_to({TWO, THREE_PLUS}, 6)
        elements = set().union(*levels)
        again = closure_up_to(elements, 6)
        assert again == levels

    def test_cap(self):
        with pytest.raises(CapacityError):
            closure_up_to({TWO}, 17)


class TestContains:
    def test_examples(self):
        assert contains({TWO}, TWO + TWO)
        assert not contains({TWO}, THREE_PLUS)
        assert contains({TWO, THREE_PLUS}, TWO + THREE_PLUS)

    def test_leaf_membership(self):
        assert contains({ONE}, ONE)
        assert not contains({TWO}, ONE)

    def test_agrees_with_closure(self):
        gens = {TWO, THREE_PLUS}
        levels = closure_up_to(gens, 7)
        elements = set().union(*levels)
        for k in range(1, 8):
            for t in enumerate_terms(k):
                assert contains(gens, t) == (t in elements)


class TestMinimalGenerators:
    def test_redundant_sum_removed(self):
        assert minimal_generators({TWO, TWO + TWO}) == {TWO}

    def test_independent_pair_survives(self):
        assert minimal_generators({TWO, THREE_PLUS}) == {TWO, THREE_PLUS}

    def test_leaf(self):
        assert minimal_generators({ONE}) == {ONE}

    def test_invariant_under_generating_set(self):
        small = minimal_generators({TWO})
        big = minimal_generators({TWO, TWO + TWO, TWO + (TWO + TWO)})
        assert small == big == {TWO}

    def test_no_minimal_generator_decomposes(self):
        gens = {TWO, THREE_PLUS, TWO + TWO, THREE_MINUS + TWO}
        minimal = minimal_generators(gens)
        for g in minimal:
            if not g.is_leaf:
                assert not (contains(gens, g.left) and contains(gens, g.right))

    def test_empty(self):
        assert minimal_generators(frozenset()) == frozenset()


class TestRankLambda:
    def test_pair(self):
        assert rank_lambda({TWO, THREE_PLUS}) == (2, 2)

    def test_leaf(self):
        assert rank_lambda({ONE}) == (1, 1)

    def test_sixteen_generator_example(self):
        gens = {THREE_PLUS} | {product(TWO, right_comb(k)) for k in range(2, 17)}
        assert rank_lambda(gens) == (16, 3)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            rank_lambda(frozenset())


class TestGeneratorCountingSequence:
    def test_shifted_full(self):
        seq = generator_counting_sequence(ShiftedFull(ONE), 8)
        assert seq.entries == (0,) + tuple(catalan_numbers(7))

    def test_finite_histogram(self):
        seq = generator_counting_sequence(FiniteSet({TWO, THREE_MINUS, THREE_PLUS}), 6)
        assert seq.entries == (0, 1, 2, 0, 0, 0)

    def test_finite_histogram_drops_redundant(self):
        seq = generator_counting_sequence(FiniteSet({TWO, TWO + TWO}), 6)
        assert seq.entries == (0, 1, 0, 0, 0, 0)

    def test_explicit_passthrough(self):
        seq = generator_counting_sequence(ExplicitSeq(BigSeq([0, 1, 0])), 5)
        assert seq.entries == (0, 1, 0, 0, 0)

    def test_longitudinal_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            generator_counting_sequence(Longitudinal({2}), 5)


class TestCountingSequence:
    def test_full_magma_is_catalan(self):
        assert counting_sequence(FiniteSet({ONE}), 30) == catalan_c(30)

    def test_shifted_prefix(self):
        seq = counting_sequence(ShiftedFull(ONE), 14)
        assert seq.entries == (0, 1, 1, 3, 7, 21, 62, 197, 637, 2123, 7196, 24807, 86608, 305792)

    def test_empty_family(self):
        assert counting_sequence(FiniteSet(()), 6).entries == (0,) * 6

    def test_matches_transform(self):
        fam = FiniteSet({TWO, THREE_PLUS})
        assert counting_sequence(fam, 12) == cat_transform(
            generator_counting_sequence(fam, 12)
        )


class TestLongitudinal:
    def test_even_lengths(self):
        seq = longitudinal_counting({2}, 6)
        assert seq.entries == (0, 1, 0, 5, 0, 42)

    def test_unit_length_gives_catalan(self):
        assert longitudinal_counting({1}, 20) == catalan_c(20)

    def test_two_three_fills_beyond_one(self):
        seq = longitudinal_counting({2, 3}, 10)
        cats = catalan_numbers(10)
        assert seq[1] == 0
        for n in range(2, 11):
            assert seq[n] == cats[n - 1]

    def test_levels_full_or_empty(self):
        levels = family_levels(Longitudinal({2, 5}), 8)
        for k in range(1, 9):
            assert len(levels[k]) in (0, len(enumerate_terms(k)))

    def test_every_length_beyond_frobenius_bound_attained(self):
        lengths = {4, 6}
        info = semigroup_info(lengths)
        seq = longitudinal_counting(lengths, 20)
        bound = info.gcd * max(info.frobenius, 0)
        for n in range(1, 21):
            if n > bound and n % info.gcd == 0:
                assert seq[n] > 0


class TestSemigroupInfo:
    def test_coprime_pair(self):
        info = semigroup_info({3, 5})
        assert (info.gcd, info.frobenius) == (1, 7)

    def test_gcd_reduction(self):
        info = semigroup_info({4, 6})
        assert info.gcd == 2
        assert info.reduced_generators == {2, 3}
        assert info.frobenius == 1

    def test_unit(self):
        assert semigroup_info({1}).frobenius == -1

    def test_rank_three_no_coprime_pair(self):
        assert semigroup_info({6, 10, 15}).frobenius == 29

    def test_frobenius_brute_force(self):
        # Representability oracle for {3,5}: 7 is the largest gap.
        def representable(n):
            return any(
                3 * i + 5 * j == n for i in range(n // 3 + 1) for j in range(n // 5 + 1)
            )

        assert not representable(7)
        assert all(representable(n) for n in range(8, 30))

    def test_validation(self):
        with pytest.raises(ValueError):
            semigroup_info(set())
        with pytest.raises(ValueError):
            semigroup_info({0, 2})


class TestBruteCount:
    def test_single_two(self):
        assert brute_count({TWO}, 8).entries == (0, 1, 0, 1, 0, 2, 0, 5)

    def test_full(self):
        assert brute_count({ONE}, 5).entries == (1, 1, 2, 5, 14)

    def test_pair(self):
        assert brute_count({TWO, THREE_PLUS}, 8).entries == (0, 1, 1, 1, 2, 3, 6, 11)

    def test_matches_transform_counting(self):
        for gens in ({TWO}, {TWO, THREE_PLUS}, {THREE_MINUS, THREE_PLUS}, {ONE, TWO}):
            assert brute_count(gens, 12) == counting_sequence(FiniteSet(gens), 12)


class TestMinimalGeneratingUpTo:
    def test_finite_levels(self):
        levels = minimal_generating_up_to(FiniteSet({TWO, TWO + TWO, THREE_PLUS}), 6)
        assert levels[2] == {TWO}
        assert levels[3] == {THREE_PLUS}
        assert levels[4] == frozenset()

    def test_longitudinal_generators(self):
        # Level 4 of the even-length family: terms whose root split is
        # odd+odd cannot be written as a sum of two even members.
        levels = minimal_generating_up_to(Longitudinal({2}), 6)
        assert levels[2] == {TWO}
        lvl4 = levels[4]
        assert all(t.left.length % 2 == 1 for t in lvl4)
        assert len(lvl4) == 4  # five terms of length 4, minus 2+2
        assert sum_terms(TWO, TWO) not in lvl4

    def test_shifted_full_is_minimal(self):
        fam = ShiftedFull(TWO)
        gen_levels = minimal_generating_up_to(fam, 7)
        expected = generator_counting_sequence(fam, 7)
        for k in range(1, 8):
            assert len(gen_levels[k]) == expected[k]

    def test_explicit_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            minimal_generating_up_to(ExplicitSeq(BigSeq([1])), 4)


GEN_POOL = tuple(t for k in range(1, 5) for t in enumerate_terms(k))
gen_sets_st = st.frozensets(st.sampled_from(GEN_POOL), min_size=1, max_size=3)


class TestRandomizedInvariants:
    @settings(max_examples=40, deadline=None)
    @given(gen_sets_st)
    def test_brute_count_matches_transform(self, gens):
        from freemagma import cat_transform

        hist = generator_counting_sequence(FiniteSet(gens), 9)
        assert brute_count(gens, 9) == cat_transform(hist)

    @settings(max_examples=40, deadline=None)
    @given(gen_sets_st, st.data())
    def test_minimal_set_stable_under_redundant_sums(self, gens, data):
        pairs = data.draw(
            st.lists(st.tuples(st.sampled_from(sorted(gens)), st.sampled_from(sorted(gens))),
                     max_size=3)
        )
        padded = gens | {sum_terms(x, y) for x, y in pairs}
        assert minimal_generators(padded) == minimal_generators(gens)

    @settings(max_examples=30, deadline=None)
    @given(gen_sets_st)
    def test_contains_agrees_with_brute_levels(self, gens):
        levels = closure_up_to(gens, 6)
        for k in range(1, 7):
            for t in enumerate_terms(k):
                assert contains(gens, t) == (t in levels[k])


class TestFamilySyntax:
    def test_parse_finite(self):
        fam = parse_family("finite:[(1+1),(1+(1+1))]")
        assert fam == FiniteSet({TWO, THREE_PLUS})

    def test_parse_shifted_bare_leaf(self):
        assert parse_family("shifted:1") == ShiftedFull(ONE)
        assert parse_family("shifted:(1+1)") == ShiftedFull(TWO)

    def test_parse_longitudinal_and_seq(self):
        assert parse_family("longitudinal:[2,3]") == Longitudinal({2, 3})
        assert parse_family("seq:[0,1,1]") == ExplicitSeq(BigSeq([0, 1, 1]))

    def test_parse_full_alias(self):
        assert parse_family("full") == FiniteSet({ONE})

    def test_seqfile(self, tmp_path):
        path = tmp_path / "gen.csv"
        write_sequence_csv(path, BigSeq([0, 1, 1]))
        fam = parse_family(f"seqfile:{path}")
        assert fam == ExplicitSeq(BigSeq([0, 1, 1]))

    def test_roundtrip(self):
        for fam in (
            FiniteSet({TWO, THREE_PLUS}),
            ShiftedFull(TWO),
            Longitudinal({2, 3}),
            ExplicitSeq(BigSeq([0, 2, 5])),
        ):
            assert parse_family(format_family(fam)) == fam

    @pytest.mark.parametrize(
        "bad",
        [
            "mystery:[1]",
            "finite:(1+1)",
            "finite:[((1+1)]",
            "longitudinal:[]",
            "longitudinal:[0]",
            "shifted:",
            "justwords",
            "seqfile:/nonexistent/x.csv",
        ],
    )
    def test_parse_errors(self, bad):
        with pytest.raises(ValueError):
            parse_family(bad)


class TestFamilyValidation:
    def test_finite_accepts_iterables(self):
        assert FiniteSet([TWO, TWO]).terms == frozenset({TWO})

    def test_finite_rejects_non_terms(self):
        with pytest.raises(TypeError):
            FiniteSet([1, 2])

    def test_longitudinal_validation(self):
        with pytest.raises(ValueError):
            Longitudinal(set())
        with pytest.raises(ValueError):
            Longitudinal({0})

    def test_explicit_rejects_negative(self):
        with pytest.raises(ValueError):
            ExplicitSeq(BigSeq([0, -1]))

"""Term algebra: constructors, encodings, enumeration, algebraic laws."""

import math
from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from freemagma import (
    CapacityError,
    TermParseError,
    decode,
    encode,
    enumerate_terms,
    format_term,
    iter_terms_up_to,
    leaf,
    left_comb,
    length,
    parse_term,
    product,
    right_comb,
    sum_terms,
)

ONE = leaf()
TWO = sum_terms(ONE, ONE)
THREE_PLUS = sum_terms(ONE, TWO)
THREE_MINUS = sum_terms(TWO, ONE)


terms_st = st.recursive(
    st.just(ONE),
    lambda children: st.builds(sum_terms, children, children),
    max_leaves=24,
)


class TestConstructors:
    def test_leaf_length(self):
        assert length(ONE) == 1
        assert ONE.is_leaf

    def test_sum_lengths_add(self):
        assert length(TWO) == 2
        assert length(sum_terms(TWO, THREE_PLUS)) == 5

    def test_sum_is_ordered(self):
        assert THREE_PLUS != THREE_MINUS

    def test_operator_sugar(self):
        assert ONE + ONE == TWO
        assert ONE + (ONE + ONE) == THREE_PLUS

    def test_combs(self):
        assert left_comb(1) == ONE == right_comb(1)
        assert left_comb(2) == TWO == right_comb(2)
        assert right_comb(3) == THREE_PLUS
        assert left_comb(3) == THREE_MINUS
        assert left_comb(4) == sum_terms(sum_terms(TWO, ONE), ONE)
        assert length(left_comb(9)) == 9 == length(right_comb(9))

    @pytest.mark.parametrize("n", [0, -3])
    def test_comb_rejects_nonpositive(self, n):
        with pytest.raises(ValueError):
            left_comb(n)
        with pytest.raises(ValueError):
            right_comb(n)


class TestProduct:
    def test_substitution_example(self):
        # 2 * 3_+ substitutes 2 into each leaf of 1+(1+1).
        assert product(TWO, THREE_PLUS) == sum_terms(TWO, sum_terms(TWO, TWO))

    def test_unit_laws(self):
        for t in (ONE, TWO, THREE_MINUS, product(TWO, TWO)):
            assert product(t, ONE) == t
            assert product(ONE, t) == t

    def test_length_multiplicative(self):
        assert length(product(TWO, THREE_PLUS)) == 6

    def test_power_associates(self):
        two_cubed = product(TWO, product(TWO, TWO))
        assert length(two_cubed) == 8
        assert two_cubed == product(product(TWO, TWO), TWO)

    def test_right_distributivity_fails(self):
        # The product only distributes over sums on the right operand;
        # search small triples for a witness that the mirror law is false.
        pool = list(iter_terms_up_to(3))
        witnesses = [
            (x, y, z)
            for x, y, z in iproduct(pool, repeat=3)
            if product(sum_terms(y, z), x)
            != sum_terms(product(y, x), product(z, x))
        ]
        assert witnesses, "expected a right-distributivity counterexample"

    @given(terms_st, terms_st, terms_st)
    def test_associativity(self, x, y, z):
        assert product(product(x, y), z) == product(x, product(y, z))

    @given(terms_st, terms_st, terms_st)
    def test_left_distributivity(self, x, y, z):
        assert product(x, sum_terms(y, z)) == sum_terms(product(x, y), product(x, z))

    @given(terms_st, terms_st)
    def test_length_multiplicativity(self, x, y):
        assert length(product(x, y)) == length(x) * length(y)


def count_leaves(t):
    # Independent oracle for the length field.
    stack, total = [t], 0
    while stack:
        node = stack.pop()
        if node.is_leaf:
            total += 1
        else:
            stack.extend((node.left, node.right))
    return total


class TestLengthIsLeafCount:
    @given(terms_st)
    def test_matches_direct_count(self, t):
        assert length(t) == count_leaves(t)

    def test_on_products(self):
        t = product(left_comb(5), right_comb(7))
        assert length(t) == count_leaves(t) == 35


class TestEncoding:
    def test_examples(self):
        assert encode(ONE) == "0"
        assert encode(TWO) == "100"
        assert encode(THREE_PLUS) == "10100"
        assert encode(THREE_MINUS) == "11000"

    def test_decode_examples(self):
        assert decode("0") == ONE
        assert decode("100") == TWO

    @pytest.mark.parametrize("bad", ["", "10", "1", "1000", "01", "2", "10x"])
    def test_decode_rejects_malformed(self, bad):
        with pytest.raises(TermParseError):
            decode(bad)

    def test_decode_error_carries_position(self):
        err = pytest.raises(TermParseError, decode, "10").value
        assert err.position == 2
        assert err.text == "10"

    @given(terms_st)
    def test_roundtrip(self, t):
        assert decode(encode(t)) == t

    def test_injective_on_small_terms(self):
        seen = {}
        for t in iter_terms_up_to(7):
            assert encode(t) not in seen
            seen[encode(t)] = t


class TestTextFormat:
    def test_format_examples(self):
        assert format_term(ONE) == "1"
        assert format_term(TWO) == "(1+1)"
        assert format_term(THREE_PLUS) == "(1+(1+1))"

    def test_parse_examples(self):
        assert parse_term("1") == ONE
        assert parse_term("(1+1)") == TWO
        assert parse_term(" ( 1 + ( 1 + 1 ) ) ") == THREE_PLUS

    @pytest.mark.parametrize(
        "bad",
        ["", "(", "(1+1", "(1+)", "1+1", "(1 1)", "(1+1)x", "((1+1)+1", "2"],
    )
    def test_parse_rejects_malformed(self, bad):
        with pytest.raises(TermParseError):
            parse_term(bad)

    @given(terms_st)
    def test_roundtrip(self, t):
        assert parse_term(format_term(t)) == t


class TestEnumeration:
    def test_counts_match_binomial_catalan(self):
        # Independent size oracle: C_{n-1} = binom(2n-2, n-1) / n.
        # Level 15 alone has ~2.7M terms; this is the suite's memory peak.
        for n in range(1, 16):
            expected = math.comb(2 * n - 2, n - 1) // n
            assert len(enumerate_terms(n)) == expected

    def test_level_three(self):
        assert set(enumerate_terms(3)) == {THREE_MINUS, THREE_PLUS}

    def test_level_four_contains_two_squared(self):
        level = enumerate_terms(4)
        assert len(level) == 5
        assert sum_terms(TWO, TWO) in level
        assert product(TWO, TWO) in level

    def test_level_five_size(self):
        assert len(enumerate_terms(5)) == 14

    def test_sorted_by_encoding(self):
        for n in (4, 6, 8):
            codes = [encode(t) for t in enumerate_terms(n)]
            assert codes == sorted(codes)

    def test_no_duplicates(self):
        level = enumerate_terms(9)
        assert len(set(level)) == len(level)

    def test_cap_enforced(self):
        with pytest.raises(CapacityError):
            enumerate_terms(17)
        with pytest.raises(ValueError):
            enumerate_terms(0)

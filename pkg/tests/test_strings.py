import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virtstrings import (
    ParseError,
    cable,
    covering,
    family_perm,
    inverse,
    open_product,
    opposite,
    parse,
    parse_diagram,
    parse_open,
    product,
    random_diagram,
    random_open_string,
    random_string,
    serialize,
    trivial,
)
from virtstrings.based_matrix import from_string
from virtstrings.strings import CanonicalCode, OpenString, VirtualString, perm_from_cycles
from virtstrings.upoly import u

from oracles import brute_linking

seeds = st.integers(min_value=0, max_value=10**6)
ranks = st.integers(min_value=0, max_value=7)


@settings(max_examples=200, deadline=None)
@given(ranks, seeds)
def test_round_trip_closed(m, seed):
    s = random_string(m, seed)
    text = serialize(s)
    back = parse(text)
    assert serialize(back) == text
    assert back.partner == s.partner and back.word() == s.word()


@settings(max_examples=100, deadline=None)
@given(ranks, seeds)
def test_round_trip_open_and_signed(m, seed):
    mu = random_open_string(m, seed)
    text = serialize(mu)
    assert serialize(parse_open(text)) == text
    assert parse_open(text).word() == mu.word()
    d = random_diagram(m, seed)
    text = serialize(d)
    assert serialize(parse_diagram(text)) == text
    assert parse_diagram(text).word() == d.word()


@settings(max_examples=200, deadline=None)
@given(ranks, seeds, st.integers(min_value=0, max_value=30))
def test_canonical_invariant_under_rotation_and_relabel(m, seed, shift):
    s = random_string(m, seed)
    n = max(s.size, 1)
    rotated = VirtualString(s.code[shift % n :] + s.code[: shift % n])
    perm = list(range(m))
    random.Random(seed).shuffle(perm)
    relabeled = VirtualString(tuple((perm[a], r) for a, r in s.code))
    assert rotated.canonical() == s.canonical()
    assert relabeled.canonical() == s.canonical()
    assert rotated.is_homeomorphic(relabeled)


@settings(max_examples=200, deadline=None)
@given(ranks, seeds)
def test_canonical_open_round_trip(m, seed):
    mu = random_open_string(m, seed)
    back = OpenString.from_word(mu.word())
    assert back.is_homeomorphic(mu)
    assert back.word() == mu.word()
    assert CanonicalCode(mu.canonical().key, False).string().word() == mu.word()


def test_open_canonical_keeps_direction():
    assert parse_open("1 1'").canonical() != parse_open("1' 1").canonical()


def test_rotation_distinguishes_open_strings():
    # rotating an open word is not a homeomorphism
    assert not parse_open("1 2 1' 2'").is_homeomorphic(parse_open("2 1' 2' 1"))


@pytest.mark.parametrize(
    "text, position",
    [("1 2 1'", 1), ("1 1 1'", 1), ("1 x'", 0), ("1 1''", 1), ("1 1' 2", 2)],
)
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position == position


def test_parse_empty_is_trivial():
    assert parse("") == trivial()
    assert parse("").rank == 0


def test_diagram_signs():
    d = parse_diagram("1+ 2- 1' 2'")
    assert d.signs == (1, -1)
    assert serialize(d) == "1+ 2- 1' 2'"


@settings(max_examples=150, deadline=None)
@given(ranks, seeds)
def test_linking_matches_brute_force(m, seed):
    s = random_string(m, seed)
    for e in range(m):
        for f in range(m):
            expected = 0 if e == f else brute_linking(s, e, f)
            assert s.linking(e, f) == expected
        assert s.n_values[e] == sum(s.linking(e, f) for f in range(m))


def test_permutation_index_formula():
    r = random.Random(7)
    for _ in range(100):
        m = r.randint(1, 8)
        sigma = list(range(1, m + 1))
        r.shuffle(sigma)
        s = family_perm(sigma)
        assert list(s.n_values) == [sigma[i] - (i + 1) for i in range(m)]


def test_perm_from_cycles():
    assert perm_from_cycles("(134)(2)") == [3, 2, 4, 1]
    assert perm_from_cycles("(123)(4)(576)", 7) == [2, 3, 1, 4, 7, 5, 6]


@settings(max_examples=100, deadline=None)
@given(ranks, seeds)
def test_opposite_and_inverse_matrices(m, seed):
    s = random_string(m, seed)
    t = from_string(s)
    assert from_string(opposite(s)).is_isomorphic(t.dash())
    assert from_string(inverse(s)).is_isomorphic(t.dash().neg())
    assert opposite(opposite(s)).is_homeomorphic(s)
    assert inverse(inverse(s)).is_homeomorphic(s)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 5), st.integers(1, 3), seeds)
def test_cable_scales_u(m, r, seed):
    s = random_string(m, seed)
    c = cable(s, r)
    assert c.rank == r * m
    assert u(c).coeffs == {k * r: v * r for k, v in u(s).coeffs.items()}


def test_covering_keeps_divisible_arrows():
    r = random.Random(11)
    for _ in range(50):
        s = random_string(r.randint(0, 7), r)
        for k in (1, 2, 3):
            cov = covering(s, k)
            assert cov.rank == sum(1 for v in s.n_values if v % k == 0)
        assert covering(s, 1).code == s.code


def test_product_adds_rank_and_u():
    r = random.Random(5)
    for _ in range(50):
        a, b = random_string(r.randint(0, 4), r), random_string(r.randint(0, 4), r)
        p = product(a, b)
        assert p.rank == a.rank + b.rank
        assert u(p) == u(a) + u(b)


def test_open_product_rank():
    r = random.Random(6)
    for _ in range(30):
        a, b = random_open_string(r.randint(0, 4), r), random_open_string(r.randint(0, 4), r)
        assert open_product(a, b).rank == a.rank + b.rank

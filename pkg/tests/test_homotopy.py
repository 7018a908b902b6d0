import json
import random

import pytest

from virtstrings import (
    covering,
    family_perm,
    family_pq,
    inverse,
    product,
    random_string,
    trivial,
)
from virtstrings.homotopy import (
    ZERO_KEY,
    Caps,
    bfs_equal,
    classify_rank,
    distinguishing_invariant,
    enumerate_strings,
    is_ribbon,
    normalize,
    normalize_with_path,
    rank_lower_bound,
    replay,
    string_of_key,
)
from virtstrings.moves import apply_move, random_move
from virtstrings.strings import VirtualString, open_from_closed, perm_from_cycles
from virtstrings.upoly import u

from conftest import string_corpus


def test_1342_is_trivial():
    s = family_perm(perm_from_cycles("(1342)"))
    result = bfs_equal(s, trivial())
    assert result.verdict == "Equal"
    assert replay(s, result.path_first).canonical().key == result.meeting
    assert replay(trivial(), result.path_second).canonical().key == result.meeting


def test_normalize_path_replays():
    for s in string_corpus(60, 5, seed=51):
        key, path, word = normalize_with_path(s)
        end = replay(s, path)
        assert end.word() == word
        assert normalize(end) == key


def test_rank3_classes():
    c = classify_rank(3)
    assert set(c.classes) == {ZERO_KEY, normalize(family_pq(1, 2)), normalize(family_pq(2, 1))}
    assert c.unresolved == []
    assert sum(len(v) for v in c.classes.values()) == len(enumerate_strings(3))
    json.dumps(c.to_json())


@pytest.mark.parametrize("m, count", [(0, 1), (1, 1)])
def test_enumeration_counts(m, count):
    # a single arrow is the same as its reverse after rotating the circle
    assert len(enumerate_strings(m)) == count


def test_small_ranks_trivial():
    for m in (1, 2):
        for s in enumerate_strings(m):
            assert normalize(s) == ZERO_KEY


def test_golden_distinct_from_inverse():
    s = family_perm(perm_from_cycles("(134)(2)"))
    assert bfs_equal(s, inverse(s)).verdict == "Distinct"
    assert inverse(s).is_homeomorphic(family_perm(perm_from_cycles("(124)(3)")))


def test_eight_factor_covering_class():
    pairs = [(1, 3), (1, 4), (2, 1), (2, 4), (3, 5), (4, 3), (5, 1), (5, 2)]
    s = product(*(family_pq(p, q) for p, q in pairs))
    assert bfs_equal(covering(s, 2), family_pq(2, 4)).verdict == "Equal"


def test_random_walk_stays_in_class():
    rng = random.Random(52)
    for s in string_corpus(30, 4, seed=53):
        t = s
        for _ in range(3):
            t = apply_move(t, random_move(t, rng, rank_cap=t.rank + 2))
        verdict = bfs_equal(s, t).verdict
        assert verdict in ("Equal", "Unknown")


def test_distinct_has_witness():
    result = bfs_equal(family_pq(1, 2), family_pq(2, 1))
    assert result.verdict == "Distinct"
    assert distinguishing_invariant(family_pq(1, 2), family_pq(2, 1)) == result.witness


def test_rank_lower_bound():
    for s in string_corpus(50, 6, seed=54):
        assert rank_lower_bound(s) <= s.rank
    assert rank_lower_bound(family_pq(2, 3)) >= 4


def test_string_of_key_round_trip():
    for s in string_corpus(40, 5, seed=55):
        key = normalize(s)
        assert normalize(string_of_key(key)) == key


def test_types_must_match():
    with pytest.raises(TypeError):
        bfs_equal(trivial(), open_from_closed(trivial()))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_pp_ribbon(p):
    assert is_ribbon(family_pq(p, p))


def test_ribbon_pair():
    s = family_perm(perm_from_cycles("(12)(34)"))
    assert is_ribbon(s)
    for e in range(s.rank):
        code = tuple((a, 1 - r) if a == e else (a, r) for a, r in s.code)
        assert not is_ribbon(VirtualString(code))


def test_ribbon_implies_zero_u():
    for s in string_corpus(200, 6, seed=56):
        if is_ribbon(s):
            assert u(s).is_zero()


def test_rank_one_random_string():
    assert random_string(1, 0).rank == 1

import json
import random

import pytest

from virtstrings import family_perm, family_pq, open_product, random_open_string
from virtstrings.based_matrix import (
    BasedMatrix,
    GradedBasedMatrix,
    NotSkewError,
    from_open_string,
    from_string,
    graded_sum,
)
from virtstrings.strings import perm_from_cycles
from virtstrings.upoly import u, u_open

from conftest import string_corpus
from oracles import face_genus, is_iso_brute, perm_matrix, pq_matrix

GOLDEN_1234 = [
    [0, -1, 1, -1, 1],
    [1, 0, 1, -1, 1],
    [-1, -1, 0, -1, 1],
    [1, 1, 1, 0, 1],
    [-1, -1, -1, -1, 0],
]
GOLDEN_134_2 = [
    [0, -2, 0, -1, 3],
    [2, 0, 1, 0, 3],
    [0, -1, 0, 0, 2],
    [1, 0, 0, 0, 1],
    [-3, -3, -2, -1, 0],
]
GOLDEN_124_3 = [
    [0, -1, -2, 0, 3],
    [1, 0, -1, 1, 3],
    [2, 1, 0, 1, 2],
    [0, -1, -1, 0, 1],
    [-3, -3, -2, -1, 0],
]


def rows(t):
    return [list(r) for r in t.b]


def random_skew(rng, n, bound=3):
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            b[i][j], b[j][i] = v, -v
    return BasedMatrix.from_rows(b)


@pytest.mark.parametrize("p", range(1, 5))
@pytest.mark.parametrize("q", range(1, 5))
def test_pq_entry_formula(p, q):
    assert rows(from_string(family_pq(p, q))) == pq_matrix(p, q)


@pytest.mark.parametrize(
    "cycles, golden",
    [("(12)(34)", GOLDEN_1234), ("(134)(2)", GOLDEN_134_2), ("(124)(3)", GOLDEN_124_3)],
)
def test_goldens(cycles, golden):
    assert rows(from_string(family_perm(perm_from_cycles(cycles, 4)))) == golden


def test_golden_pair_not_isomorphic():
    a = from_string(family_perm(perm_from_cycles("(134)(2)")))
    b = from_string(family_perm(perm_from_cycles("(124)(3)")))
    assert not a.is_isomorphic(b)
    assert not is_iso_brute(GOLDEN_134_2, GOLDEN_124_3)


def test_perm_entry_formula():
    rng = random.Random(21)
    for _ in range(200):
        m = rng.randint(1, 8)
        sigma = list(range(1, m + 1))
        rng.shuffle(sigma)
        assert rows(from_string(family_perm(sigma))) == perm_matrix(sigma)


def test_genus_matches_face_count():
    for s in string_corpus(300, 8, seed=22):
        assert from_string(s).genus() == face_genus(s)


def test_genus_pq():
    assert from_string(family_pq(1, 1)).genus() == 1
    assert from_string(family_pq(1, 1)).rank() == 2


def test_u_from_matrix():
    for s in string_corpus(100, 8, seed=23):
        assert from_string(s).u_polynomial() == u(s)


def test_not_skew_rejected():
    with pytest.raises(NotSkewError):
        BasedMatrix.from_rows([[0, 1], [1, 0]])


def test_pq_11_reduces_to_trivial():
    assert from_string(family_pq(1, 1)).primitive_reduce().n == 1


@pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 5) for q in range(1, 5) if (p, q) != (1, 1)])
def test_pq_primitive(p, q):
    assert from_string(family_pq(p, q)).is_primitive()


def test_reduction_order_independent():
    rng = random.Random(24)
    for s in string_corpus(40, 7, seed=25):
        t = from_string(s)
        first = t.primitive_reduce(random.Random(0))
        for _ in range(5):
            other = t.primitive_reduce(random.Random(rng.random()))
            assert other.n == first.n
            assert other.is_isomorphic(first)
            assert other.is_primitive()


def test_isomorphism_agrees_with_brute_force():
    rng = random.Random(26)
    for _ in range(100):
        n = rng.randint(1, 6)
        t = random_skew(rng, n, 1)
        order = list(range(1, n))
        rng.shuffle(order)
        p = t.permuted([0] + order)
        other = random_skew(rng, n, 1)
        assert t.is_isomorphic(p)
        assert t.is_isomorphic(other) == is_iso_brute(rows(t), rows(other))


def test_extensions_reduce_back():
    rng = random.Random(27)
    for s in string_corpus(30, 6, seed=28):
        t = from_string(s).primitive_reduce()
        for ext in (t.extend_m1(), t.extend_m2(), t.extend_m3(rng)):
            assert ext.primitive_reduce().is_isomorphic(t)


def test_json_round_trip():
    for s in string_corpus(30, 6, seed=29):
        t = from_string(s)
        data = json.loads(json.dumps(t.to_json()))
        assert set(data) == {"s", "b"}
        assert BasedMatrix.from_json(data).b == t.b


def test_graded_json_round_trip():
    rng = random.Random(30)
    mu = random_open_string(4, rng)
    g = from_open_string(mu)
    data = g.to_json()
    assert data["grade"][0] == "s"
    back = GradedBasedMatrix.from_json(json.dumps(data))
    assert back.grades == g.grades and back.matrix.b == g.matrix.b


def test_graded_sum_matches_open_product():
    rng = random.Random(31)
    for _ in range(50):
        a = random_open_string(rng.randint(0, 4), rng)
        b = random_open_string(rng.randint(0, 4), rng)
        lhs = graded_sum(from_open_string(a), from_open_string(b))
        rhs = from_open_string(open_product(a, b))
        assert lhs.is_isomorphic(rhs)


def test_graded_u_pair():
    rng = random.Random(32)
    for _ in range(50):
        mu = random_open_string(rng.randint(0, 5), rng)
        assert from_open_string(mu).u_pair() == u_open(mu)

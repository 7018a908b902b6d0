import random

import pytest
import sympy

from virtstrings import family_pq
from virtstrings.based_matrix import BasedMatrix, GradedBasedMatrix, from_string, graded_sum
from virtstrings.filling import (
    FillingSizeError,
    cobordant_matrices,
    filling_matrix,
    hyperbolic_filling,
    hyperbolic_tuple_filling,
    is_hyperbolic,
    sigma,
    sigma_exhaustive,
    simple_fillings,
    tuple_sigma_upper,
    verify_tuple_filling,
)
from virtstrings.linalg import rank_int

from conftest import string_corpus


def random_skew(rng, n, bound=3):
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            b[i][j], b[j][i] = v, -v
    return BasedMatrix.from_rows(b)


def test_rank_matches_sympy():
    rng = random.Random(61)
    for _ in range(100):
        n = rng.randint(1, 8)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(rng.randint(1, 8))]
        assert rank_int(rows) == sympy.Matrix(rows).rank()


def test_simple_filling_count():
    # involutions of a k-set: 1, 1, 2, 4, 10, 26
    assert [sum(1 for _ in simple_fillings(list(range(k)))) for k in range(6)] == [1, 1, 2, 4, 10, 26]


def test_sigma_pq11_certificate():
    t = from_string(family_pq(1, 1))
    result = sigma(t, reduce=False)
    assert result.sigma == 0
    gram = filling_matrix(t, result.blocks)
    assert all(x == 0 for row in gram for x in row)
    assert sorted(x for block in result.certificate() for x in block) == [0, 1]


def test_sigma_pq21():
    t = from_string(family_pq(2, 1))
    assert sigma_exhaustive(t) == 1
    assert sigma(t).sigma == 1


def test_sigma_matches_exhaustive_on_strings():
    for s in string_corpus(80, 6, seed=62):
        t = from_string(s)
        assert sigma(t).sigma == sigma_exhaustive(t)


def test_sigma_matches_exhaustive_on_matrices():
    rng = random.Random(63)
    for _ in range(80):
        t = random_skew(rng, rng.randint(1, 7))
        assert sigma(t, reduce=False).sigma == sigma_exhaustive(t)
        assert sigma(t).sigma == sigma_exhaustive(t)


def test_sigma_bounded_by_genus():
    for s in string_corpus(50, 6, seed=64):
        t = from_string(s)
        assert sigma(t).sigma <= t.genus()


@pytest.mark.parametrize("p", [1, 2, 3])
def test_pp_hyperbolic(p):
    assert is_hyperbolic(from_string(family_pq(p, p)))


def test_hyperbolic_filling_is_zero():
    for s in string_corpus(60, 6, seed=65):
        t = from_string(s)
        f = hyperbolic_filling(t)
        if f is not None:
            assert all(x == 0 for row in filling_matrix(t, f) for x in row)
        assert (f is not None) == (sigma(t, reduce=False).sigma == 0)


def test_size_cap():
    with pytest.raises(FillingSizeError):
        sigma(BasedMatrix.from_rows([[0] * 20 for _ in range(20)]), reduce=False, max_size=16)


def test_graded_double_hyperbolic():
    rng = random.Random(66)
    for _ in range(50):
        n = rng.randint(1, 7)
        t = random_skew(rng, n)
        g = GradedBasedMatrix(t, (0,) + tuple(rng.choice((1, -1)) for _ in range(n - 1)))
        assert is_hyperbolic(graded_sum(g, g.neg()).matrix)


def test_extensions_cobordant():
    rng = random.Random(67)
    for _ in range(50):
        t = random_skew(rng, rng.randint(1, 5))
        for ext in (t.extend_m1(), t.extend_m2(), t.extend_m3(rng)):
            result = cobordant_matrices(t, ext)
            assert result.verdict == "Cobordant"
            assert verify_tuple_filling([t, ext.neg()], result.certificate)


def test_tuple_filling_rejects_bad_vectors():
    t = from_string(family_pq(2, 1))
    vecs = hyperbolic_tuple_filling([t, t.neg()])
    assert vecs is not None and verify_tuple_filling([t, t.neg()], vecs)
    assert not verify_tuple_filling([t, t.neg()], vecs[:-1])


def test_tuple_sigma_upper_single():
    for s in string_corpus(20, 5, seed=68):
        t = from_string(s).primitive_reduce()
        value, _ = tuple_sigma_upper([t])
        assert value == sigma(t, reduce=False).sigma

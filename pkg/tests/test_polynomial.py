from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from virtstrings.polynomial import BiPoly, IntPoly

T = sympy.Symbol("t")
coeff_dicts = st.dictionaries(st.integers(0, 6), st.integers(-9, 9), max_size=5)


def to_sympy(p):
    return sum((c * T**e for e, c in p.terms()), sympy.Integer(0))


@settings(max_examples=200, deadline=None)
@given(coeff_dicts, coeff_dicts)
def test_ring_ops_match_sympy(a, b):
    p, q = IntPoly(a), IntPoly(b)
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@settings(max_examples=200, deadline=None)
@given(coeff_dicts)
def test_parse_str_round_trip(a):
    p = IntPoly(a)
    assert IntPoly.parse(str(p)) == p
    assert IntPoly.from_json(p.to_json()) == p


@settings(max_examples=100, deadline=None)
@given(coeff_dicts, st.integers(1, 4))
def test_derivative_and_substitution(a, r):
    p = IntPoly(a)
    assert p.derivative_at_one() == sympy.diff(to_sympy(p), T).subs(T, 1)
    assert sympy.expand(to_sympy(p.substitute_power(r)) - to_sympy(p).subs(T, T**r)) == 0


@pytest.mark.parametrize(
    "text, expected",
    [("2t^4-4t^2", 2 * T**4 - 4 * T**2), ("-t^2 + 2t", -(T**2) + 2 * T), ("t", T), ("0", 0), ("3", 3)],
)
def test_parse_examples(text, expected):
    assert sympy.expand(to_sympy(IntPoly.parse(text)) - expected) == 0


@pytest.mark.parametrize("text", ["2x", "t^", "t^-1", "++t"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        IntPoly.parse(text)


def test_bipoly_json_and_zero():
    p = BiPoly({(1, 2): Fraction(-1, 2), (0, 0): 3})
    assert BiPoly.from_json(p.to_json()) == p
    assert (p - p).is_zero()
    assert p.z_coefficient(0) == IntPoly({0: 3})

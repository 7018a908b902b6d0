import json

import pytest

from virtstrings import family_perm, family_pq
from virtstrings.based_matrix import from_string
from virtstrings.homotopy import is_ribbon
from virtstrings.slicing import alpha_h, lagrangian_scan, lagrangians, slice_obstruction
from virtstrings.strings import perm_from_cycles
from virtstrings.upoly import u

from conftest import string_corpus
from oracles import rank_mod_p


def test_u_witness():
    report = slice_obstruction(family_pq(2, 1))
    assert report.verdict == "NotSlice"
    assert report.witnesses[0] == {"kind": "u", "detail": str(u(family_pq(2, 1)))}


@pytest.mark.parametrize("p", [1, 2, 3])
def test_pp_unobstructed(p):
    assert slice_obstruction(family_pq(p, p)).verdict == "NoObstructionFound"
    assert lagrangian_scan(family_pq(p, p)).verdict == "NoObstructionFound"


@pytest.mark.parametrize("pq", [(1, 2), (2, 3)])
def test_lagrangian_obstructs(pq):
    report = lagrangian_scan(family_pq(*pq))
    assert report.verdict == "NotSlice"
    assert report.caps["admissible"] == 0


def test_ribbon_strings_never_obstructed():
    # ribbon strings are slice, so a sound obstruction must stay silent
    found = 0
    for s in string_corpus(400, 6, seed=71):
        if s.rank and is_ribbon(s):
            found += 1
            assert slice_obstruction(s).verdict == "NoObstructionFound"
            assert lagrangian_scan(s).verdict == "NoObstructionFound"
    assert found >= 5


def test_ribbon_product():
    s = family_perm(perm_from_cycles("(12)(34)"))
    assert lagrangian_scan(s, p=3).verdict == "NoObstructionFound"


@pytest.mark.parametrize("p", [0, 1, 4, 9])
def test_non_prime_rejected(p):
    with pytest.raises(ValueError):
        lagrangian_scan(family_pq(1, 1), p=p)


def test_alpha_h():
    s = family_pq(2, 2)
    zero = [0] * (s.rank + 1)
    assert alpha_h(s, zero, 2).rank == s.rank
    # h = s keeps arrows with even index
    basepoint = [1] + [0] * s.rank
    assert alpha_h(s, basepoint, 2).rank == sum(1 for v in s.n_values if v % 2 == 0)
    with pytest.raises(ValueError):
        alpha_h(s, [1], 2)


@pytest.mark.parametrize("p", [2, 3])
def test_lagrangian_properties(p):
    for s in [family_pq(2, 2), family_pq(1, 3), family_perm(perm_from_cycles("(12)(34)"))]:
        t = from_string(s)
        form = [[x % p for x in row] for row in t.b]
        e_s = [1] + [0] * s.rank
        dim = t.n - rank_mod_p(t.b, p) // 2
        found = lagrangians(form, p, e_s)
        assert found
        for basis in found:
            assert rank_mod_p(basis, p) == len(basis) == dim
            assert rank_mod_p(list(basis) + [e_s], p) == dim
            for v in basis:
                for w in basis:
                    assert sum(v[i] * form[i][j] * w[j] for i in range(t.n) for j in range(t.n)) % p == 0


def test_report_json():
    report = slice_obstruction(family_pq(3, 1))
    data = json.loads(json.dumps(report.to_json()))
    assert data["verdict"] == "NotSlice"
    assert data["caps"]["depth"] == 2

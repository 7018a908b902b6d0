import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from virtstrings import family_pq, parse, serialize
from virtstrings.based_matrix import BasedMatrix, from_string
from virtstrings.cli import main
from virtstrings.formal import FormalSum
from virtstrings.homotopy import normalize
from virtstrings.polynomial import BiPoly, IntPoly
from virtstrings.upoly import u


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_invariants_json(capsys):
    data = run_json(capsys, "invariants", "alpha:2,1")
    inv = data["invariants"]
    assert data["schema"] == 1
    assert IntPoly.parse(inv["u"]) == u(family_pq(2, 1))
    assert inv["genus"] == 2 and inv["sigma"]["value"] == 1 and inv["hyperbolic"] is False
    assert inv["slice"]["verdict"] == "NotSlice"
    assert inv["lagrangian"]["verdict"] == "NotSlice"
    matrix = BasedMatrix.from_json(inv["matrix"])
    assert matrix.b == from_string(family_pq(2, 1)).b


def test_invariants_open(capsys):
    data = run_json(capsys, "invariants", "--open", "1 2 1' 2'")
    inv = data["invariants"]
    assert data["kind"] == "open"
    assert IntPoly.parse(inv["u_plus"]) + IntPoly.parse(inv["u_minus"]) == IntPoly.parse(inv["closure"]["u"])


def test_invariants_from_file(capsys, tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("1 2 3 2' 1' 3'\n")
    assert run_json(capsys, "invariants", str(path))["input"] == "1 2 3 2' 1' 3'"


def test_homotopy_equal(capsys):
    data = run_json(capsys, "homotopy-equal", "perm:(1342)", "")
    assert data["verdict"] == "Equal"
    data = run_json(capsys, "homotopy-equal", "alpha:1,2", "alpha:2,1")
    assert data["verdict"] == "Distinct"


def test_classify(capsys):
    data = run_json(capsys, "classify", "--rank", "3")
    assert len(data["classes"]) == 3
    assert data["unresolved_pairs"] == []


def test_cobracket(capsys):
    data = run_json(capsys, "cobracket", "perm:(123)(4)(576)")
    a12, a21 = normalize(family_pq(1, 2)), normalize(family_pq(2, 1))
    expected = FormalSum.monomial([a12, a21]) - FormalSum.monomial([a21, a12])
    assert FormalSum.from_json(data["value"]).terms == expected.terms


def test_cobracket_open(capsys):
    data = run_json(capsys, "cobracket", "--open", "1 2 1' 2'")
    assert data["value"]["terms"] == []
    assert data["value"]["tensor"] is True


def test_knot_nabla(capsys, tmp_path):
    path = tmp_path / "k.txt"
    path.write_text("1+ 2+ 3+ 2' 1' 3'\n")
    data = run_json(capsys, "knot", "nabla", str(path))
    terms = FormalSum.from_json(data["nabla"])
    assert terms == FormalSum.monomial([normalize(family_pq(2, 1))], tensor=False, caps=terms.caps)
    data = run_json(capsys, "knot", "nabla", str(path), "--ut")
    assert BiPoly.from_json(data["nabla_ut"]) == BiPoly({(0, 1): 2, (0, 2): -1})


def test_svg(capsys, tmp_path):
    out = tmp_path / "a.svg"
    code, _, _ = run(capsys, "svg", "1 2 3 2' 1' 3'", "-o", str(out))
    assert code == 0
    root = ET.parse(out).getroot()
    lines = [el for el in root.iter() if el.tag.endswith("line")]
    assert len(lines) == 3


def test_realize_u(capsys):
    data = run_json(capsys, "realize-u", "2t^4-4t^2")
    assert u(parse(data["string"])) == IntPoly({4: 2, 2: -4})


def test_realize_u_rejects(capsys):
    code, _, err = run(capsys, "realize-u", "t^2")
    assert code == 1
    assert "must vanish" in err


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "invariants", "1 2")
    assert code == 2
    assert "token 0" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "virtstrings", "invariants", "alpha:1,1", "--json"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["invariants"]["genus"] == 1


def test_serialize_in_output(capsys):
    data = run_json(capsys, "invariants", "alpha:1,2")
    assert data["input"] == serialize(family_pq(1, 2))


@pytest.mark.parametrize("arg", ["alpha:0,1", "alpha:x", "perm:(12", "perm:(11)"])
def test_bad_shorthand(capsys, arg):
    code, _, _ = run(capsys, "invariants", arg)
    assert code == 2

import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA
from markedposets.cli import parse_marked_poset, run, serialize_marked_poset
from markedposets.errors import ExtremalNotMarked, ParseError
from markedposets.generate import random_marked_poset
from markedposets.lietheory import Weight, gt_poset, o_poset

FOUR_MARKS = str(DATA / "four_marks.poset")
HALF = str(DATA / "half_segment.poset")


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_four_marks(four_marks):
    assert len(four_marks.poset.elements) == 7
    assert len(four_marks.poset.covers) == 6


def test_parse_half_mark():
    m = parse_marked_poset("elem s t\nmark s 1/2\nmark t 2\ncover s t\n")
    assert m.marking["s"] == Fraction(1, 2)


@pytest.mark.parametrize(
    "text, line",
    [
        ("elem a\nmark z 0\n", 2),
        ("elem a b\ncover a b\nmark a 0\nmark b x\n", 4),
        ("elem a\nfrob a\n", 2),
        ("elem a\nelem a\n", 2),
        ("# c\nelem a b\ncover a q\n", 3),
        ("elem a\nmark a 0\nmark a 1\n", 3),
        ("elem a\nmark a 1/0\n", 2),
        ("elem a\nmark a 0.5\n", 2),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_marked_poset(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_validation_errors_pass_through():
    with pytest.raises(ExtremalNotMarked):
        parse_marked_poset("elem a b\nmark a 0\ncover a b\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_serialize_round_trip(seed):
    m = random_marked_poset(random.Random(seed), real_marks=True)
    assert parse_marked_poset(serialize_marked_poset(m)) == m


def test_serialize_lie_posets():
    for m in (gt_poset(Weight("A", (3, 1, 0, 0))), o_poset(Weight("B", (Fraction(3, 2), Fraction(1, 2))))):
        assert parse_marked_poset(serialize_marked_poset(m)) == m


def test_count(capsys):
    assert call(capsys, "count", FOUR_MARKS, "--polytope", "order")[:2] == (0, "12\n")
    assert call(capsys, "count", FOUR_MARKS, "--polytope", "chain")[:2] == (0, "12\n")
    assert call(capsys, "count", HALF, "--polytope", "chain")[1] == "2\n"


def test_json_shape(capsys):
    code, out, _ = call(capsys, "--json", "count", FOUR_MARKS, "--polytope", "order", "--grid", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload == {"schema": 1, "command": "count", "polytope": "order", "grid": 2, "count": payload["count"]}
    code, out, _ = call(capsys, "count", FOUR_MARKS, "--polytope", "order", "--json")
    assert json.loads(out)["count"] == 12


def test_ehrhart(capsys):
    code, out, _ = call(capsys, "ehrhart", FOUR_MARKS, "--polytope", "chain")
    assert code == 0
    assert "E(t) = (13/6)*t^3 + 5*t^2 + (23/6)*t + 1" in out
    assert call(capsys, "ehrhart", HALF, "--polytope", "order")[0] == 2


def test_enumerate(capsys):
    code, out, _ = call(capsys, "enumerate", HALF, "--polytope", "order", "--grid", "2")
    assert out.splitlines() == ["# p", "1/2", "1", "3/2"]
    code, out, _ = call(capsys, "--json", "enumerate", FOUR_MARKS, "--polytope", "chain")
    payload = json.loads(out)
    assert payload["variables"] == ["p", "q", "r"]
    assert len(payload["points"]) == 12


def test_transfer(capsys):
    code, out, _ = call(capsys, "transfer", FOUR_MARKS, "--direction", "forward", "--point", "1,2,3")
    assert (code, out.splitlines()) == (0, ["# p q r", "1,1,1"])
    code, out, _ = call(capsys, "transfer", FOUR_MARKS, "--direction", "back", "--point", "0,0,0")
    assert out.splitlines() == ["# p q r", "0,1,1"]
    code, out, _ = call(capsys, "transfer", FOUR_MARKS, "--direction", "forward", "--point", "0,0,0")
    assert code == 0 and "outside" in out
    assert call(capsys, "transfer", FOUR_MARKS, "--direction", "forward", "--point", "1,2")[0] == 2


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", FOUR_MARKS, "--grid", "2")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == ["PASS"] * 4
    code, out, _ = call(capsys, "verify", HALF, "--grid", "1")
    assert code == 1
    assert "FAIL count-equality: order 1, chain 2" in out
    assert "SKIP ehrhart-equality" in out


def test_lie(capsys):
    code, out, _ = call(capsys, "lie", "gt", "--n", "3", "--weight", "2,1,0")
    assert code == 0 and out.splitlines()[-1] == "count 8, weyl 8, MATCH"
    code, out, _ = call(capsys, "lie", "ffl", "--n", "3", "--weight", "1,1,0")
    assert code == 0 and "a1_2 + a1_3 + a2_3 <= 1" in out
    code, out, _ = call(capsys, "--json", "lie", "so", "--n", "2", "--weight", "1/2,1/2")
    payload = json.loads(out)
    assert (payload["count"], payload["s_count"], payload["weyl"], payload["match"]) == (4, 4, 4, True)
    code, out, _ = call(capsys, "--json", "lie", "sp", "--n", "2", "--weight", "2,1")
    assert json.loads(out)["chain_count"] == 16
    assert call(capsys, "lie", "gt", "--n", "3", "--weight", "0,1,2")[0] == 2
    assert call(capsys, "lie", "gt", "--n", "2", "--weight", "1,0,0")[0] == 2


def test_usage_errors(capsys):
    assert call(capsys, "count", FOUR_MARKS)[0] == 2
    assert call(capsys, "count", FOUR_MARKS, "--polytope", "order", "--grid", "0")[0] == 2
    assert call(capsys, "count", "/no/such/file", "--polytope", "order")[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    code, out, _ = call(capsys, "--json", "count", "/no/such/file", "--polytope", "order")
    assert code == 2 and json.loads(out)["schema"] == 1


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.poset"
    bad.write_text("elem a\nmark a one\n")
    code, _, err = call(capsys, "count", str(bad), "--polytope", "order")
    assert code == 2 and "line 2" in err


def test_fuzz_deterministic(capsys):
    first = call(capsys, "fuzz", "--seed", "11", "--iters", "300", "--real-marks")
    second = call(capsys, "fuzz", "--seed", "11", "--iters", "300", "--real-marks")
    assert first == second
    assert first[0] == 0 and "witness at iteration" in first[1]


def test_fuzz_integral(capsys):
    code, out, _ = call(capsys, "--json", "fuzz", "--seed", "3", "--iters", "40")
    assert code == 0 and json.loads(out) == {"schema": 1, "command": "fuzz", "mode": "integral", "ok": True, "iterations": 40}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "markedposets", "count", FOUR_MARKS, "--polytope", "order"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "12\n"

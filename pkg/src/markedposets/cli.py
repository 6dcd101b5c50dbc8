"""Command-line front end.

Marked poset file format, one directive per line, ``#`` starts a comment::

    elem a p q b
    mark a 0
    mark b 3/2
    cover a p
    cover p q
    cover q b

``elem`` may repeat; ``mark`` assigns a rational (``-3``, ``7``, ``1/2``) and
defines the marked set; ``cover lower upper`` asserts ``lower < upper``
(implied pairs are allowed and reduced away).

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import warnings
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from .errors import EmptyPolytope, InvalidWeight, ParseError, PosetError
from .generate import random_marked_poset
from .lietheory import (
    Weight,
    ffl_hrep,
    gt_poset,
    o_patterns,
    o_poset,
    s_lambda,
    sp_poset,
    weyl_dim,
)
from .marked import MarkedPoset, MarkingOrderWarning, new_marked_poset
from .polytope import (
    GridVector,
    LinearInequalitySystem,
    chain_hrep,
    contains,
    count_chain_points,
    count_order_points,
    count_packing_points,
    ehrhart,
    iter_chain_points,
    iter_order_points,
    order_hrep,
)
from .poset import validate
from .transfer import phi_tilde, psi_tilde

SCHEMA = 1
_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not a rational number: {text!r}")
    return Fraction(text)


def fmt(q: Fraction) -> str:
    return str(q)


def parse_marked_poset(text: str) -> MarkedPoset:
    elements: list[str] = []
    declared: set[str] = set()
    marks: dict[str, tuple[int, Fraction]] = {}
    covers: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        if word == "elem":
            if not args:
                raise ParseError(lineno, "elem needs at least one name")
            for name in args:
                if name in declared:
                    raise ParseError(lineno, f"element {name!r} declared twice")
                declared.add(name)
                elements.append(name)
        elif word == "mark":
            if len(args) != 2:
                raise ParseError(lineno, "expected: mark <name> <rational>")
            name, value = args
            if name in marks:
                raise ParseError(lineno, f"element {name!r} marked twice")
            try:
                marks[name] = (lineno, parse_rational(value))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(lineno, str(exc)) from None
        elif word == "cover":
            if len(args) != 2:
                raise ParseError(lineno, "expected: cover <lower> <upper>")
            covers.append((lineno, args[0], args[1]))
        else:
            raise ParseError(lineno, f"unknown directive {word!r}")
    for name, (lineno, _) in marks.items():
        if name not in declared:
            raise ParseError(lineno, f"mark names undeclared element {name!r}")
    for lineno, lo, hi in covers:
        for name in (lo, hi):
            if name not in declared:
                raise ParseError(lineno, f"cover names undeclared element {name!r}")
    poset = validate(elements, [(lo, hi) for _, lo, hi in covers])
    return new_marked_poset(poset, list(marks), {k: v for k, (_, v) in marks.items()})


def serialize_marked_poset(m: MarkedPoset) -> str:
    poset = m.poset
    lines = ["elem " + " ".join(poset.elements)]
    lines += [f"mark {p} {fmt(v)}" for p, v in m.marking.items()]
    for lo, hi in sorted(poset.covers, key=lambda c: (poset.index(c[0]), poset.index(c[1]))):
        lines.append(f"cover {lo} {hi}")
    return "\n".join(lines) + "\n"


def _sorted_vars(m: MarkedPoset) -> list[str]:
    return sorted(m.unmarked)


def _point_row(x: GridVector, order: list[str]) -> list[str]:
    vals = x.as_dict()
    return [fmt(vals[v]) for v in order]


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self, payload: dict) -> None:
        if self.as_json:
            print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True))
        else:
            print("\n".join(self.lines))


def _load(path: str) -> MarkedPoset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_marked_poset(text)


def _cmd_count(args, out: _Out) -> int:
    m = _load(args.file)
    counter = count_order_points if args.polytope == "order" else count_chain_points
    n = counter(m, args.grid)
    out.text(str(n))
    out.emit({"command": "count", "polytope": args.polytope, "grid": args.grid, "count": n})
    return 0


def _cmd_ehrhart(args, out: _Out) -> int:
    m = _load(args.file)
    poly = ehrhart(m, args.polytope)
    coeffs = [fmt(c) for c in poly.coefficients]
    out.text(f"E(t) = {poly}")
    out.text("coefficients (constant first): " + " ".join(coeffs))
    out.emit({"command": "ehrhart", "polytope": args.polytope, "coefficients": coeffs, "polynomial": str(poly)})
    return 0


def _cmd_enumerate(args, out: _Out) -> int:
    m = _load(args.file)
    order = _sorted_vars(m)
    it = iter_order_points if args.polytope == "order" else iter_chain_points
    rows = sorted(([x[v] for v in order] for x in it(m, args.grid)))
    points = [[fmt(c) for c in row] for row in rows]
    out.text("# " + " ".join(order))
    out.lines += [",".join(p) for p in points]
    out.emit(
        {"command": "enumerate", "polytope": args.polytope, "grid": args.grid, "variables": order, "points": points}
    )
    return 0


def _cmd_transfer(args, out: _Out) -> int:
    m = _load(args.file)
    order = _sorted_vars(m)
    try:
        values = [parse_rational(t) for t in args.point.split(",")] if args.point else []
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if len(values) != len(order):
        raise UsageError(f"--point needs {len(order)} coordinates in the order {' '.join(order)}")
    x = GridVector.from_mapping(m.unmarked, dict(zip(order, values)))
    if args.direction == "forward":
        source, image = order_hrep(m), phi_tilde(m, x)
    else:
        source, image = chain_hrep(m), psi_tilde(m, x)
    inside = contains(source, x)
    mapped = _point_row(image, order)
    out.text("# " + " ".join(order))
    out.text(",".join(mapped))
    if not inside:
        out.text("# note: input point is outside the source polytope")
    out.emit(
        {
            "command": "transfer",
            "direction": args.direction,
            "variables": order,
            "point": [fmt(v) for v in values],
            "image": mapped,
            "in_source": inside,
        }
    )
    return 0


def verify_checks(m: MarkedPoset, grid: int) -> list[tuple[str, str, str]]:
    """Run the transfer-map checks; returns ``(name, PASS|FAIL|SKIP, detail)`` triples."""
    checks = []
    order_pts = list(iter_order_points(m, grid))
    chain_pts = list(iter_chain_points(m, grid))
    n_o, n_c = len(order_pts), len(chain_pts)
    checks.append(("count-equality", "PASS" if n_o == n_c else "FAIL", f"order {n_o}, chain {n_c}"))

    if not m.is_integral():
        checks.append(("ehrhart-equality", "SKIP", "marking is not integral"))
    else:
        try:
            e_o, e_c = ehrhart(m, "order"), ehrhart(m, "chain")
            ok = e_o == e_c
            detail = f"order {e_o}; chain {e_c}"
        except EmptyPolytope:
            ok = count_order_points(m) == count_chain_points(m) == 0
            detail = "both polytopes are empty" if ok else "exactly one polytope is empty"
        checks.append(("ehrhart-equality", "PASS" if ok else "FAIL", detail))

    bad = sum(psi_tilde(m, phi_tilde(m, x)) != x for x in order_pts)
    bad += sum(phi_tilde(m, psi_tilde(m, y)) != y for y in chain_pts)
    checks.append(("round-trip", "PASS" if not bad else "FAIL", f"{bad} failures over {n_o + n_c} points"))

    image = {phi_tilde(m, x) for x in order_pts}
    ok = len(image) == n_o and image == set(chain_pts)
    checks.append(("bijection", "PASS" if ok else "FAIL", f"image size {len(image)}, chain points {n_c}"))
    return checks


def _cmd_verify(args, out: _Out) -> int:
    m = _load(args.file)
    checks = verify_checks(m, args.grid)
    for name, status, detail in checks:
        out.text(f"{status} {name}: {detail}")
    failed = any(status == "FAIL" for _, status, _ in checks)
    out.emit(
        {
            "command": "verify",
            "grid": args.grid,
            "checks": [{"name": n, "status": s, "detail": d} for n, s, d in checks],
            "ok": not failed,
        }
    )
    return 1 if failed else 0


def _hrep_text(h: LinearInequalitySystem) -> list[str]:
    lines = ["variables " + " ".join(h.variables)]
    if h.nonneg:
        lines.append("nonneg " + " ".join(v for v in h.variables if v in h.nonneg))
    for row in h.rows:
        terms = [(c, v) for c, v in zip(row.coeffs, h.variables) if c]
        lhs = " + ".join(v if c == 1 else f"{fmt(c)}*{v}" for c, v in terms).replace("+ -1*", "- ")
        lines.append(f"{lhs} <= {fmt(row.bound)}")
    return lines


def _cmd_lie(args, out: _Out) -> int:
    try:
        entries = [parse_rational(t) for t in args.weight.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if len(entries) != args.n:
        raise UsageError(f"--weight has {len(entries)} entries but --n is {args.n}")
    lie_type = {"gt": "A", "ffl": "A", "sp": "C", "so": "B"}[args.kind]
    w = Weight(lie_type, tuple(entries))
    dim = weyl_dim(w)
    payload: dict = {"command": "lie", "kind": args.kind, "weight": [fmt(e) for e in w.entries], "weyl": dim}
    if args.kind == "gt":
        m = gt_poset(w)
        count = count_order_points(m)
        out.lines += serialize_marked_poset(m).splitlines()
        payload["poset"] = serialize_marked_poset(m)
    elif args.kind == "ffl":
        h = ffl_hrep(w)
        count = count_packing_points(h)
        out.lines += _hrep_text(h)
        payload["hrep"] = _hrep_text(h)
    elif args.kind == "sp":
        m = sp_poset(w)
        count = count_order_points(m)
        chain = count_chain_points(m)
        out.lines += serialize_marked_poset(m).splitlines()
        out.text(f"chain polytope count {chain}")
        payload["poset"] = serialize_marked_poset(m)
        payload["chain_count"] = chain
    else:
        m = o_poset(w)
        count = len(o_patterns(w))
        s = len(s_lambda(w))
        out.lines += serialize_marked_poset(m).splitlines()
        out.text(f"S(lambda) count {s}")
        payload["poset"] = serialize_marked_poset(m)
        payload["s_count"] = s
    match = count == dim and payload.get("chain_count", dim) == dim and payload.get("s_count", dim) == dim
    out.text(f"count {count}, weyl {dim}, {'MATCH' if match else 'MISMATCH'}")
    payload.update(count=count, match=match)
    out.emit(payload)
    return 0 if match else 1


def _cmd_fuzz(args, out: _Out) -> int:
    rng = random.Random(args.seed)
    for it in range(args.iters):
        if args.real_marks:
            m = random_marked_poset(rng, args.max_unmarked, args.max_mark, real_marks=True)
            n_o, n_c = count_order_points(m), count_chain_points(m)
            if n_o != n_c:
                text = serialize_marked_poset(m)
                out.text(f"witness at iteration {it}: order count {n_o} != chain count {n_c}")
                out.lines += text.splitlines()
                out.emit({"command": "fuzz", "mode": "real", "found": True, "iteration": it,
                          "order_count": n_o, "chain_count": n_c, "poset": text})
                return 0
        else:
            m = random_marked_poset(rng, args.max_unmarked, args.max_mark, compatible=rng.random() < 0.5)
            for grid in (1, 2, 3):
                n_o, n_c = count_order_points(m, grid), count_chain_points(m, grid)
                if n_o != n_c:
                    text = serialize_marked_poset(m)
                    out.text(f"FAIL at iteration {it}, grid {grid}: order {n_o} != chain {n_c}")
                    out.lines += text.splitlines()
                    out.emit({"command": "fuzz", "mode": "integral", "ok": False, "iteration": it,
                              "grid": grid, "poset": text})
                    return 1
            pts = list(iter_order_points(m))
            image = {phi_tilde(m, x) for x in pts}
            if len(image) != len(pts) or image != set(iter_chain_points(m)):
                text = serialize_marked_poset(m)
                out.text(f"FAIL at iteration {it}: transfer map is not a bijection on lattice points")
                out.lines += text.splitlines()
                out.emit({"command": "fuzz", "mode": "integral", "ok": False, "iteration": it,
                          "grid": 1, "poset": text})
                return 1
    if args.real_marks:
        out.text(f"no witness in {args.iters} iterations")
        out.emit({"command": "fuzz", "mode": "real", "found": False, "iterations": args.iters})
        return 1
    out.text(f"PASS {args.iters} random marked posets")
    out.emit({"command": "fuzz", "mode": "integral", "ok": True, "iterations": args.iters})
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="markedposets", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.add_argument("file")
        return p

    p = with_file("count", "count grid points of a marked polytope")
    p.add_argument("--polytope", choices=("order", "chain"), required=True)
    p.add_argument("--grid", type=_positive, default=1)
    p.set_defaults(func=_cmd_count)

    p = with_file("ehrhart", "Ehrhart polynomial of a marked polytope")
    p.add_argument("--polytope", choices=("order", "chain"), required=True)
    p.set_defaults(func=_cmd_ehrhart)

    p = with_file("enumerate", "list grid points, one per line")
    p.add_argument("--polytope", choices=("order", "chain"), required=True)
    p.add_argument("--grid", type=_positive, default=1)
    p.set_defaults(func=_cmd_enumerate)

    p = with_file("transfer", "apply the transfer map or its inverse to a point")
    p.add_argument("--direction", choices=("forward", "back"), required=True)
    p.add_argument("--point", required=True, help="comma-separated coordinates, sorted element-name order")
    p.set_defaults(func=_cmd_transfer)

    p = with_file("verify", "check count, Ehrhart, round-trip and bijection properties")
    p.add_argument("--grid", type=_positive, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lie", help="Lie-theoretic instances against the Weyl dimension", parents=[common])
    p.add_argument("kind", choices=("gt", "ffl", "sp", "so"))
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=_cmd_lie)

    p = sub.add_parser("fuzz", help="random marked posets", parents=[common])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--iters", type=_positive, default=100)
    p.add_argument("--max-unmarked", type=_positive, default=5)
    p.add_argument("--max-mark", type=_positive, default=3)
    p.add_argument("--real-marks", action="store_true")
    p.set_defaults(func=_cmd_fuzz)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(getattr(args, "json", False))
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MarkingOrderWarning)
            return args.func(args, out)
    except (UsageError, ParseError, PosetError, InvalidWeight, EmptyPolytope, ValueError) as exc:
        if out.as_json:
            print(json.dumps({"schema": SCHEMA, "error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

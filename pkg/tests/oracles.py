"""Slow independent reference implementations used only by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import sympy

from markedposets.marked import MarkedPoset
from markedposets.polytope import GridVector, LinearInequalitySystem, Row, contains


def grid_box(lo: Fraction, hi: Fraction, d: int, grid: int):
    """Every point of ``[lo, hi]^d ∩ (1/grid) Z^d``."""
    start = -((-lo * grid).__floor__())
    stop = (hi * grid).__floor__()
    axis = [Fraction(k, grid) for k in range(start, stop + 1)]
    return itertools.product(axis, repeat=d)


def brute_force(h: LinearInequalitySystem, lo: Fraction, hi: Fraction, grid: int) -> set[GridVector]:
    d = len(h.variables)
    out = set()
    for coords in grid_box(lo, hi, d, grid):
        x = GridVector(h.variables, coords)
        if contains(h, x):
            out.add(x)
    return out


def order_box(m: MarkedPoset) -> tuple[Fraction, Fraction]:
    vals = list(m.marking.values())
    return min(vals), max(vals)


def chain_box(m: MarkedPoset) -> tuple[Fraction, Fraction]:
    lo, hi = order_box(m)
    return Fraction(0), hi - lo


def all_marked_chains(m: MarkedPoset) -> list[tuple[str, tuple[str, ...], str]]:
    """Every chain a < p1 < ... < pk < b, not necessarily saturated, with a, b marked and p_i unmarked."""
    poset = m.poset
    out = []
    unmarked = m.unmarked
    for k in range(1, len(unmarked) + 1):
        for combo in itertools.permutations(unmarked, k):
            if not all(poset.less_than(x, y) for x, y in zip(combo, combo[1:])):
                continue
            for a in m.marking:
                if not poset.less_than(a, combo[0]):
                    continue
                for b in m.marking:
                    if poset.less_than(combo[-1], b):
                        out.append((a, combo, b))
    return out


def all_chains_hrep(m: MarkedPoset) -> LinearInequalitySystem:
    variables = m.unmarked
    rows = []
    for a, interior, b in all_marked_chains(m):
        coeffs = tuple(Fraction(1 if v in interior else 0) for v in variables)
        rows.append(Row(coeffs, m.marking[b] - m.marking[a]))
    return LinearInequalitySystem(variables, tuple(rows), frozenset(variables))


def full_closure_order_hrep(m: MarkedPoset) -> LinearInequalitySystem:
    """Order polytope with one row per comparable pair, not just per cover."""
    variables = m.unmarked
    pos = {v: i for i, v in enumerate(variables)}
    rows = []
    for p in m.poset.elements:
        for q in m.poset.strictly_above(p):
            coeffs = [Fraction(0)] * len(variables)
            bound = Fraction(0)
            if p in pos:
                coeffs[pos[p]] += 1
            else:
                bound -= m.marking[p]
            if q in pos:
                coeffs[pos[q]] -= 1
            else:
                bound += m.marking[q]
            rows.append(Row(tuple(coeffs), bound))
    return LinearInequalitySystem(variables, tuple(rows))


def vandermonde_coefficients(nodes, values) -> list[Fraction]:
    n = len(nodes)
    mat = sympy.Matrix(n, n, lambda i, j: sympy.Integer(nodes[i]) ** j)
    rhs = sympy.Matrix([sympy.Rational(str(v)) for v in values])
    sol = mat.LUsolve(rhs)
    coeffs = [Fraction(int(c.p), int(c.q)) for c in sol]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def nx_covers(elements, pairs) -> set[tuple[str, str]]:
    g = nx.DiGraph()
    g.add_nodes_from(elements)
    g.add_edges_from(pairs)
    return set(nx.transitive_reduction(g).edges())


def nx_dyck_path_count(n: int) -> int:
    """Paths in the root grid graph from any simple root to any simple root."""
    g = nx.DiGraph()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            g.add_node((i, j))
            if i + 1 < j:
                g.add_edge((i, j), (i + 1, j))
            if j + 1 <= n:
                g.add_edge((i, j), (i, j + 1))
    simple = [(i, i + 1) for i in range(1, n)]
    total = 0
    for s in simple:
        for t in simple:
            if s == t:
                total += 1
            else:
                total += sum(1 for _ in nx.all_simple_paths(g, s, t))
    return total


def gt_patterns_brute(weight: tuple[int, ...]) -> int:
    """Count Gelfand-Tsetlin patterns directly from the interlacing rule, row by row."""

    def below(row):
        ranges = [range(row[c + 1], row[c] + 1) for c in range(len(row) - 1)]
        return itertools.product(*ranges)

    def count(row):
        if len(row) == 1:
            return 1
        return sum(count(nxt) for nxt in below(row))

    return count(tuple(weight))


def stanley_order(poset, x):
    if any(not 0 <= x[p] <= 1 for p in poset.elements):
        return False
    return all(x[lo] <= x[hi] for lo, hi in poset.covers)


def stanley_chain(poset, x):
    if any(x[p] < 0 for p in poset.elements):
        return False
    for k in range(1, len(poset.elements) + 1):
        for combo in itertools.permutations(poset.elements, k):
            if all(poset.less_than(a, b) for a, b in zip(combo, combo[1:])):
                if sum(x[p] for p in combo) > 1:
                    return False
    return True


def board_patterns(top, lengths, grid=1, congruent_to=None) -> int:
    """Count board fillings row by row: each entry lies between its upper-right neighbour (or 0) and its upper-left one.

    With ``congruent_to`` set, entries that have an upper-right neighbour must
    differ from it by an integer.
    """

    def rows_below(prev, length):
        choices = []
        for c in range(length):
            hi = prev[c]
            has_right = c + 1 < len(prev)
            lo = prev[c + 1] if has_right else Fraction(0)
            vals = [Fraction(k, grid) for k in range(-((-lo * grid).__floor__()), (hi * grid).__floor__() + 1)]
            if congruent_to is not None and has_right:
                vals = [x for x in vals if (x - congruent_to).denominator == 1]
            choices.append(vals)
        return itertools.product(*choices)

    def count(prev, rest):
        if not rest:
            return 1
        return sum(count(row, rest[1:]) for row in rows_below(prev, rest[0]))

    return count(tuple(Fraction(t) for t in top), list(lengths))

"""Marked order and chain polytopes: H-representations, grid points, Ehrhart polynomials.

Both polytopes live in ``R^(P - A)``.  The order polytope is cut out by one
inequality per cover relation; the chain polytope by nonnegativity plus one
inequality per saturated marked chain.  Grid points of ``(1/m) Z^(P - A)`` are
enumerated by two unrelated backtracking schemes so that each can check the
other through the transfer map.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .errors import EmptyPolytope, IndexMismatch, NonIntegralMarking
from .marked import MarkedPoset, dilate_marking, marked_chains

Which = Literal["order", "chain"]


@dataclass(frozen=True)
class GridVector:
    """Exact rational point indexed by unmarked elements.

    ``denominator`` is a hint ``m`` with every coordinate in ``(1/m) Z``; it is
    not part of equality.
    """

    variables: tuple[str, ...]
    coords: tuple[Fraction, ...]
    denominator: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.coords):
            raise IndexMismatch(f"{len(self.variables)} variables but {len(self.coords)} coordinates")
        coords = tuple(c if type(c) is Fraction else Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        lcm = math.lcm(*(c.denominator for c in coords)) if coords else 1
        if self.denominator == 0:
            object.__setattr__(self, "denominator", lcm)
        elif self.denominator < 0 or self.denominator % lcm:
            raise ValueError(f"coordinates {self} are not all in (1/{self.denominator})Z")

    @classmethod
    def trusted(cls, variables: tuple[str, ...], coords: tuple[Fraction, ...], denominator: int):
        """Skip validation; for internal producers that already guarantee the invariants."""
        v = object.__new__(cls)
        object.__setattr__(v, "variables", variables)
        object.__setattr__(v, "coords", coords)
        object.__setattr__(v, "denominator", denominator)
        return v

    @classmethod
    def from_mapping(cls, variables: Sequence[str], values: dict[str, object], denominator: int = 0) -> GridVector:
        if set(values) != set(variables):
            raise IndexMismatch(f"expected coordinates for {list(variables)}, got {sorted(values)}")
        return cls(tuple(variables), tuple(Fraction(values[v]) for v in variables), denominator)

    def __hash__(self) -> int:
        # Fraction.__hash__ needs a modular inverse; reduced numerator/denominator pairs are cheaper
        return hash((self.variables, tuple(c.numerator for c in self.coords), tuple(c.denominator for c in self.coords)))

    def __getitem__(self, name: str) -> Fraction:
        try:
            return self.coords[self.variables.index(name)]
        except ValueError:
            raise IndexMismatch(f"no coordinate {name!r}") from None

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.variables, self.coords))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    bound: Fraction


@dataclass(frozen=True)
class LinearInequalitySystem:
    """Rows ``coeffs · x <= bound`` plus ``x_v >= 0`` for ``v`` in ``nonneg``."""

    variables: tuple[str, ...]
    rows: tuple[Row, ...]
    nonneg: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row.coeffs) != len(self.variables):
                raise IndexMismatch("row length differs from the number of variables")

    def contains(self, x: GridVector) -> bool:
        return contains(self, x)

    def canonical(self) -> tuple[frozenset, frozenset[str]]:
        """Order-free form: each row becomes its sorted sparse support and bound.

        Rows are scaled so the first nonzero coefficient has absolute value 1,
        and constraints with empty support are dropped when trivially true.
        """
        out = set()
        for row in self.rows:
            support = tuple((v, c) for v, c in zip(self.variables, row.coeffs) if c)
            if not support:
                if row.bound >= 0:
                    continue
                out.add(((), Fraction(-1)))
                continue
            scale = abs(support[0][1])
            key = tuple(sorted((v, c / scale) for v, c in support))
            out.add((key, row.bound / scale))
        return frozenset(out), frozenset(self.nonneg)

    def renamed(self, mapping: dict[str, str]) -> LinearInequalitySystem:
        return LinearInequalitySystem(
            tuple(mapping[v] for v in self.variables),
            self.rows,
            frozenset(mapping[v] for v in self.nonneg),
        )


def contains(h: LinearInequalitySystem, x: GridVector) -> bool:
    if x.variables != h.variables:
        raise IndexMismatch(f"point indexed by {x.variables}, system by {h.variables}")
    pos = {v: i for i, v in enumerate(h.variables)}
    if any(x.coords[pos[v]] < 0 for v in h.nonneg):
        return False
    return all(sum(c * xi for c, xi in zip(row.coeffs, x.coords) if c) <= row.bound for row in h.rows)


def _unit(n: int, i: int, c: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def order_hrep(m: MarkedPoset) -> LinearInequalitySystem:
    """One row per cover relation touching an unmarked element."""
    variables = m.unmarked
    pos = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    poset = m.poset
    rows = []
    for lo, hi in sorted(poset.covers, key=lambda c: (poset.index(c[0]), poset.index(c[1]))):
        lo_m, hi_m = m.is_marked(lo), m.is_marked(hi)
        if lo_m and hi_m:
            continue
        if lo_m:
            rows.append(Row(tuple(_unit(n, pos[hi], -1)), -m.marking[lo]))
        elif hi_m:
            rows.append(Row(tuple(_unit(n, pos[lo], 1)), m.marking[hi]))
        else:
            c = _unit(n, pos[lo], 1)
            c[pos[hi]] = Fraction(-1)
            rows.append(Row(tuple(c), Fraction(0)))
    return LinearInequalitySystem(variables, tuple(rows))


def chain_hrep(m: MarkedPoset) -> LinearInequalitySystem:
    """Nonnegativity plus one row per saturated marked chain."""
    variables = m.unmarked
    pos = {v: i for i, v in enumerate(variables)}
    rows = []
    for chain in marked_chains(m):
        c = [Fraction(0)] * len(variables)
        for p in chain.interior:
            c[pos[p]] = Fraction(1)
        rows.append(Row(tuple(c), m.marking[chain.upper_mark] - m.marking[chain.lower_mark]))
    return LinearInequalitySystem(variables, tuple(rows), frozenset(variables))


class _FractionTable(dict):
    """Memoised ``k -> Fraction(k, grid)``."""

    def __init__(self, grid: int):
        super().__init__()
        self.grid = grid

    def __missing__(self, k: int) -> Fraction:
        v = self[k] = Fraction(k, self.grid)
        return v


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def order_bounds(m: MarkedPoset) -> dict[str, tuple[Fraction, Fraction]]:
    """Static bounds ``(low, high)`` per unmarked element.

    ``low`` is the largest marking reachable downward through unmarked
    elements only, ``high`` the smallest reachable upward; together with the
    unmarked-to-unmarked covers these describe the order polytope exactly.
    """
    poset = m.poset
    ext = poset.linear_extension()
    low: dict[str, Fraction] = {}
    for p in ext:
        if m.is_marked(p):
            continue
        vals = [m.marking[q] if m.is_marked(q) else low[q] for q in poset.lower_covers(p)]
        low[p] = max(vals)
    high: dict[str, Fraction] = {}
    for p in reversed(ext):
        if m.is_marked(p):
            continue
        vals = [m.marking[q] if m.is_marked(q) else high[q] for q in poset.upper_covers(p)]
        high[p] = min(vals)
    return {p: (low[p], high[p]) for p in m.unmarked}


class _OrderPlan:
    """Variable order, integer bounds and dependencies for grid step ``1/grid``."""

    def __init__(self, m: MarkedPoset, grid: int):
        poset = m.poset
        self.variables = m.unmarked
        self.order = [p for p in poset.linear_extension() if not m.is_marked(p)]
        at = {p: k for k, p in enumerate(self.order)}
        bounds = order_bounds(m)
        self.lo = [_ceil(bounds[p][0] * grid) for p in self.order]
        self.hi = [_floor(bounds[p][1] * grid) for p in self.order]
        self.deps = [tuple(at[q] for q in poset.lower_covers(p) if not m.is_marked(q)) for p in self.order]
        # positions whose values still constrain some later variable, per depth
        last_use = {}
        for k, deps in enumerate(self.deps):
            for d in deps:
                last_use[d] = max(last_use.get(d, -1), k)
        self.live = [tuple(d for d in range(k) if last_use.get(d, -1) >= k) for k in range(len(self.order) + 1)]
        self.out_pos = [at[v] for v in self.variables]

    def range_at(self, k: int, vals: list[int]) -> range:
        lo = self.lo[k]
        for d in self.deps[k]:
            if vals[d] > lo:
                lo = vals[d]
        return range(lo, self.hi[k] + 1)


def iter_order_points(m: MarkedPoset, grid: int = 1) -> Iterator[GridVector]:
    """Backtracking over a linear extension of ``P - A``; lazily yields grid points."""
    plan = _OrderPlan(m, grid)
    n = len(plan.order)
    vals = [0] * n
    frac = _FractionTable(grid)

    def rec(k: int) -> Iterator[GridVector]:
        if k == n:
            yield GridVector.trusted(plan.variables, tuple(frac[vals[i]] for i in plan.out_pos), grid)
            return
        for v in plan.range_at(k, vals):
            vals[k] = v
            yield from rec(k + 1)

    yield from rec(0)


def enumerate_order_points(m: MarkedPoset, grid: int = 1) -> list[GridVector]:
    """All points of the order polytope in ``(1/grid) Z^(P - A)``, lexicographically sorted."""
    return sorted(iter_order_points(m, grid), key=lambda x: x.coords)


def count_order_points(m: MarkedPoset, grid: int = 1) -> int:
    plan = _OrderPlan(m, grid)
    n = len(plan.order)
    if any(lo > hi for lo, hi in zip(plan.lo, plan.hi)):
        return 0
    vals = [0] * n

    @lru_cache(maxsize=None)
    def rec(k: int, key: tuple[int, ...]) -> int:
        if k == n:
            return 1
        total = 0
        for v in plan.range_at(k, vals):
            vals[k] = v
            total += rec(k + 1, tuple(vals[d] for d in plan.live[k + 1]))
        return total

    return rec(0, ())


class _PackingPlan:
    """Rows with nonnegative integer coefficients over nonnegative variables, scaled by ``grid``."""

    def __init__(self, h: LinearInequalitySystem, grid: int, order: Sequence[str] | None = None):
        if set(h.nonneg) != set(h.variables):
            raise ValueError("packing enumeration needs every variable to be nonnegative")
        self.variables = h.variables
        self.order = list(order) if order is not None else list(h.variables)
        if sorted(self.order) != sorted(self.variables):
            raise IndexMismatch("variable order is not a permutation of the system's variables")
        col = {v: i for i, v in enumerate(h.variables)}
        self.bounds = [_floor(row.bound * grid) for row in h.rows]
        self.rows_of: list[list[tuple[int, int]]] = [[] for _ in self.order]
        last = [-1] * len(h.rows)
        for r, row in enumerate(h.rows):
            for k, v in enumerate(self.order):
                c = row.coeffs[col[v]]
                if not c:
                    continue
                if c < 0 or c.denominator != 1:
                    raise ValueError(f"coefficient {c} is not a nonnegative integer")
                self.rows_of[k].append((r, int(c)))
                last[r] = k
        unbounded = [v for v, rows in zip(self.order, self.rows_of) if not rows]
        assert not unbounded, f"variables {unbounded} appear in no row; the system is unbounded"
        # rows still open (some variable unassigned) when entering depth k
        self.open = [tuple(r for r in range(len(h.rows)) if last[r] >= k) for k in range(len(self.order) + 1)]
        at = {v: k for k, v in enumerate(self.order)}
        self.out_pos = [at[v] for v in self.variables]
        self.infeasible = any(b < 0 for b in self.bounds)

    def cap(self, k: int, sums: list[int]) -> int:
        return min((self.bounds[r] - sums[r]) // c for r, c in self.rows_of[k])


def iter_packing_points(
    h: LinearInequalitySystem, grid: int = 1, order: Sequence[str] | None = None
) -> Iterator[GridVector]:
    """Grid points of ``{x >= 0, rows}`` for rows with nonnegative integer coefficients.

    Backtracks over ``order`` (default: the system's variable order) while
    keeping the running left-hand side of every row.
    """
    plan = _PackingPlan(h, grid, order)
    if plan.infeasible:
        return
    n = len(plan.order)
    vals = [0] * n
    sums = [0] * len(plan.bounds)
    frac = _FractionTable(grid)

    def rec(k: int) -> Iterator[GridVector]:
        if k == n:
            yield GridVector.trusted(plan.variables, tuple(frac[vals[i]] for i in plan.out_pos), grid)
            return
        rows = plan.rows_of[k]
        for v in range(plan.cap(k, sums) + 1):
            vals[k] = v
            for r, c in rows:
                sums[r] += c * v
            yield from rec(k + 1)
            for r, c in rows:
                sums[r] -= c * v

    yield from rec(0)


def count_packing_points(h: LinearInequalitySystem, grid: int = 1, order: Sequence[str] | None = None) -> int:
    plan = _PackingPlan(h, grid, order)
    if plan.infeasible:
        return 0
    n = len(plan.order)
    sums = [0] * len(plan.bounds)

    @lru_cache(maxsize=None)
    def rec(k: int, key: tuple[int, ...]) -> int:
        if k == n:
            return 1
        rows = plan.rows_of[k]
        total = 0
        for v in range(plan.cap(k, sums) + 1):
            for r, c in rows:
                sums[r] += c * v
            total += rec(k + 1, tuple(sums[r] for r in plan.open[k + 1]))
            for r, c in rows:
                sums[r] -= c * v
        return total

    return rec(0, ())


def _chain_order(m: MarkedPoset) -> list[str]:
    return [p for p in m.poset.linear_extension() if not m.is_marked(p)]


def iter_chain_points(m: MarkedPoset, grid: int = 1) -> Iterator[GridVector]:
    """Backtracking directly over the chain rows in linear-extension order."""
    return iter_packing_points(chain_hrep(m), grid, _chain_order(m))


def enumerate_chain_points(m: MarkedPoset, grid: int = 1) -> list[GridVector]:
    """All points of the chain polytope in ``(1/grid) Z^(P - A)``, lexicographically sorted."""
    return sorted(iter_chain_points(m, grid), key=lambda x: x.coords)


def count_chain_points(m: MarkedPoset, grid: int = 1) -> int:
    return count_packing_points(chain_hrep(m), grid, _chain_order(m))


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Polynomial with exact coefficients, constant term first."""

    coefficients: tuple[Fraction, ...]

    def __call__(self, t: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = f"({c})" if c.denominator != 1 else str(c)
                coef += "*" if mono else ""
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def interpolate(nodes: Sequence[int], values: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Coefficients (constant first) of the unique polynomial of degree < len(nodes)."""
    xs = [Fraction(x) for x in nodes]
    dd = [Fraction(v) for v in values]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    # Horner expansion of the Newton form
    for i in range(n - 1, -1, -1):
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


_COUNTERS = {"order": count_order_points, "chain": count_chain_points}


def ehrhart(m: MarkedPoset, which: Which) -> EhrhartPolynomial:
    """Ehrhart polynomial via marking dilation and interpolation at ``t = 1..d+1``."""
    if not m.is_integral():
        raise NonIntegralMarking("Ehrhart polynomials need an integral marking")
    count = _COUNTERS[which]
    d = len(m.unmarked)
    nodes = list(range(1, d + 2))
    values = [count(dilate_marking(m, t)) for t in nodes]
    if values[0] == 0:
        raise EmptyPolytope(f"the marked {which} polytope has no lattice points")
    return EhrhartPolynomial(interpolate(nodes, values))

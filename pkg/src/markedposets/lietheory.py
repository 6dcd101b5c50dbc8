"""Gelfand-Tsetlin, FFL and Berenstein-Zelevinsky instances of marked poset polytopes.

Board conventions
-----------------
Patterns are drawn on triangular boards whose top row carries the weight.
Row ``r`` position ``c`` (both 1-based below the top row) is the element
``x{r}_{c}``; its upper-left neighbour is ``(r-1, c)`` and its upper-right
neighbour ``(r-1, c+1)``.  The top row consists of the marked elements
``l1 .. ln``.  An entry is at most its upper-left and at least its upper-right
neighbour, so the poset has ``(r, c) < (r-1, c)`` and ``(r-1, c+1) < (r, c)``.

* type A: rows ``1 .. n-1`` of lengths ``n-1, ..., 1``;
* types B and C: rows ``1 .. 2n-1`` of lengths ``n, n-1, n-1, ..., 1, 1``.
  The last entry of each odd row has no upper-right neighbour and instead
  sits above a marked zero ``z{k}``.

Roots of ``sl_n`` are pairs ``(i, j)`` with ``1 <= i < j <= n`` standing for
``ε_i - ε_j``; the variable for ``(i, j)`` is named ``a{i}_{j}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal

from .errors import CharacterizationMismatch, InvalidWeight
from .marked import MarkedPoset, new_marked_poset
from .polytope import (
    GridVector,
    LinearInequalitySystem,
    Row,
    enumerate_chain_points,
    enumerate_order_points,
)
from .poset import validate
from .transfer import phi_tilde

LieType = Literal["A", "B", "C"]
Root = tuple[int, int]


@dataclass(frozen=True)
class Weight:
    """Dominant weight as coordinates ``(λ_1, ..., λ_n)`` in the ``ε`` basis."""

    lie_type: LieType
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        entries = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        t = self.lie_type
        if t not in ("A", "B", "C"):
            raise InvalidWeight(f"unsupported Lie type {t!r}")
        if not entries:
            raise InvalidWeight("weight needs at least one entry")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise InvalidWeight(f"entries must be weakly decreasing: {self}")
        if t in ("A", "C") and any(e.denominator != 1 for e in entries):
            raise InvalidWeight(f"type {t} weights need integer entries: {self}")
        if t in ("B", "C") and entries[-1] < 0:
            raise InvalidWeight(f"type {t} weights need nonnegative entries: {self}")
        if t == "B":
            if any(2 * e != int(2 * e) for e in entries):
                raise InvalidWeight(f"type B entries must be half-integers: {self}")
            if len({e.denominator for e in entries}) > 1:
                raise InvalidWeight(f"type B entries must be all integers or all non-integers: {self}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return f"{self.lie_type}(" + ",".join(str(e) for e in self.entries) + ")"


def _require(w: Weight, lie_type: str, min_n: int = 1) -> None:
    if w.lie_type != lie_type:
        raise InvalidWeight(f"expected a type {lie_type} weight, got {w}")
    if w.n < min_n:
        raise InvalidWeight(f"type {lie_type} needs n >= {min_n}, got {w}")


def _board_poset(weight: tuple[Fraction, ...], row_lengths: list[int], zeros_under_odd_rows: bool) -> MarkedPoset:
    n = len(weight)
    lengths = [n, *row_lengths]
    names = {(0, c): f"l{c}" for c in range(1, n + 1)}
    for r, length in enumerate(row_lengths, start=1):
        for c in range(1, length + 1):
            names[(r, c)] = f"x{r}_{c}"
    marking: dict[str, Fraction] = {f"l{c}": weight[c - 1] for c in range(1, n + 1)}
    pairs = []
    zeros = []
    for r, length in enumerate(row_lengths, start=1):
        for c in range(1, length + 1):
            me = names[(r, c)]
            pairs.append((me, names[(r - 1, c)]))
            if c + 1 <= lengths[r - 1]:
                pairs.append((names[(r - 1, c + 1)], me))
            elif zeros_under_odd_rows:
                z = f"z{(r + 1) // 2}"
                zeros.append(z)
                marking[z] = Fraction(0)
                pairs.append((z, me))
    elements = list(marking)[:n] + [names[k] for k in names if k[0] > 0] + zeros
    poset = validate(elements, pairs)
    return new_marked_poset(poset, marking, marking)


def gt_poset(w: Weight) -> MarkedPoset:
    """Marked poset whose order polytope is the Gelfand-Tsetlin polytope of ``w``."""
    _require(w, "A", 2)
    return _board_poset(w.entries, list(range(w.n - 1, 0, -1)), False)


def _bz_rows(n: int) -> list[int]:
    rows = [n]
    for k in range(n - 1, 0, -1):
        rows += [k, k]
    return rows


def sp_poset(w: Weight) -> MarkedPoset:
    """Marked poset whose integral order-polytope points are the ``sp_2n``-patterns of ``w``."""
    _require(w, "C")
    return _board_poset(w.entries, _bz_rows(w.n), True)


def o_poset(w: Weight) -> MarkedPoset:
    """The same board poset for a type B weight (half-integral marks allowed)."""
    _require(w, "B")
    return _board_poset(w.entries, _bz_rows(w.n), True)


def board_position(name: str) -> tuple[int, int]:
    r, c = name[1:].split("_")
    return int(r), int(c)


def has_upper_right(m: MarkedPoset, name: str) -> bool:
    """Whether a board entry has an upper-right neighbour (rather than a marked zero below it)."""
    return not any(q.startswith("z") for q in m.poset.lower_covers(name))


def gt_root(name: str) -> Root:
    """Positive root labelling the type A board entry ``name``."""
    r, c = board_position(name)
    return (c, c + r)


def root_name(root: Root) -> str:
    return f"a{root[0]}_{root[1]}"


def positive_roots(n: int) -> list[Root]:
    return list(combinations(range(1, n + 1), 2))


@dataclass(frozen=True)
class DyckPath:
    roots: tuple[Root, ...]

    def __post_init__(self) -> None:
        rs = self.roots
        if not rs or not _simple(rs[0]) or not _simple(rs[-1]):
            raise ValueError(f"Dyck path must start and end at simple roots: {rs}")
        for (i, j), nxt in zip(rs, rs[1:]):
            if nxt not in ((i + 1, j), (i, j + 1)):
                raise ValueError(f"illegal step {(i, j)} -> {nxt}")

    @property
    def start(self) -> int:
        return self.roots[0][0]

    @property
    def end(self) -> int:
        return self.roots[-1][0]


def _simple(root: Root) -> bool:
    return root[1] == root[0] + 1


def dyck_paths(n: int) -> list[DyckPath]:
    """All Dyck paths of ``sl_n``, ordered by start root then lexicographically."""
    if n < 2:
        raise ValueError("dyck_paths needs n >= 2")
    out: list[tuple[Root, ...]] = []

    def walk(path: list[Root]) -> None:
        i, j = path[-1]
        if _simple((i, j)):
            out.append(tuple(path))
        for nxt in ((i + 1, j), (i, j + 1)):
            if nxt[0] < nxt[1] <= n:
                path.append(nxt)
                walk(path)
                path.pop()

    for i in range(1, n):
        walk([(i, i + 1)])
    return [DyckPath(p) for p in sorted(out)]


def ffl_hrep(w: Weight) -> LinearInequalitySystem:
    """FFL polytope: ``s >= 0`` and one row per Dyck path, bounded by ``m_i + ... + m_j``."""
    _require(w, "A", 2)
    roots = positive_roots(w.n)
    variables = tuple(root_name(r) for r in roots)
    pos = {r: k for k, r in enumerate(roots)}
    lam = w.entries
    rows = []
    for path in dyck_paths(w.n):
        coeffs = [Fraction(0)] * len(roots)
        for r in path.roots:
            coeffs[pos[r]] = Fraction(1)
        # m_i + ... + m_j telescopes to λ_i - λ_{j+1}
        rows.append(Row(tuple(coeffs), lam[path.start - 1] - lam[path.end]))
    return LinearInequalitySystem(variables, tuple(rows), frozenset(variables))


def height_classes(m: MarkedPoset) -> tuple[list[str], list[str], list[str]]:
    """Unmarked elements of height 1, height 2 and height at least 3."""
    classes: tuple[list[str], list[str], list[str]] = ([], [], [])
    for p in m.unmarked:
        h = m.poset.height(p)
        classes[min(h, 3) - 1].append(p)
    return classes


def _in_z(q: Fraction) -> bool:
    return q.denominator == 1


def o_patterns(w: Weight) -> list[GridVector]:
    """Berenstein-Zelevinsky ``o_{2n+1}``-patterns of highest weight ``w``.

    Half-integral points of the board's order polytope whose entries with an
    upper-right neighbour are congruent to ``λ_1`` modulo ``Z``.
    """
    m = o_poset(w)
    lam1 = w.entries[0]
    congruent = [p for p in m.unmarked if has_upper_right(m, p)]
    return [x for x in enumerate_order_points(m, 2) if all(_in_z(x[p] + lam1) for p in congruent)]


def s_lambda_direct(w: Weight) -> list[GridVector]:
    """S(λ) from its grid-plus-congruence description on the chain polytope."""
    m = o_poset(w)
    lam1 = w.entries[0]
    _, second, rest = height_classes(m)
    for p in second:
        marked = [q for q in m.poset.lower_covers(p) if m.is_marked(q)]
        if marked:
            raise CharacterizationMismatch(f"height-2 element {p} covers marked {marked}; condition undefined")
    out = []
    for y in enumerate_chain_points(m, 2):
        if not all(_in_z(y[p]) for p in rest):
            continue
        if all(_in_z(max(y[q] for q in m.poset.lower_covers(p)) + y[p] + lam1) for p in second):
            out.append(y)
    return out


def s_lambda(w: Weight) -> list[GridVector]:
    """S(λ) as the transfer image of R(λ), checked against the direct description."""
    m = o_poset(w)
    patterns = o_patterns(w)
    image = [phi_tilde(m, x) for x in patterns]
    if len(set(image)) != len(patterns):
        raise CharacterizationMismatch("transfer map is not injective on R(λ)")
    direct = s_lambda_direct(w)
    if set(image) != set(direct):
        raise CharacterizationMismatch(
            f"transfer image has {len(image)} points, direct description {len(direct)}"
        )
    return sorted(image, key=lambda y: y.coords)


def _positive_roots_eps(lie_type: str, n: int) -> list[tuple[int, ...]]:
    roots = []
    for i, j in combinations(range(n), 2):
        minus = [0] * n
        minus[i], minus[j] = 1, -1
        roots.append(tuple(minus))
        if lie_type != "A":
            plus = [0] * n
            plus[i], plus[j] = 1, 1
            roots.append(tuple(plus))
    if lie_type in ("B", "C"):
        for i in range(n):
            e = [0] * n
            e[i] = 1 if lie_type == "B" else 2
            roots.append(tuple(e))
    return roots


def _rho(lie_type: str, n: int) -> list[Fraction]:
    if lie_type == "A":
        return [Fraction(n - i) for i in range(1, n + 1)]
    if lie_type == "B":
        return [Fraction(2 * (n - i) + 1, 2) for i in range(1, n + 1)]
    return [Fraction(n - i + 1) for i in range(1, n + 1)]


def weyl_dim(w: Weight) -> int:
    """Dimension of the irreducible module of highest weight ``w`` by the Weyl dimension formula."""
    n = w.n
    rho = _rho(w.lie_type, n)
    shifted = [a + b for a, b in zip(w.entries, rho)]
    dim = Fraction(1)
    for alpha in _positive_roots_eps(w.lie_type, n):
        num = sum(c * s for c, s in zip(alpha, shifted))
        den = sum(c * r for c, r in zip(alpha, rho))
        dim *= Fraction(num) / den
    if dim.denominator != 1 or dim <= 0:
        raise AssertionError(f"Weyl dimension of {w} is not a positive integer: {dim}")
    return int(dim)

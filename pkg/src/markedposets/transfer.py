"""Transfer maps between marked order and marked chain polytopes.

``phi`` is Stanley's map on all of ``R^P``; ``phi_tilde`` is its marked
version on ``R^(P - A)`` and ``psi_tilde`` its inverse, built by lifting a
chain-polytope point bottom-up through the poset.

Internally coordinates are scaled to a common denominator and handled as
Python ints; results are converted back to exact fractions.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import IndexMismatch
from .marked import MarkedPoset
from .polytope import GridVector
from .poset import Poset


class FullVector(GridVector):
    """Exact rational vector indexed by every element of a poset, marked or not."""


@lru_cache(maxsize=4096)
def _frac(num: int, den: int) -> Fraction:
    return Fraction(num, den)


def _check(x: GridVector, expected: tuple[str, ...]) -> None:
    if x.variables != expected:
        raise IndexMismatch(f"vector indexed by {x.variables}, expected {expected}")


@lru_cache(maxsize=256)
def _lower_indices(poset: Poset) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(poset.index(q) for q in poset.lower_covers(p)) for p in poset.elements)


def _phi_values(lower: tuple[tuple[int, ...], ...], vals: Sequence):
    return [v if not lo else min(v - vals[q] for q in lo) for v, lo in zip(vals, lower)]


def phi(poset: Poset, x: FullVector) -> FullVector:
    """Stanley's transfer map: minimal elements pass through, others take the least drop to a cover."""
    _check(x, poset.elements)
    return FullVector(poset.elements, tuple(_phi_values(_lower_indices(poset), x.coords)))


@dataclass(frozen=True)
class _Plan:
    lower: tuple[tuple[int, ...], ...]  # poset indices of lower covers, per element
    unmarked_at: tuple[int, ...]  # poset index of each coordinate
    lower_unmarked: tuple[tuple[int, ...], ...]  # coordinate positions of unmarked lower covers
    lower_mark_max: tuple[Fraction | None, ...]  # largest marking among marked lower covers
    marks: tuple[Fraction | None, ...]  # marking per poset index
    lift_order: tuple[int, ...]  # poset indices in height order
    mark_den: int


@lru_cache(maxsize=256)
def _plan(m: MarkedPoset) -> _Plan:
    poset = m.poset
    lower = _lower_indices(poset)
    unmarked_at = tuple(poset.index(p) for p in m.unmarked)
    coord = {i: k for k, i in enumerate(unmarked_at)}
    marks = tuple(m.marking.get(p) for p in poset.elements)
    lower_unmarked = tuple(tuple(coord[q] for q in lower[i] if marks[q] is None) for i in unmarked_at)
    lower_mark_max = tuple(
        max((marks[q] for q in lower[i] if marks[q] is not None), default=None) for i in unmarked_at
    )
    lift_order = tuple(poset.index(p) for p in poset.linear_extension())
    mark_den = math.lcm(*(v.denominator for v in m.marking.values()))
    return _Plan(lower, unmarked_at, lower_unmarked, lower_mark_max, marks, lift_order, mark_den)


def _scaled(x: GridVector, plan: _Plan) -> tuple[int, list[int]]:
    den = math.lcm(x.denominator or 1, plan.mark_den)
    return den, [c.numerator * (den // c.denominator) for c in x.coords]


def _scale_mark(v: Fraction, den: int) -> int:
    return v.numerator * (den // v.denominator)


@lru_cache(maxsize=1024)
def _scaled_marks(m: MarkedPoset, den: int) -> tuple[int, ...]:
    return tuple(_scale_mark(v, den) if v is not None else 0 for v in _plan(m).marks)


def include(m: MarkedPoset, x: GridVector) -> FullVector:
    """Extend ``x`` by the marking on ``A``."""
    _check(x, m.unmarked)
    vals = x.as_dict()
    elements = m.poset.elements
    return FullVector(elements, tuple(m.marking[p] if m.is_marked(p) else vals[p] for p in elements))


def project(m: MarkedPoset, v: FullVector) -> GridVector:
    """Forget the coordinates on ``A``."""
    _check(v, m.poset.elements)
    return GridVector(m.unmarked, tuple(v.coords[i] for i in _plan(m).unmarked_at))


def phi_tilde(m: MarkedPoset, x: GridVector) -> GridVector:
    """Marked transfer map ``R^(P - A) -> R^(P - A)``.

    Evaluated from the cover formula and, as a cross-check, as
    ``project(phi(include(x)))``.
    """
    _check(x, m.unmarked)
    plan = _plan(m)
    den, xs = _scaled(x, plan)

    direct = []
    for k, xk in enumerate(xs):
        below = [xs[q] for q in plan.lower_unmarked[k]]
        lam = plan.lower_mark_max[k]
        if lam is not None:
            below.append(_scale_mark(lam, den))
        direct.append(xk - max(below))

    full = list(_scaled_marks(m, den))
    for k, i in enumerate(plan.unmarked_at):
        full[i] = xs[k]
    image = _phi_values(plan.lower, full)
    composed = [image[i] for i in plan.unmarked_at]
    assert direct == composed, f"phi_tilde disagrees with project∘phi∘include at {x}"

    return GridVector.trusted(m.unmarked, tuple(_frac(y, den) for y in direct), den)


def _lift(m: MarkedPoset, y: GridVector) -> tuple[int, list[int]]:
    _check(y, m.unmarked)
    plan = _plan(m)
    den, ys = _scaled(y, plan)
    coord = dict(zip(plan.unmarked_at, range(len(ys))))
    lifted = list(_scaled_marks(m, den))
    # height order makes every lower cover available before p
    for i in plan.lift_order:
        if plan.marks[i] is None:
            lifted[i] = ys[coord[i]] + max(lifted[q] for q in plan.lower[i])
    return den, lifted


def psi(m: MarkedPoset, y: GridVector) -> FullVector:
    """Lift ``y`` to ``R^P``: marked coordinates are ``λ``, others add ``y_p`` to the largest cover value."""
    den, lifted = _lift(m, y)
    return FullVector.trusted(m.poset.elements, tuple(_frac(v, den) for v in lifted), den)


def psi_tilde(m: MarkedPoset, y: GridVector) -> GridVector:
    """``psi`` followed by forgetting the marked coordinates."""
    den, lifted = _lift(m, y)
    return GridVector.trusted(m.unmarked, tuple(_frac(lifted[i], den) for i in _plan(m).unmarked_at), den)

"""Random rational points of marked order and chain polytopes."""

from __future__ import annotations

import random
from fractions import Fraction

from markedposets.marked import MarkedPoset
from markedposets.polytope import GridVector, chain_hrep, order_bounds


def rational_between(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    d = rng.randint(1, 7)
    a, b = -((-lo * d).__floor__()), (hi * d).__floor__()
    if a > b:
        return lo if rng.random() < 0.5 else hi
    return Fraction(rng.randint(a, b), d)


def order_point(rng: random.Random, m: MarkedPoset) -> GridVector:
    """Assign coordinates along a linear extension, each between its lower covers and its static upper bound."""
    bounds = order_bounds(m)
    vals = dict(m.marking)
    for p in m.poset.linear_extension():
        if p in vals:
            continue
        lo = max(vals[q] for q in m.poset.lower_covers(p))
        vals[p] = rational_between(rng, lo, bounds[p][1])
    return GridVector.from_mapping(m.unmarked, {p: vals[p] for p in m.unmarked})


def chain_point(rng: random.Random, m: MarkedPoset) -> GridVector:
    """Assign coordinates one at a time within the slack left by every chain row."""
    h = chain_hrep(m)
    slack = [row.bound for row in h.rows]
    coords = []
    for k in range(len(h.variables)):
        rows = [i for i, row in enumerate(h.rows) if row.coeffs[k]]
        cap = min(slack[i] for i in rows)
        y = rational_between(rng, Fraction(0), cap)
        for i in rows:
            slack[i] -= y
        coords.append(y)
    return GridVector(h.variables, tuple(coords))

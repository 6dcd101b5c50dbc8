"""Seeded random marked posets for fuzzing and property tests.

Uses :class:`random.Random` (Mersenne Twister), so a seed pins the whole
sequence across runs and platforms.
"""

from __future__ import annotations

import random
import warnings
from fractions import Fraction

from .marked import MarkedPoset, MarkingOrderWarning, new_marked_poset
from .poset import validate


def random_marked_poset(
    rng: random.Random,
    max_unmarked: int = 6,
    max_mark: int = 3,
    *,
    real_marks: bool = False,
    compatible: bool = False,
    edge_prob: float = 0.4,
) -> MarkedPoset:
    """Random DAG on up to ``2 * max_unmarked`` elements with all extremals marked.

    Elements ``e0, e1, ...`` are created in a topological order and each
    forward pair becomes a relation with probability ``edge_prob``.  Extremal
    elements are always marked, a few others at random, and more are marked
    if needed to keep at most ``max_unmarked`` unmarked.  Marks are integers in
    ``[-max_mark, max_mark]``; with ``real_marks`` they are rationals with
    denominator 1, 2 or 3 in the same range.  ``compatible`` sorts the marks
    along the topological order so that ``a < b`` implies ``λ_a <= λ_b``.
    """
    u = rng.randint(1, max_unmarked)
    k = rng.randint(1, u)
    n = u + k
    names = [f"e{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob]
    poset = validate(names, pairs)
    lows, highs = poset.extremal_elements()
    marked = set(lows) | set(highs)
    for e in names:
        if e not in marked and rng.random() < 0.15:
            marked.add(e)
    free = [e for e in names if e not in marked]
    rng.shuffle(free)
    while len(free) > max_unmarked:
        marked.add(free.pop())

    order = [e for e in names if e in marked]
    if real_marks:
        values = []
        for _ in order:
            d = rng.choice((1, 2, 3))
            values.append(Fraction(rng.randint(-max_mark * d, max_mark * d), d))
    else:
        values = [Fraction(rng.randint(-max_mark, max_mark)) for _ in order]
    if compatible:
        values.sort()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MarkingOrderWarning)
        return new_marked_poset(poset, marked, dict(zip(order, values)))


def random_family(seed: int, count: int, max_unmarked: int = 6, max_mark: int = 3) -> list[MarkedPoset]:
    """Integral-marking test family; every other member has an order-compatible marking."""
    rng = random.Random(seed)
    return [
        random_marked_poset(rng, max_unmarked, max_mark, compatible=(i % 2 == 0))
        for i in range(count)
    ]

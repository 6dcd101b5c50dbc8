"""Finite posets stored as Hasse diagrams.

A :class:`Poset` keeps its elements in first-appearance order and its cover
relation in transitively reduced form.  The strict order is precomputed as
bitsets so comparability queries are constant time.
"""

from __future__ import annotations

from collections.abc import Iterable
from graphlib import CycleError, TopologicalSorter

from .errors import CycleDetected, DuplicateElement, UnknownElement, UnknownElementInCover


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    ``covers`` holds pairs ``(lower, upper)`` with ``upper`` covering ``lower``.
    Build instances with :func:`validate`; the constructor trusts its input.
    """

    __slots__ = (
        "elements",
        "covers",
        "_index",
        "_lower",
        "_upper",
        "_above",
        "_below",
        "_heights",
        "_topo",
        "_hash",
    )

    def __init__(self, elements: tuple[str, ...], covers: frozenset[tuple[str, str]], topo: tuple[int, ...]):
        self.elements = elements
        self.covers = covers
        self._index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        lower: list[list[int]] = [[] for _ in range(n)]
        upper: list[list[int]] = [[] for _ in range(n)]
        for lo, hi in covers:
            i, j = self._index[lo], self._index[hi]
            lower[j].append(i)
            upper[i].append(j)
        self._lower = tuple(tuple(sorted(x)) for x in lower)
        self._upper = tuple(tuple(sorted(x)) for x in upper)
        self._topo = topo
        self._hash = hash((elements, covers))

        below = [0] * n
        heights = [0] * n
        for j in topo:
            for i in self._lower[j]:
                below[j] |= below[i] | (1 << i)
                heights[j] = max(heights[j], heights[i] + 1)
        above = [0] * n
        for i in range(n):
            for j in _bits(below[i]):
                above[j] |= 1 << i
        self._below = tuple(below)
        self._above = tuple(above)
        self._heights = tuple(heights)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)!r}, covers={sorted(self.covers)!r})"

    def index(self, p: str) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise UnknownElement(f"unknown element {p!r}") from None

    def less_than(self, p: str, q: str) -> bool:
        """True iff ``p < q`` strictly."""
        return bool(self._below[self.index(q)] >> self.index(p) & 1)

    def height(self, p: str) -> int:
        """Length of the longest chain ending at ``p``."""
        return self._heights[self.index(p)]

    def lower_covers(self, p: str) -> list[str]:
        return [self.elements[i] for i in self._lower[self.index(p)]]

    def upper_covers(self, p: str) -> list[str]:
        return [self.elements[i] for i in self._upper[self.index(p)]]

    def strictly_below(self, p: str) -> list[str]:
        return [self.elements[i] for i in _bits(self._below[self.index(p)])]

    def strictly_above(self, p: str) -> list[str]:
        return [self.elements[i] for i in _bits(self._above[self.index(p)])]

    def minimal_elements(self) -> list[str]:
        return [e for i, e in enumerate(self.elements) if not self._lower[i]]

    def maximal_elements(self) -> list[str]:
        return [e for i, e in enumerate(self.elements) if not self._upper[i]]

    def extremal_elements(self) -> tuple[list[str], list[str]]:
        return self.minimal_elements(), self.maximal_elements()

    def linear_extension(self) -> list[str]:
        """Elements sorted by (height, input order)."""
        order = sorted(range(len(self.elements)), key=lambda i: (self._heights[i], i))
        return [self.elements[i] for i in order]


def validate(raw_elements: Iterable[str], raw_cover_pairs: Iterable[tuple[str, str]]) -> Poset:
    """Build a :class:`Poset` from elements and any acyclic relation on them.

    Each pair ``(lower, upper)`` asserts ``lower < upper``.  The relation is
    closed transitively and then reduced to its covers, so implied pairs may
    be given or omitted freely.
    """
    elements: list[str] = []
    seen: set[str] = set()
    for e in raw_elements:
        if e in seen:
            raise DuplicateElement(f"duplicate element {e!r}")
        seen.add(e)
        elements.append(e)
    index = {e: i for i, e in enumerate(elements)}

    preds: dict[int, set[int]] = {i: set() for i in range(len(elements))}
    for lo, hi in raw_cover_pairs:
        for e in (lo, hi):
            if e not in index:
                raise UnknownElementInCover(f"cover ({lo!r}, {hi!r}) names unknown element {e!r}")
        if lo == hi:
            raise CycleDetected(f"element {lo!r} is related to itself")
        preds[index[hi]].add(index[lo])

    try:
        topo = tuple(TopologicalSorter(preds).static_order())
    except CycleError as exc:
        cycle = [elements[i] for i in exc.args[1]]
        raise CycleDetected(f"relation contains a cycle through {cycle}") from None

    below = [0] * len(elements)
    for j in topo:
        for i in preds[j]:
            below[j] |= below[i] | (1 << i)
    covers = set()
    for j in range(len(elements)):
        for i in _bits(below[j]):
            # i < j is a cover unless some k has i < k < j
            if not any(below[k] >> i & 1 for k in _bits(below[j])):
                covers.add((elements[i], elements[j]))
    return Poset(tuple(elements), frozenset(covers), topo)

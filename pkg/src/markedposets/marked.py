"""Marked posets ``(P, A, λ)`` and the marked chains that bound chain polytopes."""

from __future__ import annotations

import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from types import MappingProxyType

from .errors import ExtremalNotMarked, MarkingDomainMismatch
from .poset import Poset, validate


class MarkingOrderWarning(UserWarning):
    """Emitted when λ decreases along a comparable pair of marked elements."""


@dataclass(frozen=True, eq=False)
class MarkedPoset:
    poset: Poset
    marking: Mapping[str, Fraction]

    @property
    def marked(self) -> frozenset[str]:
        return frozenset(self.marking)

    @cached_property
    def unmarked(self) -> tuple[str, ...]:
        """Elements of ``P - A`` in poset element order; the coordinate order of vectors."""
        return tuple(e for e in self.poset.elements if e not in self.marking)

    def is_marked(self, p: str) -> bool:
        return p in self.marking

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkedPoset):
            return NotImplemented
        return self.poset == other.poset and dict(self.marking) == dict(other.marking)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.poset, frozenset(self.marking.items())))

    def __repr__(self) -> str:
        marks = {k: str(v) for k, v in self.marking.items()}
        return f"MarkedPoset({self.poset!r}, marking={marks})"

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.marking.values())

    def decreasing_marked_pairs(self) -> list[tuple[str, str]]:
        """Comparable marked pairs ``a < b`` with ``λ_a > λ_b``."""
        out = []
        for b in self.poset.elements:
            if b not in self.marking:
                continue
            for a in self.poset.strictly_below(b):
                if a in self.marking and self.marking[a] > self.marking[b]:
                    out.append((a, b))
        return out


@dataclass(frozen=True)
class MarkedChain:
    """Saturated chain ``lower_mark ≺ interior[0] ≺ ... ≺ interior[-1] ≺ upper_mark``."""

    lower_mark: str
    interior: tuple[str, ...]
    upper_mark: str


def new_marked_poset(
    poset: Poset,
    marked_set: Iterable[str],
    marking: Mapping[str, object],
) -> MarkedPoset:
    """Validate and bundle a marked poset.

    Markings need not be monotone along the order.  A decreasing comparable
    pair only triggers :class:`MarkingOrderWarning`; the polytopes built from
    such a marking may be empty.
    """
    marked = set(marked_set)
    if marked != set(marking):
        raise MarkingDomainMismatch(
            f"marking defined on {sorted(marking)} but marked set is {sorted(marked)}"
        )
    for p in marked:
        poset.index(p)
    lows, highs = poset.extremal_elements()
    missing = [p for p in dict.fromkeys(lows + highs) if p not in marked]
    if missing:
        raise ExtremalNotMarked(f"extremal elements {missing} are not marked")
    values = {p: Fraction(marking[p]) for p in poset.elements if p in marked}
    m = MarkedPoset(poset, MappingProxyType(values))
    bad = m.decreasing_marked_pairs()
    if bad:
        warnings.warn(
            f"marking decreases along {len(bad)} comparable marked pair(s), e.g. {bad[0]}",
            MarkingOrderWarning,
            stacklevel=2,
        )
    return m


def _fresh(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    while name in taken:
        name += "'"
    return name


def stanley_embed(poset: Poset) -> MarkedPoset:
    """Adjoin a bottom marked 0 and a top marked 1 to ``poset``."""
    bottom = _fresh("0hat", poset.elements)
    top = _fresh("1hat", list(poset.elements) + [bottom])
    pairs = list(poset.covers)
    pairs += [(bottom, p) for p in poset.minimal_elements()]
    pairs += [(p, top) for p in poset.maximal_elements()]
    if not poset.elements:
        pairs.append((bottom, top))
    extended = validate([bottom, *poset.elements, top], pairs)
    return new_marked_poset(extended, [bottom, top], {bottom: 0, top: 1})


def dilate_marking(m: MarkedPoset, n: int) -> MarkedPoset:
    if n < 1:
        raise ValueError(f"dilation factor must be positive, got {n}")
    return MarkedPoset(m.poset, MappingProxyType({p: v * n for p, v in m.marking.items()}))


def marked_chains(m: MarkedPoset) -> list[MarkedChain]:
    """All saturated chains with marked endpoints and a nonempty unmarked interior.

    Sorted lexicographically by the element indices along the chain.
    """
    poset = m.poset
    found: list[tuple[tuple[int, ...], MarkedChain]] = []

    def extend(a: str, path: list[str]) -> None:
        for q in poset.upper_covers(path[-1]):
            if m.is_marked(q):
                key = tuple(poset.index(e) for e in (a, *path, q))
                found.append((key, MarkedChain(a, tuple(path), q)))
            else:
                path.append(q)
                extend(a, path)
                path.pop()

    for a in poset.elements:
        if not m.is_marked(a):
            continue
        for p in poset.upper_covers(a):
            if not m.is_marked(p):
                extend(a, [p])
    found.sort(key=lambda kc: kc[0])
    return [c for _, c in found]

"""Domain types and dominance predicates shared by every engine.

Attribute semantics are smaller-is-better throughout: an item improves on
another in a dimension when its value is strictly lower.  Inputs that should
be maximized must be negated before ingestion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True, slots=True)
class UncertainItem:
    """One stream tuple: attribute values plus an occurrence probability.

    ``id`` is the arrival sequence number, strictly increasing over a run.
    ``prob`` must lie in (0, 1]; an item that never occurs carries no
    information and is rejected at construction.
    """

    id: int
    attrs: tuple[float, ...]
    prob: float

    def __post_init__(self) -> None:
        if not self.attrs:
            raise ValueError("item needs at least one attribute")
        if not isinstance(self.attrs, tuple):
            object.__setattr__(self, "attrs", tuple(self.attrs))
        if not 0.0 < self.prob <= 1.0:
            raise ValueError(f"occurrence probability must be in (0, 1], got {self.prob}")

    @property
    def dim(self) -> int:
        return len(self.attrs)


@dataclass(frozen=True, slots=True)
class DominanceCount:
    """Per-pair dimension tallies: ``le_count`` dims where a <= b, ``lt_count`` where a < b."""

    le_count: int
    lt_count: int


def _check_dims(a: UncertainItem, b: UncertainItem) -> None:
    if len(a.attrs) != len(b.attrs):
        raise ValueError(f"dimension mismatch: {len(a.attrs)} vs {len(b.attrs)}")


def dominance_counts(a: UncertainItem, b: UncertainItem) -> DominanceCount:
    """Count the dimensions in which ``a`` is no worse / strictly better than ``b``."""
    _check_dims(a, b)
    le = 0
    lt = 0
    for x, y in zip(a.attrs, b.attrs):
        if x <= y:
            le += 1
            if x < y:
                lt += 1
    return DominanceCount(le, lt)


def dominates(a: UncertainItem, b: UncertainItem) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    _check_dims(a, b)
    return _k_dom_attrs(a.attrs, b.attrs, len(a.attrs))


def k_dominates(a: UncertainItem, b: UncertainItem, k: int) -> bool:
    """True iff ``a`` is no worse than ``b`` in at least ``k`` dimensions and strictly
    better in at least one.

    Equivalent to the subset formulation: any strict dimension also satisfies <=,
    so a size-k witness subset containing a strict dimension can always be
    assembled once ``le_count >= k`` and ``lt_count >= 1``.
    """
    _check_dims(a, b)
    d = len(a.attrs)
    if not 1 <= k <= d:
        raise ValueError(f"k must be in [1, {d}], got {k}")
    return _k_dom_attrs(a.attrs, b.attrs, k)


def _k_dom_attrs(a: tuple[float, ...], b: tuple[float, ...], k: int) -> bool:
    """Hot-path predicate over raw attribute tuples; no validation.

    Early exits both ways: succeeds as soon as k non-worse dims plus one strict
    dim are seen, fails as soon as more than d-k worse dims are seen.
    """
    budget = len(a) - k
    le = 0
    lt = 0
    for x, y in zip(a, b):
        if x <= y:
            le += 1
            if x < y:
                lt += 1
            if lt and le >= k:
                return True
        else:
            budget -= 1
            if budget < 0:
                return False
    # loop completed within budget, so le >= k is guaranteed
    return lt > 0


def k_dominant_skyline(items: Iterable[UncertainItem], k: int) -> set[int]:
    """Ids of the items that no other item k-dominates.

    Brute force over all pairs; this is the oracle, never the hot path.
    """
    pool = list(items)
    if pool:
        d = pool[0].dim
        for it in pool:
            if it.dim != d:
                raise ValueError("all items must share dimensionality")
        if not 1 <= k <= d:
            raise ValueError(f"k must be in [1, {d}], got {k}")
    result: set[int] = set()
    for u in pool:
        if not any(v.id != u.id and _k_dom_attrs(v.attrs, u.attrs, k) for v in pool):
            result.add(u.id)
    return result

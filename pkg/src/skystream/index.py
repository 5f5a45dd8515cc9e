"""Normalization, sorted per-item profiles, prune thresholds, and the two
ordered index tables that make threshold pruning incremental.

Every item gets a profile: its normalized attribute values sorted ascending,
from which two thresholds are read at fixed positions shared by all items.
``mi_min`` sits at the configured pivot, ``mi_max`` at pivot + (d - k).  If
profile p's upper threshold is strictly below profile q's lower threshold,
q cannot k-dominate p: q can beat p in at most k - 1 dimensions, counting
one strict win plus the positions outside the [pivot, pivot + d - k] span.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from sortedcontainers import SortedList


class IndexCorruptionError(RuntimeError):
    """Internal inconsistency between index tables and window membership."""


class OutOfBoundsError(ValueError):
    """An attribute value fell outside the declared per-dimension bounds."""

    def __init__(self, dimension: int, value: float, low: float, high: float):
        self.dimension = dimension
        super().__init__(
            f"attribute {value} outside declared bounds [{low}, {high}] in dimension {dimension}"
        )


@dataclass(frozen=True, slots=True)
class NormalizationBounds:
    """Declared per-dimension (min, max) value ranges, fixed for a whole run.

    Bounds are declared up front (generator domain or a preload pass) because
    re-normalizing mid-stream would invalidate every stored profile and table
    key.
    """

    per_dim: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        for j, (lo, hi) in enumerate(self.per_dim):
            if not lo < hi:
                raise ValueError(f"dimension {j}: min {lo} must be < max {hi}")

    @classmethod
    def uniform(cls, low: float, high: float, dim: int) -> "NormalizationBounds":
        """Same (low, high) range for every one of ``dim`` dimensions."""
        return cls(tuple((low, high) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.per_dim)

    def normalize(self, attrs: Sequence[float]) -> tuple[float, ...]:
        """Affine map of each attribute into [0, 1]; order-preserving per dimension."""
        if len(attrs) != len(self.per_dim):
            raise ValueError(
                f"dimension mismatch: {len(attrs)} attrs vs {len(self.per_dim)} bounds"
            )
        out = []
        for j, (x, (lo, hi)) in enumerate(zip(attrs, self.per_dim)):
            if not lo <= x <= hi:
                raise OutOfBoundsError(j, x, lo, hi)
            out.append((x - lo) / (hi - lo))
        return tuple(out)


@dataclass(frozen=True, slots=True)
class SortedProfile:
    """An item's normalized values sorted ascending, plus its two thresholds."""

    values: tuple[float, ...]
    k: int
    pivot: int

    @property
    def mi_min(self) -> float:
        """Lower prune threshold: the sorted value at the pivot position."""
        return self.values[self.pivot]

    @property
    def mi_max(self) -> float:
        """Upper prune threshold: the sorted value at pivot + (d - k)."""
        return self.values[self.pivot + len(self.values) - self.k]


def build_profile(normalized: Sequence[float], k: int, pivot: int) -> SortedProfile:
    """Sort normalized values ascending and fix the two threshold positions."""
    d = len(normalized)
    if not 1 <= k <= d:
        raise ValueError(f"k must be in [1, {d}], got {k}")
    if not 0 <= pivot <= k - 1:
        raise ValueError(f"pivot must be in [0, {k - 1}], got {pivot}")
    return SortedProfile(tuple(sorted(normalized)), k, pivot)


def can_prune(p: SortedProfile, q: SortedProfile) -> bool:
    """True guarantees q cannot k-dominate p; False guarantees nothing.

    Both profiles must be built with the same k and pivot, otherwise the
    thresholds are not comparable.
    """
    if p.k != q.k or p.pivot != q.pivot:
        raise IndexCorruptionError(
            f"profiles built under different configs: "
            f"(k={p.k}, pivot={p.pivot}) vs (k={q.k}, pivot={q.pivot})"
        )
    return p.mi_max < q.mi_min


class IndexTables:
    """The two ordered tables over current window items.

    ``iter_by_upper_desc`` walks items in non-increasing upper-threshold
    order; ``iter_by_lower_asc`` in non-decreasing lower-threshold order.
    Ties iterate in ascending id order so runs are reproducible.  Insert and
    delete are logarithmic.
    """

    def __init__(self) -> None:
        # keys: (-mi_max, id) and (mi_min, id); ascending iteration of the
        # first list yields descending mi_max with ties broken by id.
        # Engines iterate these lists directly on the hot path; treat them
        # as read-only outside this class.
        self.by_upper_key: SortedList = SortedList()
        self.by_lower_key: SortedList = SortedList()
        self._thresholds: dict[int, tuple[float, float]] = {}

    def __len__(self) -> int:
        return len(self._thresholds)

    def __contains__(self, item_id: int) -> bool:
        return item_id in self._thresholds

    def ids(self) -> set[int]:
        return set(self._thresholds)

    def insert(self, item_id: int, profile: SortedProfile) -> None:
        if item_id in self._thresholds:
            raise IndexCorruptionError(f"id {item_id} already indexed")
        lo, hi = profile.mi_min, profile.mi_max
        self._thresholds[item_id] = (lo, hi)
        self.by_upper_key.add((-hi, item_id))
        self.by_lower_key.add((lo, item_id))

    def remove(self, item_id: int) -> None:
        if item_id not in self._thresholds:
            raise IndexCorruptionError(f"id {item_id} not indexed")
        lo, hi = self._thresholds.pop(item_id)
        self.by_upper_key.remove((-hi, item_id))
        self.by_lower_key.remove((lo, item_id))

    def iter_by_upper_desc(self) -> Iterator[tuple[int, float]]:
        """(id, mi_max) pairs, mi_max non-increasing."""
        for neg_hi, item_id in self.by_upper_key:
            yield item_id, -neg_hi

    def iter_by_lower_asc(self) -> Iterator[tuple[int, float]]:
        """(id, mi_min) pairs, mi_min non-decreasing."""
        for lo, item_id in self.by_lower_key:
            yield item_id, lo

"""Count-based FIFO sliding window and the per-item probability ledger.

Each window item carries the probability that it belongs to the k-dominant
skyline: its own occurrence probability times the product of (1 - P(u')) over
every current window item u' that k-dominates it.  The product is stored in
decomposed form -- a count of exact-zero factors (dominators with P = 1) plus
a log-domain sum of the remaining factors -- so that removing a dominator on
eviction is exact and never divides by zero, and drift stays bounded over
long streams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Protocol

from .core import UncertainItem


class LedgerCorruptionError(RuntimeError):
    """Internal inconsistency: a dominator was removed that was never added."""


@dataclass(slots=True)
class SkylineLedgerEntry:
    """Probability state for one window item.

    ``zero_factor_count`` counts current dominators with P(u') = 1;
    ``nonzero_log_product`` is the sum of ln(1 - P(u')) over the rest.
    """

    item: UncertainItem
    zero_factor_count: int = 0
    nonzero_log_product: float = 0.0

    @property
    def probability(self) -> float:
        """Current skyline-membership probability, always in [0, item.prob]."""
        if self.zero_factor_count > 0:
            return 0.0
        if self.nonzero_log_product >= 0.0:
            # guards against tiny positive drift after add/remove churn
            return self.item.prob
        return self.item.prob * math.exp(self.nonzero_log_product)

    def add_dominator(self, dominator_prob: float) -> None:
        """Fold in a new dominator: multiplies the exposed probability by (1 - p)."""
        if not 0.0 < dominator_prob <= 1.0:
            raise ValueError(f"dominator probability must be in (0, 1], got {dominator_prob}")
        if dominator_prob == 1.0:
            self.zero_factor_count += 1
        else:
            self.nonzero_log_product += math.log1p(-dominator_prob)

    def remove_dominator(self, dominator_prob: float) -> None:
        """Inverse of :meth:`add_dominator`, used when a dominator is evicted."""
        if not 0.0 < dominator_prob <= 1.0:
            raise ValueError(f"dominator probability must be in (0, 1], got {dominator_prob}")
        if dominator_prob == 1.0:
            if self.zero_factor_count == 0:
                raise LedgerCorruptionError(
                    "removed a certain dominator more times than it was added"
                )
            self.zero_factor_count -= 1
        else:
            self.nonzero_log_product -= math.log1p(-dominator_prob)


@dataclass(frozen=True, slots=True)
class WindowSnapshot:
    """Immutable view of the window after one event: id -> (item, probability)."""

    by_id: dict[int, tuple[UncertainItem, float]]

    def probability(self, item_id: int) -> float:
        return self.by_id[item_id][1]

    def probabilities(self) -> dict[int, float]:
        return {i: p for i, (_, p) in self.by_id.items()}

    def __len__(self) -> int:
        return len(self.by_id)

    def __contains__(self, item_id: int) -> bool:
        return item_id in self.by_id

    def __iter__(self) -> Iterator[int]:
        return iter(self.by_id)


class EngineHooks(Protocol):
    """Probability-update callbacks an engine supplies to the window.

    ``on_evict`` must undo the evicted item's factor on every remaining entry
    it k-dominates.  ``on_insert`` must apply the new item's factor to every
    remaining entry it k-dominates and fill in the new entry's own
    probability; it runs before the new entry joins the window.
    """

    def on_evict(self, old: UncertainItem) -> None: ...

    def on_insert(self, entry: SkylineLedgerEntry) -> None: ...


@dataclass(slots=True)
class SlidingWindow:
    """FIFO window of at most ``capacity`` ledger entries, ordered by arrival."""

    capacity: int
    _entries: dict[int, SkylineLedgerEntry] = field(default_factory=dict)
    _last_id: int | None = None

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {self.capacity}")

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, item_id: int) -> bool:
        return item_id in self._entries

    def entries(self) -> Iterator[SkylineLedgerEntry]:
        """Entries in arrival order."""
        return iter(self._entries.values())

    def get(self, item_id: int) -> SkylineLedgerEntry:
        return self._entries[item_id]

    @property
    def entry_map(self) -> dict[int, SkylineLedgerEntry]:
        """Live id -> entry mapping, arrival-ordered; read-only for callers."""
        return self._entries

    def ids(self) -> list[int]:
        return list(self._entries)

    def push(
        self, new_entry: SkylineLedgerEntry, hooks: EngineHooks
    ) -> tuple[UncertainItem | None, WindowSnapshot]:
        """Admit one entry, evicting the oldest first when full.

        Eviction (and its ``on_evict`` update pass) completes before
        ``on_insert`` runs, so the new item's probability never sees the
        evicted item and vice versa.
        """
        new_id = new_entry.item.id
        if self._last_id is not None and new_id <= self._last_id:
            raise ValueError(f"non-monotone item id: {new_id} after {self._last_id}")

        evicted: UncertainItem | None = None
        if len(self._entries) >= self.capacity:
            oldest_id = next(iter(self._entries))
            evicted = self._entries.pop(oldest_id).item
            hooks.on_evict(evicted)

        hooks.on_insert(new_entry)
        self._entries[new_id] = new_entry
        self._last_id = new_id
        return evicted, self.snapshot()

    def snapshot(self) -> WindowSnapshot:
        return WindowSnapshot(
            {i: (e.item, e.probability) for i, e in self._entries.items()}
        )

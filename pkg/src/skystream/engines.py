"""The two interchangeable stream engines.

``NaiveEngine`` maintains the window ledger with full scans on every event;
it is the correctness oracle and the timing baseline.  ``IndexedEngine``
maintains the same ledger through the sorted threshold tables, cutting each
scan short as soon as the prune guarantee covers the rest of the table.
Both produce identical snapshots (within float tolerance) on any stream.

Exact dominance tests always run on the raw, unnormalized attributes:
normalization is order-preserving per dimension, so either representation is
valid, and raw attributes keep the two engines' arithmetic identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .core import UncertainItem, _k_dom_attrs
from .index import IndexTables, NormalizationBounds, SortedProfile, build_profile
from .ledger import SkylineLedgerEntry, SlidingWindow, WindowSnapshot


class ConfigError(ValueError):
    """Invalid engine or run configuration."""


@dataclass(frozen=True, slots=True)
class EngineConfig:
    """Shared run parameters for both engines.

    ``pivot`` defaults to the middle admissible position, (k - 1) // 2; any
    value in [0, k - 1] yields the same probabilities, only pruning power
    varies.  ``recompute_interval`` (events) rebuilds every ledger from a
    fresh full scan, for verification runs; disabled by default.
    ``instrument`` additionally collects per-event wall-clock timings;
    ``debug_checks`` turns on per-event structural assertions.
    """

    d: int
    k: int
    capacity: int
    bounds: NormalizationBounds
    pivot: int | None = None
    recompute_interval: int | None = None
    instrument: bool = False
    debug_checks: bool = False

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ConfigError(f"dimensionality must be >= 1, got {self.d}")
        if not 1 <= self.k <= self.d:
            raise ConfigError(f"k must be in [1, {self.d}], got {self.k}")
        if self.capacity < 1:
            raise ConfigError(f"window capacity must be >= 1, got {self.capacity}")
        if self.bounds.dim != self.d:
            raise ConfigError(f"bounds cover {self.bounds.dim} dims, config says {self.d}")
        if self.pivot is None:
            object.__setattr__(self, "pivot", (self.k - 1) // 2)
        if not 0 <= self.pivot <= self.k - 1:
            raise ConfigError(f"pivot must be in [0, {self.k - 1}], got {self.pivot}")
        if self.recompute_interval is not None and self.recompute_interval < 1:
            raise ConfigError("recompute interval must be >= 1 or None")


@dataclass(slots=True)
class EngineStats:
    """Counters accumulated across all events pushed so far."""

    events: int = 0
    dominance_tests: int = 0
    pruned: int = 0
    event_times: list[float] = field(default_factory=list)


class _EngineBase:
    """Window ownership, validation, instrumentation, periodic recompute."""

    def __init__(self, config: EngineConfig):
        self.config = config
        self.window = SlidingWindow(config.capacity)
        self.stats = EngineStats()

    def push(self, item: UncertainItem) -> WindowSnapshot:
        """Process one arrival and return the resulting window state."""
        if item.dim != self.config.d:
            raise ValueError(f"item has {item.dim} attrs, config says {self.config.d}")
        t0 = time.perf_counter() if self.config.instrument else 0.0
        snapshot = self._push(item)
        self.stats.events += 1
        interval = self.config.recompute_interval
        if interval is not None and self.stats.events % interval == 0:
            self._recompute_all()
            snapshot = self.window.snapshot()
        if self.config.instrument:
            self.stats.event_times.append(time.perf_counter() - t0)
        if self.config.debug_checks:
            self._debug_validate()
        return snapshot

    def _push(self, item: UncertainItem) -> WindowSnapshot:
        raise NotImplementedError

    def _recompute_all(self) -> None:
        """Rebuild every entry's factor decomposition from a fresh full scan."""
        k = self.config.k
        entries = list(self.window.entries())
        for entry in entries:
            zero = 0
            log_sum = 0.0
            b = entry.item.attrs
            for other in entries:
                if other.item.id != entry.item.id and _k_dom_attrs(other.item.attrs, b, k):
                    p = other.item.prob
                    if p == 1.0:
                        zero += 1
                    else:
                        log_sum += math.log1p(-p)
            entry.zero_factor_count = zero
            entry.nonzero_log_product = log_sum

    def _debug_validate(self) -> None:
        pass


class NaiveEngine(_EngineBase):
    """Full-scan baseline: every event compares against the whole window."""

    def _push(self, item: UncertainItem) -> WindowSnapshot:
        self.config.bounds.normalize(item.attrs)  # bounds conformance only
        _, snapshot = self.window.push(SkylineLedgerEntry(item), hooks=self)
        return snapshot

    def on_evict(self, old: UncertainItem) -> None:
        k = self.config.k
        a = old.attrs
        p = old.prob
        tests = 0
        for entry in self.window.entries():
            tests += 1
            if _k_dom_attrs(a, entry.item.attrs, k):
                entry.remove_dominator(p)
        self.stats.dominance_tests += tests

    def on_insert(self, entry: SkylineLedgerEntry) -> None:
        k = self.config.k
        new = entry.item
        a = new.attrs
        p = new.prob
        tests = 0
        for e in self.window.entries():
            tests += 1
            if _k_dom_attrs(a, e.item.attrs, k):
                e.add_dominator(p)
        for e in self.window.entries():
            tests += 1
            if _k_dom_attrs(e.item.attrs, a, k):
                entry.add_dominator(e.item.prob)
        self.stats.dominance_tests += tests


class IndexedEngine(_EngineBase):
    """Threshold-pruned engine: scans stop where the prune guarantee takes over.

    All three update passes walk an ordered table and break at the first
    entry the threshold test clears; because the table is sorted, the same
    test clears every later entry, so the skipped suffix provably needs no
    dominance check.
    """

    def __init__(self, config: EngineConfig):
        super().__init__(config)
        self.tables = IndexTables()
        self._profiles: dict[int, SortedProfile] = {}
        self._pending_profile: SortedProfile | None = None

    def _push(self, item: UncertainItem) -> WindowSnapshot:
        normalized = self.config.bounds.normalize(item.attrs)
        profile = build_profile(normalized, self.config.k, self.config.pivot)
        self._pending_profile = profile
        _, snapshot = self.window.push(SkylineLedgerEntry(item), hooks=self)
        return snapshot

    def on_evict(self, old: UncertainItem) -> None:
        # drop the evicted item's index entries first so it never meets itself
        self.tables.remove(old.id)
        old_profile = self._profiles.pop(old.id)
        self._update_existing(
            old.attrs, old.prob, old_profile.mi_min, removing=True
        )

    def on_insert(self, entry: SkylineLedgerEntry) -> None:
        profile = self._pending_profile
        new = entry.item
        self._update_existing(new.attrs, new.prob, profile.mi_min, removing=False)
        self._score_new(entry, profile.mi_max)
        self.tables.insert(new.id, profile)
        self._profiles[new.id] = profile

    def _update_existing(
        self, attrs: tuple[float, ...], prob: float, mi_min: float, removing: bool
    ) -> None:
        """One pass of the remaining-items update (factor removal on eviction,
        factor application on insertion), over the upper-threshold table."""
        k = self.config.k
        entries = self.window.entry_map
        kdom = _k_dom_attrs
        neg_mi_min = -mi_min  # table keys store negated uppers
        tests = 0
        scanned = 0
        for neg_upper, item_id in self.tables.by_upper_key:
            if neg_upper > neg_mi_min:  # mi_min > upper: rest of table prunable
                break
            scanned += 1
            e = entries[item_id]
            tests += 1
            if kdom(attrs, e.item.attrs, k):
                if removing:
                    e.remove_dominator(prob)
                else:
                    e.add_dominator(prob)
        skipped = len(self.tables) - scanned
        self.stats.dominance_tests += tests
        self.stats.pruned += skipped
        if self.config.debug_checks and skipped:
            self._assert_skip_sound(mi_min, scanned)

    def _score_new(self, entry: SkylineLedgerEntry, mi_max: float) -> None:
        """Compute the new item's own probability over the lower-threshold table."""
        k = self.config.k
        entries = self.window.entry_map
        kdom = _k_dom_attrs
        attrs = entry.item.attrs
        tests = 0
        scanned = 0
        for lower, item_id in self.tables.by_lower_key:
            if mi_max < lower:  # rest of table prunable
                break
            scanned += 1
            e = entries[item_id]
            tests += 1
            if kdom(e.item.attrs, attrs, k):
                entry.add_dominator(e.item.prob)
        skipped = len(self.tables) - scanned
        self.stats.dominance_tests += tests
        self.stats.pruned += skipped
        if self.config.debug_checks and skipped:
            for lower, _ in self.tables.by_lower_key[scanned:]:
                if not mi_max < lower:
                    raise AssertionError(
                        "pruned an entry the threshold test does not cover"
                    )

    def _assert_skip_sound(self, mi_min: float, scanned: int) -> None:
        # every skipped table suffix entry must satisfy the prune premise
        for pos, (_, upper) in enumerate(self.tables.iter_by_upper_desc()):
            if pos >= scanned and not mi_min > upper:
                raise AssertionError("pruned an entry the threshold test does not cover")

    def _debug_validate(self) -> None:
        window_ids = set(self.window.ids())
        if self.tables.ids() != window_ids or set(self._profiles) != window_ids:
            raise AssertionError("index tables out of sync with window membership")

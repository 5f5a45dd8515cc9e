import random

import pytest
from hypothesis import given, settings, strategies as st

from skystream import (
    ConfigError,
    EngineConfig,
    GeneratorSpec,
    IndexedEngine,
    NaiveEngine,
    NormalizationBounds,
    OutOfBoundsError,
    UncertainItem,
    generate,
)
from skystream.cli import run_verify

from conftest import brute_force_probability


def unit_bounds(d):
    return NormalizationBounds.uniform(0.0, 1.0, d)


def config(d=4, k=3, capacity=5, bounds=None, **kw):
    return EngineConfig(d=d, k=k, capacity=capacity, bounds=bounds or unit_bounds(d), **kw)


class TestEngineConfig:
    def test_default_pivot_is_middle_position(self):
        assert config(d=12, k=11).pivot == 5
        assert config(d=4, k=1).pivot == 0

    @pytest.mark.parametrize(
        "kw",
        [
            {"d": 4, "k": 0},
            {"d": 4, "k": 5},
            {"d": 0, "k": 1},
            {"d": 4, "k": 3, "capacity": 0},
            {"d": 4, "k": 3, "pivot": 3},
            {"d": 4, "k": 3, "pivot": -1},
            {"d": 4, "k": 3, "recompute_interval": 0},
        ],
    )
    def test_invalid_configs_rejected(self, kw):
        kw.setdefault("capacity", 5)
        with pytest.raises(ConfigError):
            EngineConfig(bounds=unit_bounds(kw["d"] or 1), **kw)

    def test_bounds_dimension_must_match(self):
        with pytest.raises(ConfigError):
            EngineConfig(d=3, k=2, capacity=5, bounds=unit_bounds(4))


class TestNaiveEngine:
    def test_first_item_keeps_its_own_probability(self):
        engine = NaiveEngine(config())
        snapshot = engine.push(UncertainItem(0, (0.5, 0.5, 0.5, 0.5), 0.3))
        assert snapshot.probability(0) == 0.3

    def test_table1_final_probabilities(self, table1, table1_bounds):
        engine = NaiveEngine(config(d=4, k=3, capacity=5, bounds=table1_bounds))
        for item in table1:
            snapshot = engine.push(item)
        # direct brute-force values over the full example set
        assert snapshot.probability(1) == pytest.approx(0.0288, abs=1e-12)
        assert snapshot.probability(2) == pytest.approx(0.5, abs=1e-12)
        for item in table1:
            assert snapshot.probability(item.id) == pytest.approx(
                brute_force_probability(item, table1, 3), abs=1e-12
            )

    def test_rejects_wrong_dimensionality(self):
        engine = NaiveEngine(config())
        with pytest.raises(ValueError):
            engine.push(UncertainItem(0, (0.5, 0.5), 0.3))

    def test_rejects_out_of_bounds_item(self):
        engine = NaiveEngine(config())
        with pytest.raises(OutOfBoundsError):
            engine.push(UncertainItem(0, (0.5, 1.5, 0.5, 0.5), 0.3))


class TestIndexedEngine:
    def test_table1_matches_naive(self, table1, table1_bounds):
        cfg = config(d=4, k=3, capacity=5, bounds=table1_bounds)
        engine = IndexedEngine(cfg)
        for item in table1:
            snapshot = engine.push(item)
        assert snapshot.probability(1) == pytest.approx(0.0288, abs=1e-12)
        assert snapshot.probability(2) == pytest.approx(0.5, abs=1e-12)

    def test_immediate_break_leaves_stored_probabilities_alone(self):
        # each arrival sits strictly above everything stored, so the
        # remaining-items pass prunes the whole table every time
        cfg = config(d=3, k=2, capacity=10)
        engine = IndexedEngine(cfg)
        seen = {}
        for i, level in enumerate([0.1, 0.3, 0.5, 0.7, 0.9]):
            snapshot = engine.push(UncertainItem(i, (level, level, level), 0.5))
            for item_id, prob in seen.items():
                assert snapshot.probability(item_id) == prob
            seen = snapshot.probabilities()

    def test_update_pass_prunes_fully_on_rising_stream(self):
        cfg = config(d=3, k=2, capacity=10)
        engine = IndexedEngine(cfg)
        engine.push(UncertainItem(0, (0.1, 0.1, 0.1), 0.5))
        tests_before = engine.stats.dominance_tests
        engine.push(UncertainItem(1, (0.9, 0.9, 0.9), 0.5))
        # the remaining-items pass pruned its single entry; only the
        # new item's own scoring pass compared against it
        assert engine.stats.dominance_tests == tests_before + 1
        assert engine.stats.pruned >= 1

    def test_single_dominator_scales_new_item(self):
        cfg = config(d=3, k=2, capacity=10)
        engine = IndexedEngine(cfg)
        engine.push(UncertainItem(0, (0.1, 0.1, 0.1), 0.5))
        snapshot = engine.push(UncertainItem(1, (0.9, 0.9, 0.9), 0.4))
        assert snapshot.probability(1) == pytest.approx(0.2, abs=1e-12)

    def test_obviously_best_arrival_is_scored_without_tests(self):
        cfg = config(d=3, k=2, capacity=10)
        engine = IndexedEngine(cfg)
        engine.push(UncertainItem(0, (0.9, 0.9, 0.9), 0.5))
        tests_before = engine.stats.dominance_tests
        pruned_before = engine.stats.pruned
        snapshot = engine.push(UncertainItem(1, (0.1, 0.1, 0.1), 0.4))
        # the update pass tests the stored entry once; the scoring pass
        # breaks immediately because nothing can dominate the new floor
        assert engine.stats.dominance_tests == tests_before + 1
        assert engine.stats.pruned == pruned_before + 1
        assert snapshot.probability(1) == 0.4

    def test_all_minimal_item_hits_every_improvable_entry(self):
        cfg = config(d=3, k=2, capacity=10)
        engine = IndexedEngine(cfg)
        engine.push(UncertainItem(0, (0.4, 0.6, 0.2), 1.0))
        engine.push(UncertainItem(1, (0.0, 0.0, 0.0), 0.5))  # duplicate-free floor
        snapshot = engine.push(UncertainItem(2, (0.0, 0.0, 0.0), 0.25))
        # item 0 is strictly worse somewhere: both floors apply
        assert snapshot.probability(0) == pytest.approx(1.0 * 0.5 * 0.75, abs=1e-12)
        # item 1 ties item 2 everywhere: no dominance either way
        assert snapshot.probability(1) == pytest.approx(0.5, abs=1e-12)

    def test_eviction_completes_before_new_item_is_scored(self):
        # full window; the evicted floor item dominates the new arrival's
        # dominators but must not contribute a factor to the new item
        cfg = config(d=2, k=2, capacity=2)
        engine = IndexedEngine(cfg)
        engine.push(UncertainItem(0, (0.0, 0.0), 0.5))  # will be evicted
        engine.push(UncertainItem(1, (0.4, 0.4), 0.5))
        snapshot = engine.push(UncertainItem(2, (0.6, 0.6), 0.5))
        assert set(snapshot.by_id) == {1, 2}
        # only item 1 dominates item 2 now; item 0 is gone before scoring
        assert snapshot.probability(2) == pytest.approx(0.5 * 0.5, abs=1e-12)
        # item 1's ledger dropped item 0's factor again
        assert snapshot.probability(1) == pytest.approx(0.5, abs=1e-12)

    def test_debug_checks_hold_on_random_stream(self):
        spec = GeneratorSpec("independent", d=5, count=400, seed=11)
        cfg = EngineConfig(
            d=5, k=3, capacity=20, bounds=spec.bounds(), debug_checks=True
        )
        engine = IndexedEngine(cfg)
        for item in generate(spec):
            engine.push(item)
        assert engine.stats.pruned > 0


class TestEngineEquivalence:
    """Both engines must emit the same snapshot stream on any input."""

    @given(
        seed=st.integers(0, 100_000),
        d=st.integers(2, 7),
        k_frac=st.floats(0.0, 1.0),
        pivot_frac=st.floats(0.0, 1.0),
        capacity=st.integers(1, 25),
    )
    @settings(max_examples=40, deadline=None)
    def test_random_streams_match(self, seed, d, k_frac, pivot_frac, capacity):
        k = 1 + round(k_frac * (d - 1))
        pivot = round(pivot_frac * (k - 1))
        rng = random.Random(seed)
        items = []
        for i in range(80):
            attrs = tuple(
                rng.choice([0.0, 0.25, 0.5, 0.75, 1.0, rng.random()]) for _ in range(d)
            )
            prob = 1.0 if rng.random() < 0.08 else rng.uniform(0.05, 1.0)
            items.append(UncertainItem(i, attrs, prob))
        cfg = EngineConfig(
            d=d, k=k, capacity=capacity, bounds=unit_bounds(d), pivot=pivot
        )
        result = run_verify(cfg, items)
        assert result.passed, result

    def test_indexed_never_tests_more_pairs(self):
        spec = GeneratorSpec("independent", d=6, count=500, seed=3)
        cfg = EngineConfig(d=6, k=5, capacity=30, bounds=spec.bounds())
        naive, indexed = NaiveEngine(cfg), IndexedEngine(cfg)
        for item in generate(spec):
            naive.push(item)
            indexed.push(item)
            assert indexed.stats.dominance_tests <= naive.stats.dominance_tests

    def test_pivot_choice_never_changes_probabilities(self):
        spec = GeneratorSpec("independent", d=5, count=300, seed=5)
        items = generate(spec)
        snapshots = []
        for pivot in (0, 1, 2):
            cfg = EngineConfig(
                d=5, k=3, capacity=15, bounds=spec.bounds(), pivot=pivot
            )
            engine = IndexedEngine(cfg)
            snapshots.append([engine.push(item).probabilities() for item in items])
        reference = snapshots[0]
        for other in snapshots[1:]:
            for snap_a, snap_b in zip(reference, other):
                assert snap_a.keys() == snap_b.keys()
                for item_id in snap_a:
                    assert snap_a[item_id] == pytest.approx(snap_b[item_id], abs=1e-9)


class TestPeriodicRecompute:
    def test_interval_one_matches_incremental(self):
        spec = GeneratorSpec("independent", d=4, count=200, seed=9)
        items = generate(spec)
        plain = NaiveEngine(EngineConfig(d=4, k=3, capacity=12, bounds=spec.bounds()))
        refreshed = NaiveEngine(
            EngineConfig(
                d=4, k=3, capacity=12, bounds=spec.bounds(), recompute_interval=1
            )
        )
        for item in items:
            snap_a = plain.push(item)
            snap_b = refreshed.push(item)
            for item_id in snap_a:
                assert snap_a.probability(item_id) == pytest.approx(
                    snap_b.probability(item_id), abs=1e-12
                )

    def test_recompute_applies_to_indexed_engine_too(self):
        spec = GeneratorSpec("independent", d=4, count=150, seed=10)
        cfg = EngineConfig(
            d=4, k=2, capacity=10, bounds=spec.bounds(), recompute_interval=25
        )
        engine = IndexedEngine(cfg)
        baseline = IndexedEngine(EngineConfig(d=4, k=2, capacity=10, bounds=spec.bounds()))
        for item in generate(spec):
            snap_a = engine.push(item)
            snap_b = baseline.push(item)
            for item_id in snap_a:
                assert snap_a.probability(item_id) == pytest.approx(
                    snap_b.probability(item_id), abs=1e-9
                )


class TestInstrumentation:
    def test_event_times_collected_only_when_enabled(self):
        spec = GeneratorSpec("independent", d=3, count=20, seed=2)
        items = generate(spec)
        silent = NaiveEngine(EngineConfig(d=3, k=2, capacity=5, bounds=spec.bounds()))
        timed = NaiveEngine(
            EngineConfig(d=3, k=2, capacity=5, bounds=spec.bounds(), instrument=True)
        )
        for item in items:
            silent.push(item)
            timed.push(item)
        assert silent.stats.event_times == []
        assert len(timed.stats.event_times) == len(items)
        assert silent.stats.events == timed.stats.events == len(items)

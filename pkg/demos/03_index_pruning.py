"""How the sorted-threshold index turns most comparisons into table breaks.

Each item's normalized values are sorted ascending and two positions are
read off as thresholds.  When one item's upper threshold sits strictly below
another's lower threshold, the second provably cannot k-dominate the first,
so an engine walking a table ordered by those thresholds can stop at the
first shielded entry.
"""

from skystream import (
    EngineConfig,
    GeneratorSpec,
    IndexedEngine,
    NaiveEngine,
    build_profile,
    can_prune,
    generate,
)

# the shield in isolation
p = build_profile((0.0, 0.33, 0.55), k=2, pivot=1)
q = build_profile((0.0, 1.00, 1.00), k=2, pivot=1)
print(f"profile p: values {p.values}, thresholds [{p.mi_min}, {p.mi_max}]")
print(f"profile q: values {q.values}, thresholds [{q.mi_min}, {q.mi_max}]")
print(f"p.upper < q.lower -> q can never 2-dominate p: {can_prune(p, q)}")
print()

# the shield at stream scale
spec = GeneratorSpec("independent", d=12, count=5_000, seed=7)
config = EngineConfig(d=12, k=11, capacity=300, bounds=spec.bounds())
items = generate(spec)

for name, cls in (("full-scan", NaiveEngine), ("indexed", IndexedEngine)):
    engine = cls(config)
    for item in items:
        engine.push(item)
    print(
        f"{name:9} engine: {engine.stats.dominance_tests:,} dominance tests, "
        f"{engine.stats.pruned:,} comparisons pruned"
    )

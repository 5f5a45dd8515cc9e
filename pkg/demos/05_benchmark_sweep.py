"""A miniature parameter sweep: computation time as k and the window grow.

Larger k strengthens both the prune thresholds and the dominance test's
early exit, so time falls as k approaches d.  A larger window simply means
more live items to compare against, so time rises with capacity.  (The full
benchmark grid lives behind the CLI: see README.)
"""

from skystream import EngineConfig, GeneratorSpec, generate
from skystream.cli import run_single

D, COUNT = 12, 3_000
spec = GeneratorSpec("independent", d=D, count=COUNT, seed=21)
items = generate(spec)


def bench(k, capacity):
    config = EngineConfig(d=D, k=k, capacity=capacity, bounds=spec.bounds())
    engine, total = run_single(config, "mi", items)
    return total, engine.stats.dominance_tests


print(f"{COUNT:,} events, window 150, sweeping k:")
for k in (7, 9, 11):
    total, tests = bench(k, 150)
    print(f"  k={k:2}  {total:6.2f}s  {tests:,} dominance tests")

print(f"\n{COUNT:,} events, k=11, sweeping window capacity:")
for capacity in (100, 200, 300):
    total, tests = bench(11, capacity)
    print(f"  n={capacity:3}  {total:6.2f}s  {tests:,} dominance tests")

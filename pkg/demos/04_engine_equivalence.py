"""Lockstep verification: the indexed engine must be observationally
identical to the full-scan engine on every event of any stream.

This is the harness the CLI exposes as --verify; here it runs in-process on
a seeded stream and reports the largest per-event probability difference.
"""

from skystream import EngineConfig, GeneratorSpec, generate
from skystream.cli import run_verify

spec = GeneratorSpec("anticorrelated", d=8, count=2_000, seed=13)
config = EngineConfig(d=8, k=6, capacity=100, bounds=spec.bounds())

result = run_verify(config, generate(spec))
print(f"events compared : {result.events}")
print(f"verdict         : {'PASS' if result.passed else 'FAIL'}")
print(f"max |difference|: {result.max_abs_delta:.3e}")

if not result.passed:
    print(
        f"first divergence at event {result.first_divergence_event}, "
        f"item {result.first_divergence_item}: "
        f"{result.naive_value} vs {result.mi_value}"
    )

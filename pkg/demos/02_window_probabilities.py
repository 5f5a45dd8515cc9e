"""Skyline-membership probabilities evolving over a sliding window.

Each window item carries P(item) x prod(1 - P(dominator)) over its current
k-dominators.  Watch the probabilities change as arrivals push old items
out: when a dominator expires, its victims' probabilities recover.
"""

from skystream import EngineConfig, NaiveEngine, NormalizationBounds, UncertainItem

items = [
    UncertainItem(0, (10, 3, 4, 6), 0.2),
    UncertainItem(1, (9, 8, 5, 9), 0.4),
    UncertainItem(2, (2, 10, 4, 4), 0.5),
    UncertainItem(3, (5, 2, 3, 8), 0.1),
    UncertainItem(4, (7, 6, 4, 6), 0.8),
]

config = EngineConfig(
    d=4, k=3, capacity=3, bounds=NormalizationBounds.uniform(0, 10, 4)
)
engine = NaiveEngine(config)

print(f"capacity {config.capacity}, k = {config.k}")
for item in items:
    snapshot = engine.push(item)
    cells = ", ".join(
        f"u{i + 1}: {p:.4f}" for i, p in sorted(snapshot.probabilities().items())
    )
    print(f"after u{item.id + 1} arrives   {{{cells}}}")

print()
print("u2 spends its window life heavily dominated; u3 is never challenged.")

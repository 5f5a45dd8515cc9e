"""Streaming k-dominant skyline probabilities over uncertain data.

Maintains, for every item in a count-based sliding window, the probability
that it belongs to the k-dominant skyline, and keeps those probabilities
current as items arrive and expire.  Two interchangeable engines are
provided: a full-scan baseline and a sorted-threshold-index engine that
prunes provably irrelevant comparisons.
"""

from .core import (
    DominanceCount,
    UncertainItem,
    dominance_counts,
    dominates,
    k_dominant_skyline,
    k_dominates,
)
from .engines import ConfigError, EngineConfig, EngineStats, IndexedEngine, NaiveEngine
from .index import (
    IndexCorruptionError,
    IndexTables,
    NormalizationBounds,
    OutOfBoundsError,
    SortedProfile,
    build_profile,
    can_prune,
)
from .ledger import (
    LedgerCorruptionError,
    SkylineLedgerEntry,
    SlidingWindow,
    WindowSnapshot,
)
from .streamgen import GeneratorSpec, StreamFormatError, generate, load_stream

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DominanceCount",
    "EngineConfig",
    "EngineStats",
    "GeneratorSpec",
    "IndexCorruptionError",
    "IndexTables",
    "IndexedEngine",
    "LedgerCorruptionError",
    "NaiveEngine",
    "NormalizationBounds",
    "OutOfBoundsError",
    "SkylineLedgerEntry",
    "SlidingWindow",
    "SortedProfile",
    "StreamFormatError",
    "UncertainItem",
    "WindowSnapshot",
    "build_profile",
    "can_prune",
    "dominance_counts",
    "dominates",
    "generate",
    "k_dominant_skyline",
    "k_dominates",
    "load_stream",
]

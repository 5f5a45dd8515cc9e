"""Deterministic synthetic streams and CSV ingestion.

The three distribution families follow standard skyline-benchmark practice:
independent draws each dimension uniformly; correlated draws dimensions
around a shared per-item level, so good items tend to be good everywhere;
anti-correlated spreads each item around a near-constant dimension sum, so a
win in one dimension is paid for in the others.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass

from .core import UncertainItem
from .index import NormalizationBounds

DISTRIBUTIONS = ("independent", "correlated", "anticorrelated")


class StreamFormatError(ValueError):
    """A stream file could not be ingested; ``row`` is the offending line."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message if row is None else f"row {row}: {message}")


def _parse_prob_model(prob_model: str) -> float | None:
    """Return the fixed probability, or None for the uniform (0, 1] model."""
    if prob_model == "uniform":
        return None
    if prob_model.startswith("fixed:"):
        try:
            p = float(prob_model.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad fixed probability in {prob_model!r}") from None
        if not 0.0 < p <= 1.0:
            raise ValueError(f"fixed probability must be in (0, 1], got {p}")
        return p
    raise ValueError(f"unknown probability model {prob_model!r}")


@dataclass(frozen=True, slots=True)
class GeneratorSpec:
    """Everything needed to regenerate a stream byte-for-byte.

    ``value_range`` is either one (min, max) pair applied to all dimensions
    or a sequence of per-dimension pairs.  ``prob_model`` is ``"uniform"``
    (occurrence probabilities uniform on (0, 1]) or ``"fixed:<p>"``.
    """

    distribution: str
    d: int
    count: int
    seed: int
    value_range: tuple = (0.0, 1.0)
    prob_model: str = "uniform"

    def __post_init__(self) -> None:
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}"
            )
        if self.d < 1:
            raise ValueError(f"dimensionality must be >= 1, got {self.d}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        _parse_prob_model(self.prob_model)  # validates
        self.bounds()  # validates ranges

    def bounds(self) -> NormalizationBounds:
        """The declared bounds implied by ``value_range``."""
        vr = self.value_range
        if len(vr) == 2 and not isinstance(vr[0], (tuple, list)):
            return NormalizationBounds.uniform(float(vr[0]), float(vr[1]), self.d)
        pairs = tuple((float(lo), float(hi)) for lo, hi in vr)
        if len(pairs) != self.d:
            raise ValueError(f"{len(pairs)} ranges given for {self.d} dimensions")
        return NormalizationBounds(pairs)


def generate(spec: GeneratorSpec) -> list[UncertainItem]:
    """Produce exactly ``spec.count`` items, fully determined by ``spec.seed``."""
    rng = random.Random(spec.seed)
    bounds = spec.bounds()
    fixed_prob = _parse_prob_model(spec.prob_model)
    d = spec.d

    items = []
    for i in range(spec.count):
        if spec.distribution == "independent":
            unit = [rng.random() for _ in range(d)]
        elif spec.distribution == "correlated":
            # shared per-item level plus small independent jitter
            base = rng.random()
            unit = [min(1.0, max(0.0, base + (rng.random() - 0.5) * 0.4)) for _ in range(d)]
        else:  # anticorrelated
            # spread around a near-constant dimension sum: raising one
            # dimension lowers the rest
            level = min(1.0, max(0.0, rng.gauss(0.5, 0.03)))
            raw = [rng.random() for _ in range(d)]
            mean = sum(raw) / d
            unit = [min(1.0, max(0.0, level + (x - mean))) for x in raw]

        attrs = tuple(lo + u * (hi - lo) for u, (lo, hi) in zip(unit, bounds.per_dim))
        prob = fixed_prob if fixed_prob is not None else 1.0 - rng.random()
        items.append(UncertainItem(id=i, attrs=attrs, prob=prob))
    return items


def load_stream(
    path: str,
    bounds: NormalizationBounds,
    prob_column: str = "prob",
) -> list[UncertainItem]:
    """Read a CSV stream: header row naming attribute columns plus one
    probability column, one item per line, ids assigned in file order.

    Rows violating the declared bounds or carrying a probability outside
    (0, 1] are rejected with their row number.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise StreamFormatError(f"cannot open {path}: {exc}") from exc

    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise StreamFormatError("missing header row")
        if prob_column not in reader.fieldnames:
            raise StreamFormatError(f"missing probability column {prob_column!r}")
        attr_columns = [c for c in reader.fieldnames if c != prob_column]
        if not attr_columns:
            raise StreamFormatError("no attribute columns in header")
        if len(attr_columns) != bounds.dim:
            raise StreamFormatError(
                f"{len(attr_columns)} attribute columns but bounds cover {bounds.dim} dims"
            )

        items = []
        for i, row in enumerate(reader):
            rownum = i + 2  # header is line 1
            try:
                attrs = tuple(float(row[c]) for c in attr_columns)
                prob = float(row[prob_column])
            except (TypeError, ValueError) as exc:
                raise StreamFormatError(f"unparseable value ({exc})", row=rownum) from exc
            if not 0.0 < prob <= 1.0:
                raise StreamFormatError(
                    f"probability {prob} outside (0, 1]", row=rownum
                )
            for j, (x, (lo, hi)) in enumerate(zip(attrs, bounds.per_dim)):
                if not lo <= x <= hi:
                    raise StreamFormatError(
                        f"attribute {x} outside declared bounds [{lo}, {hi}] "
                        f"in dimension {j}",
                        row=rownum,
                    )
            items.append(UncertainItem(id=i, attrs=attrs, prob=prob))
    return items

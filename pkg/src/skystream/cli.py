"""Command-line harness: verification runs, benchmark runs, parameter sweeps.

Reports are emitted as JSON lines, one object per run plus one per-config
average, each echoing the full configuration so results are self-describing.
Timing covers event processing only; stream generation and parsing happen
before the clock starts.

Exit codes: 0 success/pass, 1 verification mismatch, 2 usage or config
error, 3 ingestion error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass

from .core import UncertainItem
from .engines import ConfigError, EngineConfig, IndexedEngine, NaiveEngine
from .index import NormalizationBounds
from .streamgen import DISTRIBUTIONS, GeneratorSpec, StreamFormatError, generate, load_stream

EXIT_OK = 0
EXIT_VERIFY_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INGESTION = 3

ENGINES = {"mi": IndexedEngine, "naive": NaiveEngine}

VERIFY_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class RunReport:
    """One benchmark measurement (a single run, or the average over runs)."""

    engine: str
    run: str
    d: int
    k: int
    capacity: int
    pivot: int
    seed: int | None
    distribution: str | None
    prob_model: str | None
    items: int
    total_seconds: float
    mean_event_us: float
    median_event_us: float | None
    dominance_tests: float
    prune_count: float
    snapshot_digest: str | None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True, slots=True)
class VerifyResult:
    """Outcome of a lockstep naive-vs-indexed comparison."""

    passed: bool
    events: int
    max_abs_delta: float
    first_divergence_event: int | None = None
    first_divergence_item: int | None = None
    naive_value: float | None = None
    mi_value: float | None = None

    def to_json(self) -> str:
        payload = {"mode": "verify", **asdict(self)}
        return json.dumps(payload, sort_keys=True)


def _snapshot_digest(snapshot) -> str:
    payload = ";".join(
        f"{item_id}:{prob:.12e}" for item_id, prob in sorted(snapshot.probabilities().items())
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def run_single(config: EngineConfig, engine_name: str, items: list[UncertainItem]):
    """Drive one engine over a prepared stream; returns (engine, total_seconds)."""
    engine = ENGINES[engine_name](config)
    push = engine.push
    t0 = time.perf_counter()
    for item in items:
        push(item)
    total = time.perf_counter() - t0
    return engine, total


def run_bench(
    config: EngineConfig,
    engine_name: str,
    spec: GeneratorSpec | None,
    input_items: list[UncertainItem] | None,
    repeat: int,
) -> list[RunReport]:
    """Repeat a run ``repeat`` times and report each plus the average.

    Synthetic runs draw a fresh stream per repetition (seed + run index, each
    echoed in its report); file input replays the same stream every time.
    """
    reports = []
    for r in range(repeat):
        if input_items is not None:
            items, seed = input_items, None
        else:
            seed = spec.seed + r
            items = generate(
                GeneratorSpec(
                    distribution=spec.distribution,
                    d=spec.d,
                    count=spec.count,
                    seed=seed,
                    value_range=spec.value_range,
                    prob_model=spec.prob_model,
                )
            )
        engine, total = run_single(config, engine_name, items)
        times = engine.stats.event_times
        reports.append(
            RunReport(
                engine=engine_name,
                run=str(r),
                d=config.d,
                k=config.k,
                capacity=config.capacity,
                pivot=config.pivot,
                seed=seed,
                distribution=spec.distribution if spec else None,
                prob_model=spec.prob_model if spec else None,
                items=len(items),
                total_seconds=total,
                mean_event_us=statistics.fmean(times) * 1e6 if times else total / len(items) * 1e6,
                median_event_us=statistics.median(times) * 1e6 if times else None,
                dominance_tests=engine.stats.dominance_tests,
                prune_count=engine.stats.pruned,
                snapshot_digest=_snapshot_digest(engine.window.snapshot()),
            )
        )

    avg = RunReport(
        engine=engine_name,
        run="average",
        d=config.d,
        k=config.k,
        capacity=config.capacity,
        pivot=config.pivot,
        seed=spec.seed if spec else None,
        distribution=spec.distribution if spec else None,
        prob_model=spec.prob_model if spec else None,
        items=reports[0].items,
        total_seconds=statistics.fmean(r.total_seconds for r in reports),
        mean_event_us=statistics.fmean(r.mean_event_us for r in reports),
        median_event_us=(
            statistics.fmean(r.median_event_us for r in reports)
            if all(r.median_event_us is not None for r in reports)
            else None
        ),
        dominance_tests=statistics.fmean(r.dominance_tests for r in reports),
        prune_count=statistics.fmean(r.prune_count for r in reports),
        snapshot_digest=None,
    )
    return reports + [avg]


def run_verify(
    config: EngineConfig,
    items: list[UncertainItem],
    tolerance: float = VERIFY_TOLERANCE,
) -> VerifyResult:
    """Run both engines in lockstep and compare every per-event snapshot."""
    naive = NaiveEngine(config)
    indexed = IndexedEngine(config)
    max_delta = 0.0
    for event_index, item in enumerate(items):
        snap_n = naive.push(item)
        snap_m = indexed.push(item)
        if set(snap_n.by_id) != set(snap_m.by_id):
            stray = set(snap_n.by_id) ^ set(snap_m.by_id)
            return VerifyResult(
                passed=False,
                events=event_index + 1,
                max_abs_delta=float("inf"),
                first_divergence_event=event_index,
                first_divergence_item=min(stray),
            )
        for item_id, (_, p_naive) in snap_n.by_id.items():
            p_mi = snap_m.probability(item_id)
            delta = abs(p_naive - p_mi)
            if delta > max_delta:
                max_delta = delta
            if delta > tolerance:
                return VerifyResult(
                    passed=False,
                    events=event_index + 1,
                    max_abs_delta=max_delta,
                    first_divergence_event=event_index,
                    first_divergence_item=item_id,
                    naive_value=p_naive,
                    mi_value=p_mi,
                )
    return VerifyResult(passed=True, events=len(items), max_abs_delta=max_delta)


def _parse_bounds(text: str, d: int) -> NormalizationBounds:
    """Accept "min,max" (applied to all dims) or "min,max;min,max;..." per dim."""
    try:
        groups = [g for g in text.split(";") if g]
        pairs = []
        for g in groups:
            lo_s, hi_s = g.split(",")
            pairs.append((float(lo_s), float(hi_s)))
    except ValueError:
        raise ConfigError(f"cannot parse bounds {text!r}") from None
    if len(pairs) == 1:
        return NormalizationBounds.uniform(pairs[0][0], pairs[0][1], d)
    if len(pairs) != d:
        raise ConfigError(f"{len(pairs)} bound pairs given for {d} dimensions")
    return NormalizationBounds(tuple(pairs))


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"cannot parse {flag} list {text!r}") from None
    if not values:
        raise ConfigError(f"empty {flag} list")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skystream",
        description="Streaming k-dominant skyline probability engines: "
        "verification and benchmarking harness.",
    )
    parser.add_argument("--engine", choices=sorted(ENGINES), default="mi")
    parser.add_argument("--dim", type=int, default=12, help="attribute dimensionality")
    parser.add_argument("--k", type=int, default=11, help="dominance parameter")
    parser.add_argument("--window", type=int, default=300, help="sliding-window capacity")
    parser.add_argument("--items", type=int, default=10_000, help="stream length (synthetic)")
    parser.add_argument("--pivot", type=int, default=None,
                        help="threshold pivot in [0, k-1]; default (k-1)//2")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--dist", choices=DISTRIBUTIONS, default="independent")
    parser.add_argument("--prob", default="uniform",
                        help="occurrence-probability model: uniform or fixed:<p>")
    parser.add_argument("--input", default=None, help="CSV stream file instead of a generator")
    parser.add_argument("--bounds", default=None,
                        help='declared bounds: "min,max" global or "min,max;..." per dim; '
                        "required with --input, defaults to 0,1 otherwise")
    parser.add_argument("--repeat", type=int, default=10, help="benchmark repetitions")
    parser.add_argument("--verify", action="store_true",
                        help="run both engines in lockstep and compare snapshots")
    parser.add_argument("--report", default=None, help="write JSON-lines report to this path")
    parser.add_argument("--sweep-k", default=None, help="comma-separated k values to sweep")
    parser.add_argument("--sweep-window", default=None,
                        help="comma-separated window sizes to sweep")
    return parser


def _make_config(args, k: int, capacity: int, bounds: NormalizationBounds) -> EngineConfig:
    return EngineConfig(
        d=args.dim,
        k=k,
        capacity=capacity,
        bounds=bounds,
        pivot=args.pivot,
        instrument=True,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    out_lines: list[str] = []
    try:
        if args.input is not None:
            if args.bounds is None:
                raise ConfigError("--bounds is required with --input")
            bounds = _parse_bounds(args.bounds, args.dim)
            input_items = load_stream(args.input, bounds)
            if input_items and len(input_items[0].attrs) != args.dim:
                raise ConfigError(
                    f"input has {len(input_items[0].attrs)} attribute columns, "
                    f"--dim says {args.dim}"
                )
            spec = None
        else:
            bounds = _parse_bounds(args.bounds, args.dim) if args.bounds else \
                NormalizationBounds.uniform(0.0, 1.0, args.dim)
            value_range = bounds.per_dim if len(set(bounds.per_dim)) > 1 else bounds.per_dim[0]
            spec = GeneratorSpec(
                distribution=args.dist,
                d=args.dim,
                count=args.items,
                seed=args.seed,
                value_range=value_range,
                prob_model=args.prob,
            )
            input_items = None

        if args.repeat < 1:
            raise ConfigError("--repeat must be >= 1")

        if args.verify:
            if args.sweep_k or args.sweep_window:
                raise ConfigError("sweeps cannot be combined with --verify")
            config = _make_config(args, args.k, args.window, bounds)
            items = input_items if input_items is not None else generate(spec)
            result = run_verify(config, items)
            print(result.to_json())
            if args.report:
                with open(args.report, "w", encoding="utf-8") as fh:
                    fh.write(result.to_json() + "\n")
            return EXIT_OK if result.passed else EXIT_VERIFY_MISMATCH

        grid: list[tuple[int, int]] = []
        if args.sweep_k:
            grid += [(k, args.window) for k in _parse_int_list(args.sweep_k, "--sweep-k")]
        if args.sweep_window:
            grid += [(args.k, w) for w in _parse_int_list(args.sweep_window, "--sweep-window")]
        if not grid:
            grid = [(args.k, args.window)]

        for k, capacity in grid:
            config = _make_config(args, k, capacity, bounds)
            reports = run_bench(config, args.engine, spec, input_items, args.repeat)
            out_lines += [r.to_json() for r in reports]
            avg = reports[-1]
            print(
                f"{args.engine} k={k} window={capacity} pivot={config.pivot}: "
                f"{avg.total_seconds:.3f}s total, "
                f"{avg.mean_event_us:.1f}us/event mean, "
                f"{avg.dominance_tests:.0f} dominance tests "
                f"({args.repeat} runs)",
                file=sys.stderr,
            )

        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write("\n".join(out_lines) + "\n")
        else:
            for line in out_lines:
                print(line)
        return EXIT_OK

    except StreamFormatError as exc:
        print(f"ingestion error: {exc}", file=sys.stderr)
        return EXIT_INGESTION
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

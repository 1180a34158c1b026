"""Design-of-experiments harness: seeded sampling, parallel execution, CSV.

Sampling uses SplitMix64, so a design is a pure function of its seed. Runs
are independent, so the sweep may execute on any number of workers; records
are reassembled in run order and the serialised output is byte-identical for
any worker count.
"""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import SimConfig
from .engine import simulate_batch
from .params import PARAM_COLUMNS, DesignSpec, ParameterSet
from .socio import RunRecord

_MASK64 = (1 << 64) - 1


class SchemaError(ValueError):
    """CSV header or column set does not match the published schema."""


class ParseError(ValueError):
    """A CSV cell failed to parse; the message carries row and column."""


def prng_next(state: int) -> tuple[int, float]:
    """One SplitMix64 step: returns (next state, uniform draw in [0, 1))."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z = z ^ (z >> 31)
    return state, z / 2.0**64


def sample_design(spec: DesignSpec) -> list[ParameterSet]:
    """Draw the full design: run i, parameter j consumes draw i*21 + j,
    scaled onto [low, high) of parameter j (canonical column order)."""
    spec.validate()
    ranges = [spec.range_of(name) for name in PARAM_COLUMNS]
    state = spec.seed
    out = []
    for _ in range(spec.n_runs):
        values = []
        for r in ranges:
            state, u = prng_next(state)
            values.append(r.low + u * (r.high - r.low))
        out.append(ParameterSet(*values))
    return out


@dataclass(frozen=True)
class SweepResult:
    """Records sorted by run_id plus the provenance recorded in the CSV header."""

    records: list[RunRecord] = field(default_factory=list)
    seed: int = 0
    dt: float = 0.25
    horizon: float = 365.0

    @property
    def n(self) -> int:
        return len(self.records)


def execute_sweep(design: list[ParameterSet], config: SimConfig, workers: int = 1,
                  seed: int | None = None, progress: bool = False) -> SweepResult:
    """Run every parameter set once; output independent of worker count.

    `seed` is recorded in the result metadata (defaults to the seed of the
    config's design spec; pass the actual seed when sampling a custom one).
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if seed is None:
        seed = config.design.seed
    config.validate()

    n = len(design)
    if n == 0:
        return SweepResult([], seed=seed, dt=config.dt, horizon=config.horizon)

    if workers == 1:
        chunks = [(0, design)]
    else:
        size = max(1, -(-n // (workers * 4)))
        chunks = [(i, design[i:i + size]) for i in range(0, n, size)]

    done = 0
    results: list[list[RunRecord]] = [None] * len(chunks)

    def run_chunk(idx: int):
        start, part = chunks[idx]
        return idx, simulate_batch(part, config, first_run_id=start)

    if workers == 1:
        ordered = [run_chunk(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ordered = list(pool.map(run_chunk, range(len(chunks))))
    for idx, recs in ordered:
        results[idx] = recs
        if progress:
            done += len(recs)
            print(f"runs completed: {done}/{n}", file=sys.stderr)

    records = [rec for part in results for rec in part]
    records.sort(key=lambda r: r.run_id)
    return SweepResult(records, seed=seed, dt=config.dt, horizon=config.horizon)


#: Output columns, fixed order (after run_id and the 21 parameter columns).
OUTPUT_COLUMNS = (
    "hazard_event_count_contagion",
    "hazard_event_count_financial",
    "hazard_event_count_natural",
    "hazard_event_count_predation",
    "hazard_event_count_social",
    "nationalism_level",
    "economic_conservatism",
    "social_conservatism",
    "anthropomorphic_promiscuity",
    "sociographic_prudery",
    "anti_immigrant_sentiment",
    "threat_con_fin_nat",
    "threat_soc_pred",
    "engagement_1", "engagement_2", "engagement_3", "engagement_4", "engagement_5",
    "energy_1", "energy_2", "energy_3", "energy_4", "energy_5",
    "addedEnergy_1", "addedEnergy_2", "addedEnergy_3", "addedEnergy_4", "addedEnergy_5",
)

_COUNT_COLUMNS = frozenset(c for c in OUTPUT_COLUMNS if c.startswith("hazard_event_count"))

#: Full CSV header.
CSV_COLUMNS = ("run_id",) + PARAM_COLUMNS + OUTPUT_COLUMNS

_COL_INDEX = {c: i for i, c in enumerate(CSV_COLUMNS)}


def _record_cells(rec: RunRecord):
    cells = [str(rec.run_id)]
    cells += [repr(getattr(rec.params, c)) for c in PARAM_COLUMNS]
    for c in OUTPUT_COLUMNS:
        v = getattr(rec, c)
        cells.append(str(v) if c in _COUNT_COLUMNS else repr(v))
    return cells


def write_records_csv(result: SweepResult, path) -> None:
    """Write a sweep as UTF-8 CSV with a provenance comment line on top.

    Floats are serialised as shortest round-trip decimals, so
    read_records_csv(write_records_csv(x)) reproduces x exactly.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# seed={result.seed} n={result.n} dt={result.dt!r} "
                 f"horizon={result.horizon!r}\n")
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in result.records:
            fh.write(",".join(_record_cells(rec)) + "\n")


def _parse_meta(line: str) -> dict:
    if not line.startswith("# "):
        raise SchemaError("missing metadata comment line (expected '# seed=... n=...')")
    meta = {}
    for part in line[2:].split():
        if "=" not in part:
            raise SchemaError(f"malformed metadata entry {part!r}")
        k, v = part.split("=", 1)
        meta[k] = v
    for key in ("seed", "n", "dt", "horizon"):
        if key not in meta:
            raise SchemaError(f"metadata line missing {key!r}")
    return meta


def read_records_csv(path) -> SweepResult:
    """Read a sweep CSV back; strict about header, column order and cells."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2:
        raise SchemaError("file too short: expected metadata line and header")
    meta = _parse_meta(lines[0])
    header = tuple(lines[1].split(","))
    if header != CSV_COLUMNS:
        raise SchemaError(
            "header mismatch: expected the published sweep schema "
            f"({len(CSV_COLUMNS)} columns starting {CSV_COLUMNS[:3]}), got "
            f"{len(header)} columns starting {header[:3]}")

    records = []
    for row_no, line in enumerate(lines[2:], start=3):
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(CSV_COLUMNS):
            raise ParseError(f"row {row_no}: expected {len(CSV_COLUMNS)} cells, "
                             f"got {len(cells)}")

        def cell(col, typ):
            raw = cells[_COL_INDEX[col]]
            try:
                return typ(raw)
            except ValueError:
                raise ParseError(f"row {row_no}, column {col!r}: "
                                 f"non-numeric cell {raw!r}") from None

        params = ParameterSet(*(cell(c, float) for c in PARAM_COLUMNS))
        outputs = {c: cell(c, int) if c in _COUNT_COLUMNS else cell(c, float)
                   for c in OUTPUT_COLUMNS}
        records.append(RunRecord(run_id=cell("run_id", int), params=params, **outputs))

    try:
        seed = int(meta["seed"])
        dt = float(meta["dt"])
        horizon = float(meta["horizon"])
    except ValueError as exc:
        raise ParseError(f"metadata line: {exc}") from None
    return SweepResult(records, seed=seed, dt=dt, horizon=horizon)


def records_table(records: list[RunRecord]) -> dict[str, np.ndarray]:
    """Column-major view of a record list (numpy arrays keyed by CSV column)."""
    table = {"run_id": np.array([r.run_id for r in records], dtype=np.int64)}
    for c in PARAM_COLUMNS:
        table[c] = np.array([getattr(r.params, c) for r in records], dtype=np.float64)
    for c in OUTPUT_COLUMNS:
        dtype = np.int64 if c in _COUNT_COLUMNS else np.float64
        table[c] = np.array([getattr(r, c) for r in records], dtype=dtype)
    return table

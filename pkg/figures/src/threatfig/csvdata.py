"""Reader for the sweep CSV interface published by the simulator.

This package deliberately does not import the simulator; the CSV schema is
the contract. First line is a provenance comment, second the fixed header,
then one row per run.
"""

from __future__ import annotations

import numpy as np

PARAM_COLUMNS = (
    "Big_5_agreeableness", "Big_5_conscientiousness", "Big_5_extraversion",
    "Big_5_neuroticism", "Big_5_openness", "energyDecay", "habituationRate",
    "Hazard_intensity_contagion", "Hazard_intensity_financial",
    "Hazard_intensity_natural", "Hazard_intensity_predation",
    "Hazard_intensity_social",
    "Initial_concern_1", "Initial_concern_2", "Initial_concern_3",
    "Initial_concern_4", "Initial_concern_5",
    "Rel_frequency", "socialMediaUse", "ThreatPctOfMedia", "tvMediaUse",
)

OUTPUT_COLUMNS = (
    "hazard_event_count_contagion", "hazard_event_count_financial",
    "hazard_event_count_natural", "hazard_event_count_predation",
    "hazard_event_count_social",
    "nationalism_level", "economic_conservatism", "social_conservatism",
    "anthropomorphic_promiscuity", "sociographic_prudery",
    "anti_immigrant_sentiment",
    "threat_con_fin_nat", "threat_soc_pred",
    "engagement_1", "engagement_2", "engagement_3", "engagement_4", "engagement_5",
    "energy_1", "energy_2", "energy_3", "energy_4", "energy_5",
    "addedEnergy_1", "addedEnergy_2", "addedEnergy_3", "addedEnergy_4",
    "addedEnergy_5",
)

SCHEMA_COLUMNS = ("run_id",) + PARAM_COLUMNS + OUTPUT_COLUMNS

SUBSET_RULES = ("lowest_quartile", "highest_quartile", "below_median", "above_median")


class CsvFormatError(ValueError):
    """The file does not follow the published sweep schema."""


def read_sweep_csv(path) -> dict[str, np.ndarray]:
    """Load a sweep CSV into a dict of numpy columns, validating the schema."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if len(lines) < 2 or not lines[0].startswith("#"):
        raise CsvFormatError(f"{path}: expected a metadata comment line then a header")
    header = tuple(lines[1].split(","))
    if header != SCHEMA_COLUMNS:
        raise CsvFormatError(f"{path}: header does not match the published sweep "
                             f"schema ({len(header)} vs {len(SCHEMA_COLUMNS)} columns)")
    rows = [line.split(",") for line in lines[2:] if line]
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    try:
        data = np.array(rows, dtype=np.float64)
    except ValueError as exc:
        raise CsvFormatError(f"{path}: non-numeric cell ({exc})") from None
    if data.shape[1] != len(SCHEMA_COLUMNS):
        raise CsvFormatError(f"{path}: ragged rows")
    return {name: data[:, i] for i, name in enumerate(SCHEMA_COLUMNS)}


def require_columns(table, columns):
    missing = [c for c in columns if c not in table]
    if missing:
        raise CsvFormatError("columns missing from CSV: " + ", ".join(missing))


def subset_rows(table, column: str, rule: str) -> dict[str, np.ndarray]:
    """Quartile/median subsets: floor(n/4) (or floor(n/2)) rows, ties broken
    by ascending run_id — same semantics the simulator's analytics use."""
    if rule not in SUBSET_RULES:
        raise ValueError(f"unknown subset rule {rule!r} (expected one of {SUBSET_RULES})")
    require_columns(table, [column])
    values = table[column]
    n = len(values)
    take = n // 4 if rule.endswith("quartile") else n // 2
    keys = -values if rule in ("highest_quartile", "above_median") else values
    order = np.lexsort((table["run_id"], keys))
    mask = np.zeros(n, dtype=bool)
    mask[order[:take]] = True
    return {name: col[mask] for name, col in table.items()}

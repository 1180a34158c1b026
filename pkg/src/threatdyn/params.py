"""Swept input parameters: the 21 per-run inputs, their ranges, and the design spec.

Field names match the output CSV header verbatim (they come straight from the
source model's parameter table, so they keep their original mixed casing).
Numbered columns map to threat dimensions alphabetically:
1=contagion, 2=financial, 3=natural, 4=predation, 5=social.
"""

from __future__ import annotations

from dataclasses import dataclass, fields


class ValidationError(ValueError):
    """An input value or specification violates its declared constraints."""


#: Canonical parameter column order (the parameter table's alphabetical order).
PARAM_COLUMNS = (
    "Big_5_agreeableness",
    "Big_5_conscientiousness",
    "Big_5_extraversion",
    "Big_5_neuroticism",
    "Big_5_openness",
    "energyDecay",
    "habituationRate",
    "Hazard_intensity_contagion",
    "Hazard_intensity_financial",
    "Hazard_intensity_natural",
    "Hazard_intensity_predation",
    "Hazard_intensity_social",
    "Initial_concern_1",
    "Initial_concern_2",
    "Initial_concern_3",
    "Initial_concern_4",
    "Initial_concern_5",
    "Rel_frequency",
    "socialMediaUse",
    "ThreatPctOfMedia",
    "tvMediaUse",
)


@dataclass(frozen=True)
class ParameterSet:
    """One run's 21 swept inputs, in the parameter table's column order."""

    Big_5_agreeableness: float
    Big_5_conscientiousness: float
    Big_5_extraversion: float
    Big_5_neuroticism: float
    Big_5_openness: float
    energyDecay: float
    habituationRate: float
    Hazard_intensity_contagion: float
    Hazard_intensity_financial: float
    Hazard_intensity_natural: float
    Hazard_intensity_predation: float
    Hazard_intensity_social: float
    Initial_concern_1: float
    Initial_concern_2: float
    Initial_concern_3: float
    Initial_concern_4: float
    Initial_concern_5: float
    Rel_frequency: float
    socialMediaUse: float
    ThreatPctOfMedia: float
    tvMediaUse: float

    def as_tuple(self):
        return tuple(getattr(self, c) for c in PARAM_COLUMNS)

    def as_dict(self):
        return {c: getattr(self, c) for c in PARAM_COLUMNS}


assert tuple(f.name for f in fields(ParameterSet)) == PARAM_COLUMNS


@dataclass(frozen=True)
class ParamRange:
    """Closed-open sampling interval [low, high) for one parameter."""

    name: str
    low: float
    high: float

    def validate(self):
        if self.name not in PARAM_COLUMNS:
            raise ValidationError(f"unknown parameter name: {self.name!r}")
        if not self.low < self.high:
            raise ValidationError(f"range for {self.name}: low must be < high "
                                  f"({self.low} >= {self.high})")


def default_ranges() -> dict[str, ParamRange]:
    """Default sweep ranges: unit intervals for psychology scales; the
    habituation rate and energy decay floors keep every subsystem away from
    the degenerate no-habituation / no-decay corner."""
    ranges = {name: ParamRange(name, 0.0, 1.0) for name in PARAM_COLUMNS}
    ranges["habituationRate"] = ParamRange("habituationRate", 0.1, 1.0)
    ranges["energyDecay"] = ParamRange("energyDecay", 0.1, 0.5)
    return ranges


@dataclass(frozen=True)
class DesignSpec:
    """A full experiment design: run count, seed, and one range per parameter."""

    n_runs: int = 20000
    seed: int = 42
    ranges: tuple[ParamRange, ...] = tuple(default_ranges()[c] for c in PARAM_COLUMNS)

    def validate(self):
        if self.n_runs < 0:
            raise ValidationError(f"n_runs must be >= 0, got {self.n_runs}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        names = [r.name for r in self.ranges]
        if sorted(names) != sorted(PARAM_COLUMNS):
            missing = set(PARAM_COLUMNS) - set(names)
            extra = set(names) - set(PARAM_COLUMNS)
            dupes = {n for n in names if names.count(n) > 1}
            raise ValidationError(
                "design must cover each of the 21 swept parameters exactly once"
                + (f"; missing {sorted(missing)}" if missing else "")
                + (f"; unknown {sorted(extra)}" if extra else "")
                + (f"; duplicated {sorted(dupes)}" if dupes else ""))
        for r in self.ranges:
            r.validate()

    def range_of(self, name: str) -> ParamRange:
        for r in self.ranges:
            if r.name == name:
                return r
        raise KeyError(name)


def validate_parameter_set(p: ParameterSet, spec: DesignSpec):
    """Check every field against its sweep range; report all offenders at once."""
    bad = []
    for r in spec.ranges:
        v = getattr(p, r.name)
        if not (r.low <= v <= r.high):
            bad.append(f"{r.name}={v} outside [{r.low}, {r.high}]")
    if bad:
        raise ValidationError("parameter set out of range: " + "; ".join(bad))

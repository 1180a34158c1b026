"""Threat perception kernel: five identical subsystems, one per threat dimension.

Each subsystem turns a constant hazard intensity (inflated by media exposure)
into a deterministic stream of discrete threat events, injects energy per
event scaled by surprise (one minus the associative strength), habituates the
associative strength with a Rescorla-Wagner update, decays energy
exponentially, and reports engagement as concern-weighted energy. Engagements
aggregate into two latent threat clusters using survey-derived factor
loadings.

All numeric helpers are elementwise and accept floats or numpy arrays of any
shape; the batch engine and the scalar API share these functions so both
paths produce bit-identical trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

# Spontaneous recovery of the associative strength, per unit time. Keeps
# habituation from locking in permanently and sets how much of the swept
# hazard range stays dynamically live (calibrated; see config.Couplings).
DEFAULT_RHO = 0.05

# Factor loadings of the two latent threat clusters (anchor dimension fixed
# at 1.0 in each cluster). LOADING_* names the non-anchor dimensions.
LOADING_PREDATION = 0.81
LOADING_CONTAGION = 0.86
LOADING_NATURAL = 0.56
_DEN_SOC_PRED = 1.0 + LOADING_PREDATION
_DEN_CON_FIN_NAT = 1.0 + LOADING_CONTAGION + LOADING_NATURAL


class ThreatDimension(Enum):
    """The five threat dimensions, canonical index 1..5 in alphabetical order."""

    CONTAGION = 1
    FINANCIAL = 2
    NATURAL = 3
    PREDATION = 4
    SOCIAL = 5

    @property
    def index(self) -> int:
        """1-based canonical index (used for numbered column suffixes)."""
        return self.value


#: Dimensions in canonical (alphabetical) order; position = index - 1.
DIMENSIONS = tuple(ThreatDimension)


@dataclass(frozen=True)
class ThreatParams:
    """Per-dimension inputs: event rate and concern weight."""

    hazard_intensity: float   # events per unit time, in [0, 1]
    initial_concern: float    # engagement weight, in [0, 1]

    def validate(self):
        if not 0.0 <= self.hazard_intensity <= 1.0:
            raise ValueError(f"hazard_intensity out of [0,1]: {self.hazard_intensity}")
        if not 0.0 <= self.initial_concern <= 1.0:
            raise ValueError(f"initial_concern out of [0,1]: {self.initial_concern}")


@dataclass(frozen=True)
class ThreatGlobals:
    """Run-level inputs shared by all five subsystems."""

    habituation_rate: float     # per-event learning rate, in [0.01, 1]
    energy_decay: float         # per-unit-time decay, in [0.01, 0.5]
    threat_pct_of_media: float  # fraction of media content that is threatening
    tv_media_use: float
    social_media_use: float
    neuroticism: float

    def validate(self, dt: float | None = None):
        if not 0.01 <= self.habituation_rate <= 1.0:
            raise ValueError(f"habituation_rate out of [0.01,1]: {self.habituation_rate}")
        if not 0.01 <= self.energy_decay <= 0.5:
            raise ValueError(f"energy_decay out of [0.01,0.5]: {self.energy_decay}")
        for name in ("threat_pct_of_media", "tv_media_use", "social_media_use", "neuroticism"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0,1]: {v}")
        if dt is not None and self.energy_decay * dt >= 1.0:
            raise ValueError(f"energy_decay*dt must be < 1, got {self.energy_decay * dt}")


@dataclass(frozen=True)
class ThreatState:
    """Evolving state of one threat subsystem."""

    accumulator: float = 0.0        # event accumulator, in [0, 1)
    assoc_strength: float = 0.0     # Rescorla-Wagner V, in [0, 1]
    energy: float = 0.0             # accumulated threat energy, >= 0
    added_energy_last: float = 0.0  # energy injected by the most recent event
    event_count: int = 0
    engagement: float = 0.0         # initial_concern * energy


@dataclass(frozen=True)
class LatentThreats:
    """The two latent threat clusters (weighted engagement means)."""

    threat_soc_pred: float
    threat_con_fin_nat: float


def media_amplification(pct, tv, sm):
    """Hazard inflow multiplier from media exposure, in [1, 2].

    amplification = 1 + pct * (0.5*tv + 0.5*sm); monotone nondecreasing in
    every argument.
    """
    pct = np.asarray(pct, dtype=np.float64)
    tv = np.asarray(tv, dtype=np.float64)
    sm = np.asarray(sm, dtype=np.float64)
    for name, v in (("pct", pct), ("tv", tv), ("sm", sm)):
        if np.any(v < 0.0) or np.any(v > 1.0):
            raise ValueError(f"media_amplification: {name} out of [0,1]")
    out = 1.0 + pct * (0.5 * tv + 0.5 * sm)
    return float(out) if out.ndim == 0 else out


def _rescorla_wagner_raw(v, rate):
    # shared elementwise core; min() guards a one-ulp float overshoot past 1
    return np.minimum(v + rate * (1.0 - v), 1.0)


def rescorla_wagner_update(v, rate):
    """One habituation event: V' = V + rate*(1 - V), asymptote fixed at 1."""
    v = np.asarray(v, dtype=np.float64)
    rate = np.asarray(rate, dtype=np.float64)
    if np.any(v < 0.0) or np.any(v > 1.0):
        raise ValueError("rescorla_wagner_update: V out of [0,1]")
    if np.any(rate < 0.0) or np.any(rate > 1.0):
        raise ValueError("rescorla_wagner_update: rate out of [0,1]")
    out = _rescorla_wagner_raw(v, rate)
    return float(out) if out.ndim == 0 else out


def _fire_events_raw(accumulator, inflow):
    # shared elementwise core: integrate inflow, fire floor, keep fraction
    total = accumulator + inflow
    n = np.floor(total)
    return total - n, n


def fire_events(accumulator, inflow):
    """Advance the event accumulator; return (new accumulator, events fired).

    The accumulator integrates inflow and fires floor(acc + inflow) events,
    keeping the fractional part, so total events over a run equal the floor
    of total integrated inflow.
    """
    accumulator = np.asarray(accumulator, dtype=np.float64)
    inflow = np.asarray(inflow, dtype=np.float64)
    if np.any(inflow < 0.0):
        raise ValueError("fire_events: negative inflow")
    if np.any(accumulator < 0.0):
        raise ValueError("fire_events: negative accumulator")
    frac, n = _fire_events_raw(accumulator, inflow)
    if frac.ndim == 0:
        return float(frac), int(n)
    return frac, n


def added_energy(v, neuroticism):
    """Energy injected by one event: surprise (1 - V) scaled +/-25% by neuroticism."""
    return (1.0 - v) * (1.0 + 0.5 * (neuroticism - 0.5))


def step_threat(state: ThreatState, params: ThreatParams, globals_: ThreatGlobals,
                dt: float, rho: float = DEFAULT_RHO) -> ThreatState:
    """Advance one threat subsystem by one time step of length dt.

    Order of operations: fire events from accumulated inflow; per event,
    inject surprise-scaled energy and habituate V; decay energy; apply
    spontaneous recovery to V; recompute engagement.
    """
    if dt <= 0.0:
        raise ValueError(f"step_threat: dt must be > 0, got {dt}")
    params.validate()
    globals_.validate(dt)

    amp = media_amplification(globals_.threat_pct_of_media,
                              globals_.tv_media_use, globals_.social_media_use)
    inflow = params.hazard_intensity * amp * dt
    acc, n_events = fire_events(state.accumulator, inflow)

    v = state.assoc_strength
    energy = state.energy
    added_last = state.added_energy_last
    for _ in range(n_events):
        added = added_energy(v, globals_.neuroticism)
        energy = energy + added
        added_last = added
        v = float(_rescorla_wagner_raw(v, globals_.habituation_rate))

    energy = energy * (1.0 - globals_.energy_decay * dt)
    v = v * (1.0 - rho * dt)
    engagement = params.initial_concern * energy

    return ThreatState(accumulator=acc, assoc_strength=v, energy=energy,
                       added_energy_last=added_last,
                       event_count=state.event_count + n_events,
                       engagement=engagement)


def aggregate_soc_pred(e_predation, e_social):
    """Weighted mean of the social/predation cluster (loadings 1.0, 0.81)."""
    return (e_social + LOADING_PREDATION * e_predation) / _DEN_SOC_PRED


def aggregate_con_fin_nat(e_contagion, e_financial, e_natural):
    """Weighted mean of the contagion/financial/natural cluster (1.0, 0.86, 0.56)."""
    return (e_financial + LOADING_CONTAGION * e_contagion
            + LOADING_NATURAL * e_natural) / _DEN_CON_FIN_NAT


def aggregate_latents(engagements) -> LatentThreats:
    """Aggregate the five engagements into the two latent threat clusters.

    `engagements` maps ThreatDimension to a nonnegative engagement value (a
    sequence in canonical dimension order is also accepted).
    """
    if isinstance(engagements, dict):
        values = [engagements[d] for d in DIMENSIONS]
    else:
        values = list(engagements)
    if len(values) != 5:
        raise ValueError(f"aggregate_latents: expected 5 engagements, got {len(values)}")
    if any(e < 0.0 for e in values):
        raise ValueError("aggregate_latents: negative engagement")
    e_cont, e_fin, e_nat, e_pred, e_soc = values
    return LatentThreats(
        threat_soc_pred=float(aggregate_soc_pred(e_pred, e_soc)),
        threat_con_fin_nat=float(aggregate_con_fin_nat(e_cont, e_fin, e_nat)),
    )


def initial_threat_state() -> ThreatState:
    """Fresh subsystem state: zero accumulator, strength, energy and counts."""
    return ThreatState()

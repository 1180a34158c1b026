"""Vectorised simulation engine.

One fixed-step loop advances a whole batch of runs elementwise; a single run
is a batch of one. Every arithmetic step reuses the kernel/socio elementwise
helpers, and no operation reduces across the batch axis, so results are
bit-identical for any batch split (this is what makes the sweep's output
independent of worker count).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernel, socio
from .config import SimConfig
from .params import PARAM_COLUMNS, ParameterSet, ValidationError
from .socio import RunRecord

# column order of the (n, 5) threat arrays = canonical dimension order
_DIM_NAMES = ("contagion", "financial", "natural", "predation", "social")


def _columns(param_sets: Sequence[ParameterSet]) -> dict[str, np.ndarray]:
    return {name: np.array([getattr(p, name) for p in param_sets], dtype=np.float64)
            for name in PARAM_COLUMNS}


def _validate_batch(cols: dict[str, np.ndarray], config: SimConfig, first_run_id: int):
    for r in config.design.ranges:
        v = cols[r.name]
        bad = (v < r.low) | (v > r.high)
        if bad.any():
            i = int(np.argmax(bad))
            fields = [rr.name for rr in config.design.ranges
                      if not (rr.low <= cols[rr.name][i] <= rr.high)]
            raise ValidationError(
                f"run {first_run_id + i}: parameters out of range: "
                + "; ".join(f"{f}={cols[f][i]}" for f in fields))


def simulate_batch(param_sets: Sequence[ParameterSet], config: SimConfig,
                   first_run_id: int = 0, validate: bool = True) -> list[RunRecord]:
    """Simulate every parameter set and return records ordered as given."""
    if len(param_sets) == 0:
        return []
    config.validate()
    cols = _columns(param_sets)
    if validate:
        _validate_batch(cols, config, first_run_id)

    n = len(param_sets)
    dt = config.dt
    n_steps = config.n_steps
    c = config.couplings

    hazard = np.column_stack([cols[f"Hazard_intensity_{d}"] for d in _DIM_NAMES])
    concern = np.column_stack([cols[f"Initial_concern_{i}"] for i in range(1, 6)])
    rate = cols["habituationRate"][:, None]
    neuro = cols["Big_5_neuroticism"][:, None]
    decay_factor = (1.0 - cols["energyDecay"] * dt)[:, None]
    recovery = 1.0 - config.rho * dt
    relax_k = dt / config.tau

    amp = kernel.media_amplification(cols["ThreatPctOfMedia"], cols["tvMediaUse"],
                                     cols["socialMediaUse"])
    inflow = hazard * amp[:, None] * dt
    media_x = socio.media_exposure(cols["ThreatPctOfMedia"], cols["tvMediaUse"],
                                   cols["socialMediaUse"], cols["Big_5_extraversion"])
    fin_exposure = cols["Initial_concern_2"] * cols["Hazard_intensity_financial"] * amp

    rf = cols["Rel_frequency"]
    openness = cols["Big_5_openness"]
    consc = cols["Big_5_conscientiousness"]
    agree = cols["Big_5_agreeableness"]

    acc = np.zeros((n, 5))
    v = np.zeros((n, 5))
    energy = np.zeros((n, 5))
    added_last = np.zeros((n, 5))
    count = np.zeros((n, 5), dtype=np.int64)
    nat = np.zeros(n)
    ap = np.zeros(n)
    sp = np.zeros(n)
    sc = np.zeros(n)
    ec = np.zeros(n)
    ais = np.zeros(n)
    tsp_sum = np.zeros(n)
    tcfn_sum = np.zeros(n)
    engagement = concern * energy

    for _ in range(n_steps):
        acc, n_events = kernel._fire_events_raw(acc, inflow)
        for j in range(int(n_events.max())):
            fired = n_events > j
            added = kernel.added_energy(v, neuro)
            energy = np.where(fired, energy + added, energy)
            added_last = np.where(fired, added, added_last)
            v = np.where(fired, kernel._rescorla_wagner_raw(v, rate), v)
        count += n_events.astype(np.int64)
        energy = energy * decay_factor
        v = v * recovery
        engagement = concern * energy

        t_sp = kernel.aggregate_soc_pred(engagement[:, 3], engagement[:, 4])
        t_cfn = kernel.aggregate_con_fin_nat(engagement[:, 0], engagement[:, 1],
                                             engagement[:, 2])
        tsp_sum += t_sp
        tcfn_sum += t_cfn

        e_cl = np.minimum(engagement, c.engagement_clamp)
        t_sp_cl = np.minimum(t_sp, c.engagement_clamp)
        t_cfn_cl = np.minimum(t_cfn, c.engagement_clamp)
        n_t, ap_t, sp_t, sc_t, ec_t, ais_t = socio._targets_raw(
            t_sp_cl, t_cfn_cl, e_cl[:, 0], e_cl[:, 1], e_cl[:, 2], e_cl[:, 3], e_cl[:, 4],
            rf, openness, consc, agree, media_x, fin_exposure,
            nat, ap, sp, sc, ec, c)
        nat = nat + (n_t - nat) * relax_k
        ap = ap + (ap_t - ap) * relax_k
        sp = sp + (sp_t - sp) * relax_k
        sc = sc + (sc_t - sc) * relax_k
        ec = ec + (ec_t - ec) * relax_k
        ais = ais + (ais_t - ais) * relax_k

    tsp_avg = tsp_sum / n_steps if n_steps > 0 else tsp_sum
    tcfn_avg = tcfn_sum / n_steps if n_steps > 0 else tcfn_sum

    records = []
    for i, p in enumerate(param_sets):
        records.append(RunRecord(
            run_id=first_run_id + i,
            params=p,
            hazard_event_count_contagion=int(count[i, 0]),
            hazard_event_count_financial=int(count[i, 1]),
            hazard_event_count_natural=int(count[i, 2]),
            hazard_event_count_predation=int(count[i, 3]),
            hazard_event_count_social=int(count[i, 4]),
            nationalism_level=float(nat[i]),
            economic_conservatism=float(ec[i]),
            social_conservatism=float(sc[i]),
            anthropomorphic_promiscuity=float(ap[i]),
            sociographic_prudery=float(sp[i]),
            anti_immigrant_sentiment=float(ais[i]),
            threat_con_fin_nat=float(tcfn_avg[i]),
            threat_soc_pred=float(tsp_avg[i]),
            engagement_1=float(engagement[i, 0]),
            engagement_2=float(engagement[i, 1]),
            engagement_3=float(engagement[i, 2]),
            engagement_4=float(engagement[i, 3]),
            engagement_5=float(engagement[i, 4]),
            energy_1=float(energy[i, 0]),
            energy_2=float(energy[i, 1]),
            energy_3=float(energy[i, 2]),
            energy_4=float(energy[i, 3]),
            energy_5=float(energy[i, 4]),
            addedEnergy_1=float(added_last[i, 0]),
            addedEnergy_2=float(added_last[i, 1]),
            addedEnergy_3=float(added_last[i, 2]),
            addedEnergy_4=float(added_last[i, 3]),
            addedEnergy_5=float(added_last[i, 4]),
        ))
    return records

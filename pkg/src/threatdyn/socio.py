"""Socio-political stocks driven by the threat kernel.

Six stocks (nationalism, anthropomorphic promiscuity, sociographic prudery,
social and economic conservatism, anti-immigrant sentiment) relax toward
squash-bounded targets computed from the latent threat clusters, engagements,
media exposure, religiosity, and personality. Targets read the *current*
stock values where stocks couple to each other, so the relaxation carries the
causal lag; `equilibrium_stocks` evaluates the no-lag fixed point.

The elementwise target computation is shared with the batch engine, keeping
single runs and vectorised sweeps bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import config as cfg
from .kernel import LatentThreats, ThreatGlobals, DIMENSIONS
from .params import ParameterSet


def squash(x):
    """Map the real line into (-1, 1): x / (1 + |x|). Odd, strictly increasing."""
    x = np.asarray(x, dtype=np.float64)
    out = x / (1.0 + np.abs(x))
    return float(out) if out.ndim == 0 else out


def ramp_gate(x, lo, hi):
    """Threshold ramp: 1 at x <= lo, 0 at x >= hi, linear in between."""
    x = np.asarray(x, dtype=np.float64)
    out = np.clip((hi - x) / (hi - lo), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SocioParams:
    """Run-level socio inputs: religiosity, the non-neurotic Big-5 traits,
    the concern-weighted financial event exposure, and the coupling table."""

    rel_frequency: float
    openness: float
    conscientiousness: float
    agreeableness: float
    extraversion: float
    financial_exposure: float  # Initial_concern_2 * Hazard_intensity_financial * amplification
    couplings: cfg.Couplings

    def validate(self):
        for name in ("rel_frequency", "openness", "conscientiousness",
                     "agreeableness", "extraversion"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0,1]: {v}")
        if self.financial_exposure < 0.0:
            raise ValueError(f"financial_exposure must be >= 0: {self.financial_exposure}")


@dataclass(frozen=True)
class SocioState:
    """The six socio-political stocks, each strictly inside (-1, 1)."""

    nationalism: float = 0.0
    anthropomorphic_promiscuity: float = 0.0
    sociographic_prudery: float = 0.0
    social_conservatism: float = 0.0
    economic_conservatism: float = 0.0
    anti_immigrant_sentiment: float = 0.0

    def as_tuple(self):
        return (self.nationalism, self.anthropomorphic_promiscuity,
                self.sociographic_prudery, self.social_conservatism,
                self.economic_conservatism, self.anti_immigrant_sentiment)


def _targets_raw(t_sp, t_cfn, e_cont, e_fin, e_nat, e_pred, e_soc,
                 rf, openness, consc, agree, media_exposure, fin_exposure,
                 n, ap, sp, sc, ec, c: cfg.Couplings):
    """Elementwise target equations. Engagements and latents arrive already
    clamped; stock arguments are the current stock values."""
    n_t = squash(cfg.NAT_T_SOC_PRED * t_sp + cfg.NAT_T_CON_FIN_NAT * t_cfn
                 + c.nat_rel * rf)
    ap_t = squash(cfg.AP_E_PREDATION * e_pred + cfg.AP_E_CONTAGION * e_cont
                  + cfg.AP_E_FINANCIAL * e_fin + cfg.AP_E_NATURAL * e_nat
                  + cfg.AP_E_SOCIAL * e_soc + c.ap_openness * openness + c.ap_base)
    sp_t = squash(c.sp_rel * rf + c.sp_t_soc_pred * t_sp + c.sp_t_con_fin_nat * t_cfn)
    sc_t = squash(cfg.SC_AP * ap + c.sc_t_soc_pred * t_sp + c.sc_t_con_fin_nat * t_cfn)
    ec_t = squash(cfg.EC_AP * ap + cfg.EC_SP * sp
                  + c.ec_t_soc_pred * t_sp + c.ec_t_con_fin_nat * t_cfn)
    g_media = (c.ais_media * media_exposure
               * ramp_gate(sp, c.gate_sp_lo, c.gate_sp_hi)
               * ramp_gate(ap, c.gate_ap_lo, c.gate_ap_hi))
    g_fin = c.ais_financial * fin_exposure * ramp_gate(n, c.gate_n_lo, c.gate_n_hi)
    ais_t = squash(cfg.AIS_SC * sc + cfg.AIS_EC * ec + c.ais_nationalism * n
                   + c.ais_openness * openness + c.ais_conscientiousness * consc
                   + c.ais_agreeableness * agree + g_media + g_fin)
    return n_t, ap_t, sp_t, sc_t, ec_t, ais_t


def media_exposure(pct, tv, sm, extraversion):
    """Media pressure channel: threat share of media times use, amplified by
    extraversion (+50% at the top of the scale)."""
    return pct * (0.5 * tv + 0.5 * sm) * (1.0 + 0.5 * extraversion)


def compute_targets(latents: LatentThreats, engagements, p: SocioParams,
                    g: ThreatGlobals, s: SocioState) -> SocioState:
    """Evaluate the six stock targets at the current state.

    `engagements` maps ThreatDimension to engagement (or a sequence in
    canonical order). Engagements and latents are clamped to
    [0, engagement_clamp] before entering the equations.
    """
    if isinstance(engagements, dict):
        values = [engagements[d] for d in DIMENSIONS]
    else:
        values = list(engagements)
    if len(values) != 5:
        raise ValueError(f"compute_targets: expected 5 engagements, got {len(values)}")
    p.validate()
    clamp = p.couplings.engagement_clamp
    e_cont, e_fin, e_nat, e_pred, e_soc = (min(v, clamp) for v in values)
    t_sp = min(latents.threat_soc_pred, clamp)
    t_cfn = min(latents.threat_con_fin_nat, clamp)
    mx = media_exposure(g.threat_pct_of_media, g.tv_media_use, g.social_media_use,
                        p.extraversion)
    n_t, ap_t, sp_t, sc_t, ec_t, ais_t = _targets_raw(
        t_sp, t_cfn, e_cont, e_fin, e_nat, e_pred, e_soc,
        p.rel_frequency, p.openness, p.conscientiousness, p.agreeableness,
        mx, p.financial_exposure,
        s.nationalism, s.anthropomorphic_promiscuity, s.sociographic_prudery,
        s.social_conservatism, s.economic_conservatism, p.couplings)
    return SocioState(float(n_t), float(ap_t), float(sp_t),
                      float(sc_t), float(ec_t), float(ais_t))


def relax(s: SocioState, targets: SocioState, tau: float, dt: float) -> SocioState:
    """First-order relaxation of every stock toward its target."""
    if not dt < tau:
        raise ValueError(f"relax: dt must be < tau ({dt} >= {tau})")
    k = dt / tau
    cur = s.as_tuple()
    tgt = targets.as_tuple()
    return SocioState(*(x + (t - x) * k for x, t in zip(cur, tgt)))


def equilibrium_stocks(latents: LatentThreats, engagements, p: SocioParams,
                       g: ThreatGlobals) -> SocioState:
    """Fixed point of the relaxation at constant inputs.

    Nationalism, anthropomorphic promiscuity and sociographic prudery settle
    at their own targets; conservatism and anti-immigrant sentiment then
    follow the stock-coupling cascade.
    """
    t1 = compute_targets(latents, engagements, p, g, SocioState())
    s1 = SocioState(nationalism=t1.nationalism,
                    anthropomorphic_promiscuity=t1.anthropomorphic_promiscuity,
                    sociographic_prudery=t1.sociographic_prudery)
    t2 = compute_targets(latents, engagements, p, g, s1)
    s2 = replace(s1, social_conservatism=t2.social_conservatism,
                 economic_conservatism=t2.economic_conservatism)
    t3 = compute_targets(latents, engagements, p, g, s2)
    return replace(s2, anti_immigrant_sentiment=t3.anti_immigrant_sentiment)


@dataclass(frozen=True)
class RunRecord:
    """One simulation run: inputs plus every reported output."""

    run_id: int
    params: ParameterSet
    hazard_event_count_contagion: int
    hazard_event_count_financial: int
    hazard_event_count_natural: int
    hazard_event_count_predation: int
    hazard_event_count_social: int
    nationalism_level: float
    economic_conservatism: float
    social_conservatism: float
    anthropomorphic_promiscuity: float
    sociographic_prudery: float
    anti_immigrant_sentiment: float
    threat_con_fin_nat: float   # time-averaged over the run
    threat_soc_pred: float      # time-averaged over the run
    engagement_1: float
    engagement_2: float
    engagement_3: float
    engagement_4: float
    engagement_5: float
    energy_1: float
    energy_2: float
    energy_3: float
    energy_4: float
    energy_5: float
    addedEnergy_1: float
    addedEnergy_2: float
    addedEnergy_3: float
    addedEnergy_4: float
    addedEnergy_5: float


def run_simulation(params: ParameterSet, config: cfg.SimConfig, run_id: int = 0) -> RunRecord:
    """Run one full simulation; deterministic in (params, config)."""
    from .engine import simulate_batch
    return simulate_batch([params], config, first_run_id=run_id)[0]

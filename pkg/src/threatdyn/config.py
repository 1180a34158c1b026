"""Simulation configuration: integration constants, coupling constants, and
the line-oriented config file format.

Couplings split into two groups. Survey-anchored constants (structural
equation point estimates from the questionnaire study) are module-level
constants and not configurable. Calibration constants are fields of
`Couplings`, overridable from the `[couplings]` config section; the shipped
defaults are calibrated so the default 20,000-run sweep reproduces the
reference sign/significance/shape findings.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

from .params import DesignSpec, ParamRange, ValidationError, PARAM_COLUMNS, default_ranges

# --- survey-anchored constants (SEM point estimates; not configurable) ------

NAT_T_SOC_PRED = 2.75      # nationalism <- social/predation threat cluster
NAT_T_CON_FIN_NAT = -3.62  # nationalism <- contagion/financial/natural cluster

# anthropomorphic promiscuity <- per-dimension engagements (supernatural
# belief regression coefficients)
AP_E_PREDATION = 0.243
AP_E_CONTAGION = -0.638
AP_E_FINANCIAL = -0.142
AP_E_NATURAL = -0.299
AP_E_SOCIAL = 0.488

SC_AP = 0.48    # social conservatism <- supernatural belief
EC_AP = 0.26    # economic conservatism <- supernatural belief
EC_SP = -0.08   # economic conservatism <- religious identification
AIS_SC = 0.06   # anti-immigrant sentiment <- social conservatism
AIS_EC = 0.02   # anti-immigrant sentiment <- economic conservatism


@dataclass(frozen=True)
class Couplings:
    """Calibration constants (config-overridable via [couplings])."""

    nat_rel: float = 0.25       # nationalism <- religious attendance
    ap_openness: float = -0.6   # anthropomorphic promiscuity <- openness
    ap_base: float = 0.45       # anthropomorphic promiscuity baseline
    sp_rel: float = 0.9         # sociographic prudery <- religious attendance
    sp_t_soc_pred: float = 0.4
    sp_t_con_fin_nat: float = -0.2
    sc_t_soc_pred: float = 0.35     # threat terms scaled to SEM sign/ratio
    sc_t_con_fin_nat: float = -0.45
    ec_t_soc_pred: float = 0.3
    ec_t_con_fin_nat: float = -0.4
    ais_nationalism: float = 0.9
    ais_openness: float = 0.12
    ais_conscientiousness: float = -0.08
    ais_agreeableness: float = -0.06
    ais_media: float = -0.4     # media pressure on anti-immigrant sentiment
    ais_financial: float = -0.5  # financial-exposure pressure, nationalism-gated
    # threshold ramp gates: full strength at/below lo, dead at/above hi
    gate_sp_lo: float = 0.0
    gate_sp_hi: float = 0.35
    gate_ap_lo: float = 0.0
    gate_ap_hi: float = 0.15
    gate_n_lo: float = -0.55
    gate_n_hi: float = 0.05
    engagement_clamp: float = 3.0  # cap on engagements entering target equations

    def validate(self):
        for g in ("gate_sp", "gate_ap", "gate_n"):
            lo, hi = getattr(self, g + "_lo"), getattr(self, g + "_hi")
            if not lo < hi:
                raise ValidationError(f"coupling {g}: lo must be < hi ({lo} >= {hi})")
        if self.engagement_clamp <= 0:
            raise ValidationError("engagement_clamp must be > 0")


COUPLING_NAMES = tuple(f.name for f in fields(Couplings))


@dataclass(frozen=True)
class SimConfig:
    """Everything a run or sweep needs besides the swept parameters."""

    dt: float = 0.25
    horizon: float = 365.0
    tau: float = 10.0    # stock relaxation time constant
    rho: float = 0.05    # spontaneous recovery of associative strength
    couplings: Couplings = Couplings()
    design: DesignSpec = DesignSpec()

    @property
    def n_steps(self) -> int:
        return int(round(self.horizon / self.dt))

    def validate(self):
        if self.dt <= 0:
            raise ValidationError(f"dt must be > 0, got {self.dt}")
        if self.horizon <= 0:
            raise ValidationError(f"horizon must be > 0, got {self.horizon}")
        if self.tau <= 0:
            raise ValidationError(f"tau must be > 0, got {self.tau}")
        if self.rho < 0:
            raise ValidationError(f"rho must be >= 0, got {self.rho}")
        if not self.dt < self.tau:
            raise ValidationError(f"dt must be < tau ({self.dt} >= {self.tau})")
        self.couplings.validate()
        self.design.validate()
        max_decay = self.design.range_of("energyDecay").high
        if max_decay * self.dt >= 1.0:
            raise ValidationError(
                f"energyDecay*dt must stay < 1 (max decay {max_decay} * dt {self.dt})")


_SIM_KEYS = {"dt": float, "horizon": float, "tau": float, "rho": float}
_DESIGN_KEYS = {"n_runs": int, "seed": int}


class ConfigError(ValidationError):
    """Config text rejected; carries the offending line number."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


def _parse_number(text, typ, line_no):
    try:
        if typ is int:
            return int(text, 0)
        return float(text)
    except ValueError:
        raise ConfigError(f"expected {typ.__name__}, got {text!r}", line_no) from None


def parse_config(text: str) -> SimConfig:
    """Parse `key = value` lines with `#` comments and [section] headers.

    Sections: [sim] (dt, horizon, tau, rho), [design] (n_runs, seed),
    [couplings] (any Couplings field), [ranges.<param>] (low, high).
    Unknown sections or keys are rejected with their line number. Omitted
    keys keep their defaults; the assembled config is fully validated.
    """
    sim_kw = {}
    design_kw = {}
    coupling_kw = {}
    range_kw: dict[str, dict[str, float]] = {}
    section = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", line_no)
            name = line[1:-1].strip()
            if name in ("sim", "design", "couplings"):
                section = name
            elif name.startswith("ranges."):
                param = name[len("ranges."):]
                if param not in PARAM_COLUMNS:
                    raise ConfigError(f"unknown parameter in [ranges.*]: {param!r}", line_no)
                section = ("ranges", param)
                range_kw.setdefault(param, {})
            else:
                raise ConfigError(f"unknown section [{name}]", line_no)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line_no)
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            raise ConfigError(f"key {key!r} appears before any [section]", line_no)
        if section == "sim":
            if key not in _SIM_KEYS:
                raise ConfigError(f"unknown key {key!r} in [sim]", line_no)
            sim_kw[key] = _parse_number(value, _SIM_KEYS[key], line_no)
        elif section == "design":
            if key not in _DESIGN_KEYS:
                raise ConfigError(f"unknown key {key!r} in [design]", line_no)
            design_kw[key] = _parse_number(value, _DESIGN_KEYS[key], line_no)
        elif section == "couplings":
            if key not in COUPLING_NAMES:
                raise ConfigError(f"unknown coupling {key!r}", line_no)
            coupling_kw[key] = _parse_number(value, float, line_no)
        else:
            _, param = section
            if key not in ("low", "high"):
                raise ConfigError(f"unknown key {key!r} in [ranges.{param}] "
                                  "(expected low/high)", line_no)
            range_kw[param][key] = _parse_number(value, float, line_no)

    ranges = default_ranges()
    for param, kv in range_kw.items():
        base = ranges[param]
        ranges[param] = ParamRange(param, kv.get("low", base.low), kv.get("high", base.high))

    design = DesignSpec(ranges=tuple(ranges[c] for c in PARAM_COLUMNS), **design_kw)
    config = SimConfig(couplings=Couplings(**coupling_kw), design=design, **sim_kw)
    config.validate()
    return config


def load_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())

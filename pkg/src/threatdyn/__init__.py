"""threatdyn: deterministic system dynamics of evolved threat perception
coupled to nationalism, religiosity, conservatism and anti-immigrant
sentiment, with a seeded parameter-sweep harness and a statistics suite.
"""

from .kernel import (DIMENSIONS, LatentThreats, ThreatDimension, ThreatGlobals,
                     ThreatParams, ThreatState, aggregate_latents, fire_events,
                     initial_threat_state, media_amplification,
                     rescorla_wagner_update, step_threat)
from .params import (PARAM_COLUMNS, DesignSpec, ParamRange, ParameterSet,
                     ValidationError, default_ranges)
from .config import Couplings, SimConfig, ConfigError, parse_config, load_config
from .socio import (RunRecord, SocioParams, SocioState, compute_targets,
                    equilibrium_stocks, media_exposure, ramp_gate, relax,
                    run_simulation, squash)
from .engine import simulate_batch
from .sweep import (CSV_COLUMNS, OUTPUT_COLUMNS, ParseError, SchemaError,
                    SweepResult, execute_sweep, prng_next, read_records_csv,
                    records_table, sample_design, write_records_csv)
from . import analytics

__version__ = "0.1.0"

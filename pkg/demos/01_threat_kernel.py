"""Walk through one threat subsystem step by step.

A subsystem turns a constant hazard rate into discrete events, injects energy
per event scaled by surprise (1 - V), habituates V with a Rescorla-Wagner
update, and decays energy between events. Engagement is concern-weighted
energy.
"""

import numpy as np

from threatdyn import (ThreatGlobals, ThreatParams, initial_threat_state,
                       media_amplification, step_threat)

params = ThreatParams(hazard_intensity=0.8, initial_concern=0.9)
globals_ = ThreatGlobals(habituation_rate=0.35, energy_decay=0.15,
                         threat_pct_of_media=0.6, tv_media_use=0.5,
                         social_media_use=0.7, neuroticism=0.6)
dt = 0.25

amp = media_amplification(globals_.threat_pct_of_media, globals_.tv_media_use,
                          globals_.social_media_use)
print(f"media amplification: {amp:.3f}  ->  "
      f"{params.hazard_intensity * amp:.3f} events per unit time")

# The first events inject nearly a full unit of energy; once V approaches its
# asymptote the same events barely register (habituation).
state = initial_threat_state()
print(f"\n{'t':>6} {'events':>7} {'V':>7} {'added':>7} {'energy':>8} {'engage':>8}")
for step in range(1, 81):
    state = step_threat(state, params, globals_, dt)
    if step % 8 == 0:
        print(f"{step * dt:6.1f} {state.event_count:7d} {state.assoc_strength:7.3f} "
              f"{state.added_energy_last:7.3f} {state.energy:8.3f} "
              f"{state.engagement:8.3f}")

# Faster habituation always injects less total energy over the same horizon.
print("\ncumulative injected energy by habituation rate:")
for rate in np.linspace(0.05, 0.95, 7):
    g = ThreatGlobals(habituation_rate=float(rate), energy_decay=0.15,
                      threat_pct_of_media=0.6, tv_media_use=0.5,
                      social_media_use=0.7, neuroticism=0.6)
    s = initial_threat_state()
    total = 0.0
    for _ in range(200):
        before = s.energy
        s = step_threat(s, params, g, dt)
        total += s.energy / (1 - 0.15 * dt) - before
    print(f"  rate {rate:4.2f}: {total:7.3f}")

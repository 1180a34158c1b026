"""Sample a design of experiments, run it, and reproduce the headline analyses.

A 4,000-run sweep is enough to see the full structure: the engagement sign
pattern on anti-immigrant sentiment, the nationalism gating of financial
threat, and the religiosity gating of media pressure.
"""

from threatdyn import (DesignSpec, SimConfig, analytics, execute_sweep,
                       records_table, sample_design)

spec = DesignSpec(n_runs=4000, seed=42)
config = SimConfig(design=spec)
result = execute_sweep(sample_design(spec), config, workers=4)
table = records_table(result.records)

reg = analytics.run_regression_analysis(table, "full-regression")
print(analytics.format_regression_text(reg, "anti_immigrant_sentiment",
                                       title="threat engagement clusters"))

print("\nfinancial event count, by nationalism quartile:")
for name in ("low-nationalism", "high-nationalism"):
    sub = analytics.run_regression_analysis(table, name)
    b = sub.coef("hazard_event_count_financial")
    p = sub.p("hazard_event_count_financial")
    stars = analytics.significance_stars(p)
    print(f"  {name:17s} coef={b:+.5f}{stars:3s} (p={p:.3g})")

print("\nmedia threat share, by sociographic prudery quartile:")
for name in ("low-prudery", "high-prudery"):
    sub = analytics.run_regression_analysis(table, name)
    b = sub.coef("ThreatPctOfMedia")
    p = sub.p("ThreatPctOfMedia")
    stars = analytics.significance_stars(p)
    print(f"  {name:17s} coef={b:+.4f}{stars:3s} (p={p:.3g})")

corr = analytics.pearson_matrix(
    table, ["nationalism_level", "anti_immigrant_sentiment", "Rel_frequency",
            "threat_soc_pred", "threat_con_fin_nat"])
print("\ncorrelations:")
print("  " + "  ".join(f"{l[:12]:>12}" for l in corr.labels))
for label, row in zip(corr.labels, corr.matrix):
    print(f"  {label[:12]:>12} " + " ".join(f"{v:+.3f}" for v in row))

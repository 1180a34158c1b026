"""Distribution shapes across the swept parameter space.

Anthropomorphic promiscuity comes out bell-ish with a small positive center;
threat engagements come out strongly right-skewed (most runs engage rarely,
a few engage heavily).
"""

import numpy as np

from threatdyn import DesignSpec, SimConfig, analytics, execute_sweep, \
    records_table, sample_design

spec = DesignSpec(n_runs=4000, seed=7)
result = execute_sweep(sample_design(spec), SimConfig(design=spec), workers=4)
table = records_table(result.records)


def text_histogram(column, bins=15, width=46):
    edges, counts = analytics.histogram(table, column, bins)
    skew = analytics.skewness(table, column)
    median = float(np.median(table[column]))
    print(f"\n{column}  (median {median:+.3f}, skewness {skew:+.2f})")
    peak = counts.max()
    for i, count in enumerate(counts):
        bar = "#" * int(width * count / peak)
        print(f"  [{edges[i]:+8.3f}, {edges[i + 1]:+8.3f}) {count:5d} {bar}")


text_histogram("anthropomorphic_promiscuity")
text_histogram("engagement_1")     # contagion engagement: long tail
text_histogram("nationalism_level")

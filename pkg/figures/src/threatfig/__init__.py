"""Publication-style figures rendered from simulator sweep CSVs."""

from .csvdata import (SCHEMA_COLUMNS, SUBSET_RULES, CsvFormatError,
                      read_sweep_csv, subset_rows)
from .render import fig_corr_heatmap, fig_histograms, fig_scatter_quadrant

__version__ = "0.1.0"

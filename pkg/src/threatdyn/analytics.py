"""Statistics over sweep tables: OLS with classical inference, correlation
matrices, quartile subsetting, histograms and skewness, and sign-structure
verification.

Tables are plain dicts of equal-length numpy arrays keyed by CSV column name
(see sweep.records_table). Student-t tail probabilities are computed from the
regularized incomplete beta function evaluated by continued fractions, which
stays accurate at the residual degrees of freedom of the full sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import PARAM_COLUMNS
from .sweep import SchemaError


class InsufficientDataError(ValueError):
    """Not enough rows (or columns) for the requested statistic."""


class SingularDesignError(ValueError):
    """Design matrix is rank deficient; message names the collinear columns."""


# --- Student-t inference -----------------------------------------------------

_BETACF_MAX_ITER = 1000
_BETACF_EPS = 1e-14
_FPMIN = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETACF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETACF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_pvalue(t: float, df: int) -> float:
    """Two-sided Student-t tail probability."""
    if df < 1:
        raise ValueError(f"t_pvalue: df must be >= 1, got {df}")
    if math.isnan(t):
        return math.nan
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def f_pvalue(f: float, df1: int, df2: int) -> float:
    """Upper tail probability of the F distribution."""
    if df1 < 1 or df2 < 1:
        raise ValueError(f"f_pvalue: degrees of freedom must be >= 1, got {df1}, {df2}")
    if math.isinf(f):
        return 0.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x)


# --- ordinary least squares --------------------------------------------------

_STAR_THRESHOLDS = ((0.01, "***"), (0.05, "**"), (0.1, "*"))


def significance_stars(p: float) -> str:
    for threshold, stars in _STAR_THRESHOLDS:
        if p < threshold:
            return stars
    return ""


@dataclass(frozen=True)
class RegressionResult:
    names: tuple[str, ...]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_statistic: float
    n_obs: int
    df_residual: int

    @property
    def stars(self) -> tuple[str, ...]:
        return tuple(significance_stars(p) for p in self.p_values)

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.names.index(name)])

    def p(self, name: str) -> float:
        return float(self.p_values[self.names.index(name)])


def _collinear_columns(X: np.ndarray, names, tol=1e-8):
    """Greedy scan: name every column that is (numerically) in the span of
    the columns before it."""
    n = X.shape[0]
    offenders = []
    basis = np.empty((n, 0))
    for j in range(X.shape[1]):
        col = X[:, j]
        if basis.shape[1]:
            proj, *_ = np.linalg.lstsq(basis, col, rcond=None)
            resid = col - basis @ proj
        else:
            resid = col
        scale = np.linalg.norm(col)
        if np.linalg.norm(resid) <= tol * max(scale, 1.0):
            offenders.append(names[j])
        else:
            basis = np.column_stack([basis, col])
    return offenders


def ols_fit(X, y, names) -> RegressionResult:
    """Classical OLS with an explicit design matrix (include the intercept
    column yourself; named analyses below do).

    Coefficients solve the least squares problem; standard errors come from
    sigma^2 (X'X)^-1; R^2 uses centred total variance; F tests all
    non-intercept slopes jointly.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, k = X.shape
    names = tuple(names)
    if len(names) != k:
        raise ValueError(f"ols_fit: {k} columns but {len(names)} names")
    if n <= k:
        raise InsufficientDataError(f"ols_fit: need n > k, got n={n}, k={k}")
    if np.linalg.matrix_rank(X) < k:
        offenders = _collinear_columns(X, names)
        raise SingularDesignError(
            "design matrix is rank deficient; collinear columns: "
            + ", ".join(offenders or ["<undetermined>"]))

    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    rss = float(resid @ resid)
    df_resid = n - k
    sigma2 = rss / df_resid
    cov = sigma2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, beta / se, np.inf)
    p = np.array([t_pvalue(float(ti), df_resid) for ti in t])

    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - rss / tss if tss > 0 else 0.0
    adj = 1.0 - (1.0 - r2) * (n - 1) / df_resid
    k_slopes = k - 1
    if k_slopes > 0 and rss > 0:
        f = ((tss - rss) / k_slopes) / (rss / df_resid)
    else:
        f = math.inf
    return RegressionResult(names, beta, se, t, p, r2, adj, f, n, df_resid)


def design_matrix(table, columns):
    """Stack named table columns behind an intercept column."""
    missing = [c for c in columns if c not in table]
    if missing:
        raise SchemaError(f"columns not in table: {', '.join(missing)}")
    n = len(next(iter(table.values())))
    X = np.column_stack([np.ones(n)] + [np.asarray(table[c], dtype=np.float64)
                                        for c in columns])
    return X, ("Constant",) + tuple(columns)


def regress(table, y_column, x_columns) -> RegressionResult:
    """OLS of one table column on others (intercept added automatically)."""
    if y_column not in table:
        raise SchemaError(f"column not in table: {y_column}")
    X, names = design_matrix(table, x_columns)
    return ols_fit(X, np.asarray(table[y_column], dtype=np.float64), names)


# --- correlation -------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationMatrix:
    labels: tuple[str, ...]
    matrix: np.ndarray  # symmetric, unit diagonal; nan rows for constant columns


def pearson_matrix(table, columns) -> CorrelationMatrix:
    """Pairwise Pearson correlations; constant columns yield NaN entries."""
    missing = [c for c in columns if c not in table]
    if missing:
        raise SchemaError(f"columns not in table: {', '.join(missing)}")
    data = np.column_stack([np.asarray(table[c], dtype=np.float64) for c in columns])
    n = data.shape[0]
    if n < 2:
        raise InsufficientDataError(f"pearson_matrix: need >= 2 rows, got {n}")
    centered = data - data.mean(axis=0)
    std = np.sqrt((centered ** 2).mean(axis=0))
    with np.errstate(divide="ignore", invalid="ignore"):
        z = centered / std
        m = (z.T @ z) / n
    m = (m + m.T) / 2.0
    np.fill_diagonal(m, 1.0)
    m[std == 0.0, :] = np.nan
    m[:, std == 0.0] = np.nan
    return CorrelationMatrix(tuple(columns), m)


# --- subsetting, histograms, skewness ----------------------------------------

SUBSET_RULES = ("lowest_quartile", "highest_quartile", "below_median", "above_median")


@dataclass(frozen=True)
class SubsetFilter:
    column: str
    rule: str

    def validate(self):
        if self.rule not in SUBSET_RULES:
            raise ValueError(f"unknown subset rule {self.rule!r} "
                             f"(expected one of {SUBSET_RULES})")


def subset_mask(table, filt: SubsetFilter) -> np.ndarray:
    """Boolean mask of the rows selected by the filter.

    Quartile subsets take exactly floor(n/4) rows (medians floor(n/2)); ties
    at the cut are broken by ascending run_id.
    """
    filt.validate()
    if filt.column not in table:
        raise SchemaError(f"column not in table: {filt.column}")
    values = np.asarray(table[filt.column], dtype=np.float64)
    n = len(values)
    if n == 0:
        raise InsufficientDataError("subset of an empty table")
    run_ids = table.get("run_id", np.arange(n))
    take = n // 4 if filt.rule.endswith("quartile") else n // 2
    keys = -values if filt.rule in ("highest_quartile", "above_median") else values
    order = np.lexsort((run_ids, keys))
    mask = np.zeros(n, dtype=bool)
    mask[order[:take]] = True
    return mask


def quartile_subset(table, filt: SubsetFilter):
    """Table restricted to the rows selected by the filter."""
    mask = subset_mask(table, filt)
    return {name: np.asarray(col)[mask] for name, col in table.items()}


def histogram(table, column, n_bins):
    """Equal-width histogram over [min, max]; returns (edges, counts)."""
    if column not in table:
        raise SchemaError(f"column not in table: {column}")
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    values = np.asarray(table[column], dtype=np.float64)
    if len(values) == 0:
        raise InsufficientDataError(f"histogram: column {column!r} is empty")
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        counts, edges = np.histogram(values, bins=n_bins)
    else:
        counts, edges = np.histogram(values, bins=n_bins, range=(lo, hi))
    return edges, counts


def skewness(table, column) -> float:
    """Population-moment skewness m3 / m2^1.5."""
    if column not in table:
        raise SchemaError(f"column not in table: {column}")
    values = np.asarray(table[column], dtype=np.float64)
    if len(values) == 0:
        raise InsufficientDataError(f"skewness: column {column!r} is empty")
    d = values - values.mean()
    m2 = float((d ** 2).mean())
    if m2 == 0.0:
        return 0.0
    m3 = float((d ** 3).mean())
    return m3 / m2 ** 1.5


def is_unimodal(counts, z=3.0) -> bool:
    """Rise-then-fall check with a Poisson noise allowance: a dip or bump is
    only disqualifying if it exceeds z standard deviations of the higher bin."""
    counts = np.asarray(counts, dtype=np.float64)
    peak = int(np.argmax(counts))
    for i in range(peak):
        if counts[i] > counts[i + 1] + z * math.sqrt(counts[i + 1] + 1.0):
            return False
    for i in range(peak, len(counts) - 1):
        if counts[i + 1] > counts[i] + z * math.sqrt(counts[i] + 1.0):
            return False
    return True


# --- sign-structure verification ----------------------------------------------

def sign_check(reg: RegressionResult, expected: dict, alpha: float):
    """Check coefficient signs and significance against expectations.

    `expected` maps predictor name to '+', '-', or 'any'. Returns
    (passed, report) where report lists one verdict line per name.
    """
    lines = []
    ok = True
    for name, sign in expected.items():
        if name not in reg.names:
            raise SchemaError(f"sign_check: {name!r} not among regression predictors")
        b = reg.coef(name)
        p = reg.p(name)
        good_sign = sign == "any" or (sign == "+" and b > 0) or (sign == "-" and b < 0)
        significant = p < alpha
        verdict = "pass" if good_sign and significant else "FAIL"
        ok = ok and (verdict == "pass")
        lines.append(f"{name}: coef={b:+.6g} p={p:.3g} expected {sign} "
                     f"at alpha={alpha} -> {verdict}")
    return ok, lines


# --- named analyses (the reference predictor sets) ----------------------------

#: Engagement columns keyed by dimension name.
ENGAGEMENT_BY_DIMENSION = {
    "contagion": "engagement_1",
    "financial": "engagement_2",
    "natural": "engagement_3",
    "predation": "engagement_4",
    "social": "engagement_5",
}

#: Predictors of the engagement-cluster validation regression.
ENGAGEMENT_PREDICTORS = (
    "engagement_5",  # social
    "engagement_2",  # financial
    "engagement_1",  # contagion
    "engagement_3",  # natural
    "engagement_4",  # predation
)

#: Predictor set of the anti-immigrant drivers tables, in table order.
DRIVER_PREDICTORS = (
    "tvMediaUse",
    "ThreatPctOfMedia",
    "socialMediaUse",
    "Rel_frequency",
    "Initial_concern_5",   # social concern
    "Initial_concern_2",   # financial concern
    "Initial_concern_1",   # contagion concern
    "Initial_concern_4",   # predation concern
    "Hazard_intensity_contagion",
    "Hazard_intensity_financial",
    "Hazard_intensity_natural",
    "Hazard_intensity_predation",
    "Hazard_intensity_social",
    "habituationRate",
    "energyDecay",
    "Big_5_openness",
    "Big_5_conscientiousness",
    "Big_5_agreeableness",
    "hazard_event_count_contagion",
    "hazard_event_count_financial",
    "hazard_event_count_natural",
    "hazard_event_count_predation",
    "hazard_event_count_social",
    "nationalism_level",
)

_SUBSET_ANALYSES = {
    "low-nationalism": SubsetFilter("nationalism_level", "lowest_quartile"),
    "high-nationalism": SubsetFilter("nationalism_level", "highest_quartile"),
    "low-prudery": SubsetFilter("sociographic_prudery", "lowest_quartile"),
    "high-prudery": SubsetFilter("sociographic_prudery", "highest_quartile"),
    "low-ap": SubsetFilter("anthropomorphic_promiscuity", "lowest_quartile"),
    "high-ap": SubsetFilter("anthropomorphic_promiscuity", "highest_quartile"),
}

REGRESSION_ANALYSES = ("full-regression", "all-drivers", "nationalism-drivers",
                       *_SUBSET_ANALYSES)
ANALYSES = REGRESSION_ANALYSES + ("correlations", "histograms")

#: Columns featured in the distribution analysis.
HISTOGRAM_COLUMNS = ("anthropomorphic_promiscuity",) + ENGAGEMENT_PREDICTORS


def run_regression_analysis(table, name: str) -> RegressionResult:
    """Run one named regression: the engagement validation regression, the
    full or subset driver tables, or the nationalism driver table."""
    if name == "full-regression":
        return regress(table, "anti_immigrant_sentiment", ENGAGEMENT_PREDICTORS)
    if name == "all-drivers":
        return regress(table, "anti_immigrant_sentiment", DRIVER_PREDICTORS)
    if name == "nationalism-drivers":
        return regress(table, "nationalism_level", PARAM_COLUMNS)
    if name in _SUBSET_ANALYSES:
        sub = quartile_subset(table, _SUBSET_ANALYSES[name])
        return regress(sub, "anti_immigrant_sentiment", DRIVER_PREDICTORS)
    raise ValueError(f"unknown regression analysis {name!r} "
                     f"(expected one of {REGRESSION_ANALYSES})")


# --- plain-text and CSV table rendering ---------------------------------------

def format_regression_text(reg: RegressionResult, dependent: str, title: str) -> str:
    """Aligned table: coefficient with stars, standard error in parentheses."""
    width = max(len(n) for n in reg.names) + 2
    lines = [title, f"Dependent variable: {dependent}", ""]
    order = list(range(1, len(reg.names))) + [0]  # slopes first, constant last
    for i in order:
        coef = f"{reg.coefficients[i]:,.3f}{significance_stars(float(reg.p_values[i]))}"
        se = f"({reg.standard_errors[i]:,.3f})"
        lines.append(f"{reg.names[i]:<{width}}{coef:>18} {se}")
    lines.append("")
    lines.append(f"{'Observations':<{width}}{reg.n_obs:>18,}")
    lines.append(f"{'R2':<{width}}{reg.r_squared:>18.3f}")
    lines.append(f"{'Adjusted R2':<{width}}{reg.adj_r_squared:>18.3f}")
    k_slopes = len(reg.names) - 1
    f_stars = significance_stars(f_pvalue(reg.f_statistic, max(k_slopes, 1),
                                          reg.df_residual))
    lines.append(f"{'F Statistic':<{width}}{reg.f_statistic:>18,.3f}{f_stars} "
                 f"(df = {k_slopes}; {reg.df_residual})")
    lines.append("Note: *p<0.1; **p<0.05; ***p<0.01")
    return "\n".join(lines)


def format_regression_csv(reg: RegressionResult) -> str:
    lines = ["name,coefficient,standard_error,t_stat,p_value,stars"]
    for i, name in enumerate(reg.names):
        lines.append(f"{name},{float(reg.coefficients[i])!r},"
                     f"{float(reg.standard_errors[i])!r},"
                     f"{float(reg.t_stats[i])!r},{float(reg.p_values[i])!r},"
                     f"{significance_stars(float(reg.p_values[i]))}")
    lines.append(f"# n={reg.n_obs} r2={float(reg.r_squared)!r} "
                 f"adj_r2={float(reg.adj_r_squared)!r} "
                 f"f={float(reg.f_statistic)!r} df_residual={reg.df_residual}")
    return "\n".join(lines)


def format_correlation_csv(corr: CorrelationMatrix) -> str:
    lines = ["," + ",".join(corr.labels)]
    for label, row in zip(corr.labels, corr.matrix):
        cells = ",".join("" if math.isnan(v) else repr(float(v)) for v in row)
        lines.append(f"{label},{cells}")
    return "\n".join(lines)

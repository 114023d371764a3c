"""Decay-law fitting and the GAPELMAPER structuredness metric.

Autocorrelations of human-written long texts fall off roughly as a
power law C(tau) ~ tau^-alpha (a straight line in log-log axes), while
memoryless generation produces exponential decay C(tau) ~ exp(-lambda
tau) (a straight line in log-linear axes). Both straight lines are fit
by ordinary least squares on ln C; each fit is scored by its mean
absolute percentage error (MAPE) against the measured curve in linear
space. GAPELMAPER is the ratio MAPE_power / MAPE_exp: below 1 the text
decays power-law-like (structured), above 1 exponential-like
(unstructured).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .autocorr import AutocorrelationCurve, autocorrelation_fft
from .embeddings import EmbeddingTable, embed_sequence, tokenize
from .errors import (
    DegenerateFit,
    InsufficientPositiveLags,
    TextTooShort,
    ZeroDenominator,
)

GRID_GEOMETRIC = "geometric20"
GRID_ALL = "all"
GRID_MODES = (GRID_GEOMETRIC, GRID_ALL)

POWER = "power"
EXPONENTIAL = "exponential"

#: Fits need at least this many positive-valued lags ...
MIN_FIT_POINTS = 10
#: ... spanning at least this ratio between largest and smallest lag.
MIN_LAG_SPAN = 10.0

#: Smallest usable fitting range: one decade above the default tau_min.
MIN_TAU_MAX = 100

#: MAPEs at or below this are indistinguishable from an exact fit; when
#: both laws land here the curve is law-ambiguous (e.g. constant).
DEGENERATE_MAPE = 1e-12


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for the end-to-end text analysis."""

    embeddings_path: str | None = None
    tau_min: int = 10
    tau_max: int = 10_000
    grid_mode: str = GRID_GEOMETRIC
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.tau_min < 1 or self.tau_min >= self.tau_max:
            raise ValueError("need 1 <= tau_min < tau_max")
        if self.grid_mode not in GRID_MODES:
            raise ValueError(f"grid_mode must be one of {GRID_MODES}")


@dataclass(frozen=True)
class LagSelection:
    """Lags retained for fitting (all have C(tau) > 0 on the source curve)."""

    lags: np.ndarray
    grid_mode: str
    dropped_nonpositive_fraction: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lags", np.asarray(self.lags, dtype=np.int64))

    def __len__(self) -> int:
        return self.lags.size


@dataclass(frozen=True)
class LawFit:
    """One fitted decay law: ln C = intercept + slope * x.

    The regressor x is ln(tau) for the power law and tau for the
    exponential law, so slope is -alpha resp. -lambda. ``mape`` is the
    mean absolute percentage error of the back-transformed prediction
    against the measured curve, as a fraction.
    """

    law: str
    intercept: float
    slope: float
    mape: float
    n_points: int

    def predict(self, lags: np.ndarray) -> np.ndarray:
        x = np.log(lags) if self.law == POWER else np.asarray(lags, dtype=np.float64)
        return np.exp(self.intercept + self.slope * x)


@dataclass(frozen=True)
class GapelmaperReport:
    """Metric output plus provenance of the run that produced it."""

    mape_power: float
    mape_exp: float
    gapelmaper: float
    degenerate: bool
    n_tokens: int
    n_vectors: int
    tau_min: int
    tau_max: int
    grid_mode: str
    dropped_oov_fraction: float
    dropped_nonpositive_fraction: float
    embedding_name: str

    def to_dict(self) -> dict:
        return asdict(self)


def geometric_lag_grid(tau_min: int, tau_max: int) -> list[int]:
    """Integer lags at 20 points per decade: round(tau_min * 10^(j/20))."""
    lags: list[int] = []
    j = 0
    while True:
        lag = round(tau_min * 10 ** (j / 20))
        if lag > tau_max:
            break
        if not lags or lag != lags[-1]:
            lags.append(lag)
        j += 1
    return lags


def select_fit_lags(
    curve: AutocorrelationCurve,
    tau_min: int = 10,
    tau_max: int | None = None,
    grid_mode: str = GRID_GEOMETRIC,
) -> LagSelection:
    """Choose the lags both laws will be fit on.

    ``geometric20`` places ~20 lags per decade so each decade carries
    equal weight; ``all`` takes every integer lag in range. Lags where
    C(tau) <= 0 are removed from the selection (their logarithm is
    undefined) and the removed fraction is recorded, so both fits see
    the identical support.
    """
    if tau_max is None:
        tau_max = curve.max_lag
    if tau_min < 1:
        raise ValueError("tau_min must be at least 1")
    if tau_max > curve.max_lag:
        raise ValueError(f"tau_max {tau_max} beyond curve max lag {curve.max_lag}")
    if grid_mode == GRID_GEOMETRIC:
        candidates = np.asarray(geometric_lag_grid(tau_min, tau_max), dtype=np.int64)
    elif grid_mode == GRID_ALL:
        candidates = np.arange(tau_min, tau_max + 1, dtype=np.int64)
    else:
        raise ValueError(f"grid_mode must be one of {GRID_MODES}")
    if candidates.size == 0:
        raise InsufficientPositiveLags("empty lag grid")
    keep = curve.values_at(candidates) > 0.0
    lags = candidates[keep]
    dropped = 1.0 - lags.size / candidates.size
    if lags.size < MIN_FIT_POINTS or lags[-1] / lags[0] < MIN_LAG_SPAN:
        raise InsufficientPositiveLags(
            f"{lags.size} positive-valued lags"
            + (f" spanning {lags[-1] / lags[0]:.2f}x" if lags.size else "")
            + f"; need >= {MIN_FIT_POINTS} spanning >= {MIN_LAG_SPAN:g}x"
        )
    return LagSelection(lags, grid_mode, dropped)


def _fit(curve: AutocorrelationCurve, selection: LagSelection, law: str) -> LawFit:
    lags = selection.lags
    c = curve.values_at(lags)
    if np.any(c <= 0.0):
        raise ValueError("selection contains non-positive values for this curve")
    x = np.log(lags) if law == POWER else lags.astype(np.float64)
    if lags.size < 2 or np.ptp(x) == 0.0:
        raise DegenerateFit("zero variance in regressor")
    slope, intercept = np.polyfit(x, np.log(c), 1)
    pred = np.exp(intercept + slope * x)
    mape = float(np.mean(np.abs(c - pred) / np.abs(c)))
    return LawFit(law, float(intercept), float(slope), mape, int(lags.size))


def fit_power_law(curve: AutocorrelationCurve, selection: LagSelection) -> LawFit:
    """Least-squares line through (ln tau, ln C): C-hat = e^intercept * tau^slope."""
    return _fit(curve, selection, POWER)


def fit_exponential_law(curve: AutocorrelationCurve, selection: LagSelection) -> LawFit:
    """Least-squares line through (tau, ln C): C-hat = e^(intercept + slope*tau)."""
    return _fit(curve, selection, EXPONENTIAL)


def gapelmaper(
    power_fit: LawFit,
    exp_fit: LawFit,
    *,
    n_tokens: int = 0,
    n_vectors: int = 0,
    tau_min: int = 0,
    tau_max: int = 0,
    grid_mode: str = "",
    dropped_oov_fraction: float = 0.0,
    dropped_nonpositive_fraction: float = 0.0,
    embedding_name: str = "",
) -> GapelmaperReport:
    """Form the metric from the two fits (must share one lag selection).

    The ratio keeps the exact floating operands: gapelmaper ==
    mape_power / mape_exp bit for bit. When both MAPEs are zero at
    floating precision the curve satisfies both laws (e.g. a constant,
    which is exactly tau^0 and e^0); the ratio is reported as 1.0 with
    the ``degenerate`` flag set.
    """
    if power_fit.law != POWER or exp_fit.law != EXPONENTIAL:
        raise ValueError("pass (power_fit, exp_fit) in that order")
    if power_fit.n_points != exp_fit.n_points:
        raise ValueError("fits were made over different lag selections")
    mape_power, mape_exp = power_fit.mape, exp_fit.mape
    if mape_power <= DEGENERATE_MAPE and mape_exp <= DEGENERATE_MAPE:
        ratio, degenerate = 1.0, True
    elif mape_exp == 0.0:
        raise ZeroDenominator("exponential fit is exact but power fit is not")
    else:
        ratio, degenerate = mape_power / mape_exp, False
    return GapelmaperReport(
        mape_power=mape_power,
        mape_exp=mape_exp,
        gapelmaper=ratio,
        degenerate=degenerate,
        n_tokens=n_tokens,
        n_vectors=n_vectors,
        tau_min=tau_min,
        tau_max=tau_max,
        grid_mode=grid_mode,
        dropped_oov_fraction=dropped_oov_fraction,
        dropped_nonpositive_fraction=dropped_nonpositive_fraction,
        embedding_name=embedding_name,
    )


def effective_tau_max(n_vectors: int, requested: int) -> int:
    """Largest lag actually measured: capped at half the sequence length."""
    return min(requested, n_vectors // 2)


def analyze_text(
    raw_text: str,
    table: EmbeddingTable,
    config: AnalysisConfig | None = None,
) -> GapelmaperReport:
    """End-to-end structuredness measurement of one text.

    tokenize -> embed -> autocorrelation (FFT path) over lags up to
    min(config.tau_max, N/2) -> select fitting lags -> fit both laws ->
    report. Raises :class:`TextTooShort` unless the effective lag range
    reaches at least one decade above tau_min (N >= 200 with defaults).
    """
    if config is None:
        config = AnalysisConfig()
    tokens = tokenize(raw_text)
    seq = embed_sequence(tokens, table)
    tau_max = effective_tau_max(seq.n, config.tau_max)
    if tau_max < MIN_TAU_MAX:
        raise TextTooShort(
            f"text yields {seq.n} vectors; need at least {2 * MIN_TAU_MAX} "
            f"for a usable lag range"
        )
    curve = autocorrelation_fft(seq, tau_max)
    selection = select_fit_lags(curve, config.tau_min, tau_max, config.grid_mode)
    power_fit = fit_power_law(curve, selection)
    exp_fit = fit_exponential_law(curve, selection)
    return gapelmaper(
        power_fit,
        exp_fit,
        n_tokens=len(tokens),
        n_vectors=seq.n,
        tau_min=config.tau_min,
        tau_max=tau_max,
        grid_mode=config.grid_mode,
        dropped_oov_fraction=seq.dropped_oov_fraction,
        dropped_nonpositive_fraction=selection.dropped_nonpositive_fraction,
        embedding_name=table.name,
    )

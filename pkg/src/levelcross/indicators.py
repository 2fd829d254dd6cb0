"""Market indicators assembled from crossing, resampling, and DFA outputs.

Three headline indicators per index:

* activity: the q=0 crossing total per step (the integral of the rate curve);
  higher means more frequent level visits, i.e. a livelier market.
* development index: absolute relative difference of the crossing total
  against the shuffle null. Small means weak temporal correlation, i.e. a
  more developed/efficient market. The sign of the underlying difference
  classifies the series as correlated / anti-correlated / neutral.
* risk index: absolute relative difference against the surrogate null. Large
  means a marginal distribution far from Gaussian (fat tails), i.e. elevated
  risk of large moves. The sign classifies fat-tailed / thin-tailed / neutral.

A DFA Hurst estimate cross-validates the correlation verdict (h > 0.5 goes
with "correlated").
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crossing import (
    DEFAULT_N_LEVELS,
    CrossingCurve,
    LevelGrid,
    QMomentCurve,
    WaitingTimeTable,
    crossing_curve,
    q_moments,
    waiting_times,
)
from .dfa import DEFAULT_MIN_WINDOW, DEFAULT_N_WINDOWS, HurstEstimate, dfa_hurst
from .errors import ConfigError, TooFewReports
from .resampling import ResamplingResult, resampling_test

SIGN_CORRELATED = "correlated"
SIGN_ANTI = "anti-correlated"
SIGN_FAT = "fat-tailed"
SIGN_THIN = "thin-tailed"
SIGN_NEUTRAL = "neutral"

DEFAULT_WAITING_LEVELS = (0.0, -0.005, 0.005, -0.01, 0.01, -0.02, 0.02)
DEFAULT_Q_VALUES = tuple(np.arange(0.0, 10.5, 0.5))


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for one full per-index analysis."""

    n_levels: int = DEFAULT_N_LEVELS
    span_mode: str = "data"  # "data": +-max|y|; "sigma": +-span_sigmas * std
    span_sigmas: float = 6.0
    q_values: tuple[float, ...] = DEFAULT_Q_VALUES
    q_center: float = 0.0
    realizations: int = 20
    waiting_levels: tuple[float, ...] = DEFAULT_WAITING_LEVELS
    dfa_min_window: int = DEFAULT_MIN_WINDOW
    dfa_max_window: int | None = None
    dfa_n_windows: int = DEFAULT_N_WINDOWS
    neutral_band: float = 0.02

    def validate(self) -> None:
        if self.n_levels < 3 or self.n_levels % 2 == 0:
            raise ConfigError(f"n_levels must be odd and >= 3, got {self.n_levels}")
        if self.realizations < 1:
            raise ConfigError(f"realizations must be >= 1, got {self.realizations}")
        if self.neutral_band < 0:
            raise ConfigError(f"neutral_band must be >= 0, got {self.neutral_band}")
        if len(self.q_values) == 0 or any(q < 0 for q in self.q_values):
            raise ConfigError("q_values must be a non-empty list of exponents >= 0")


@dataclass(frozen=True, eq=False)
class QSpectrum:
    """Generalized crossing totals vs q: original, shuffled mean, surrogate mean."""

    original: QMomentCurve
    shuffled_mean: QMomentCurve
    surrogate_mean: QMomentCurve


@dataclass(frozen=True, eq=False)
class IndexReport:
    """All indicators for one index."""

    name: str
    n_steps: int
    activity: float  # q=0 crossing total, per step
    activity_raw: float  # same integral over raw counts (= activity * n_steps)
    development_index: float
    development_sign: str
    risk_index: float
    tail_sign: str
    hurst: HurstEstimate
    waiting_table: WaitingTimeTable
    q_spectrum: QSpectrum
    crossing: CrossingCurve
    shuffle_test: ResamplingResult
    surrogate_test: ResamplingResult
    dropped_rows: int = 0


@dataclass(frozen=True)
class Ranking:
    """Index orderings: most active, most developed, and safest first."""

    by_activity: tuple[str, ...]
    by_development: tuple[str, ...]
    by_risk: tuple[str, ...]
    dominance_note: str | None = None


def _classify(signed: float, band: float, positive: str, negative: str) -> str:
    if signed > band:
        return positive
    if signed < -band:
        return negative
    return SIGN_NEUTRAL


def build_report(y, config: AnalysisConfig | None = None, seed=None) -> IndexReport:
    """Run the full analysis pipeline on one return series.

    All randomness (shuffle and surrogate ensembles) derives from the single
    ``seed``, so reports are reproducible. ``seed`` may be an int or a numpy
    SeedSequence.
    """
    cfg = config or AnalysisConfig()
    cfg.validate()

    grid = LevelGrid.for_series(y, cfg.n_levels, cfg.span_mode, cfg.span_sigmas)
    curve = crossing_curve(y, grid)
    q = np.asarray(cfg.q_values, dtype=float)

    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    shuffle_seed, surrogate_seed = root.spawn(2)
    shuffle_test = resampling_test(
        y, "shuffle", cfg.realizations, q, grid, shuffle_seed, cfg.q_center
    )
    surrogate_test = resampling_test(
        y, "surrogate", cfg.realizations, q, grid, surrogate_seed, cfg.q_center
    )

    activity = q_moments(curve, 0.0, cfg.q_center).n_tot[0]
    hurst = dfa_hurst(y, cfg.dfa_min_window, cfg.dfa_max_window, cfg.dfa_n_windows)
    waiting = waiting_times(curve, cfg.waiting_levels)

    spectrum = QSpectrum(
        original=QMomentCurve(q, np.array([c.original for c in shuffle_test.per_q])),
        shuffled_mean=QMomentCurve(q, np.array([c.null_mean for c in shuffle_test.per_q])),
        surrogate_mean=QMomentCurve(q, np.array([c.null_mean for c in surrogate_test.per_q])),
    )
    return IndexReport(
        name=getattr(y, "name", "series"),
        n_steps=curve.n_steps,
        activity=float(activity),
        activity_raw=float(activity) * curve.n_steps,
        development_index=shuffle_test.abs_rel_diff,
        development_sign=_classify(
            shuffle_test.signed_rel_diff, cfg.neutral_band, SIGN_CORRELATED, SIGN_ANTI
        ),
        risk_index=surrogate_test.abs_rel_diff,
        tail_sign=_classify(
            surrogate_test.signed_rel_diff, cfg.neutral_band, SIGN_FAT, SIGN_THIN
        ),
        hurst=hurst,
        waiting_table=waiting,
        q_spectrum=spectrum,
        crossing=curve,
        shuffle_test=shuffle_test,
        surrogate_test=surrogate_test,
        dropped_rows=getattr(y, "dropped_rows", 0),
    )


def rank_indices(reports) -> Ranking:
    """Order indices by activity, stage of development, and risk.

    Returns three orderings: by activity (descending; most active first), by
    development index (ascending; most developed first), and by risk index
    (ascending; safest first). Ties break lexicographically by name. When one
    index leads on two or more criteria a dominance note says so.
    """
    reports = list(reports)
    if len(reports) < 2:
        raise TooFewReports(f"ranking needs at least 2 reports, got {len(reports)}")

    by_activity = tuple(r.name for r in sorted(reports, key=lambda r: (-r.activity, r.name)))
    by_development = tuple(
        r.name for r in sorted(reports, key=lambda r: (r.development_index, r.name))
    )
    by_risk = tuple(r.name for r in sorted(reports, key=lambda r: (r.risk_index, r.name)))

    leaders = {
        "most active": by_activity[0],
        "most developed": by_development[0],
        "lowest risk": by_risk[0],
    }
    note = None
    for name in sorted({*leaders.values()}):
        led = [criterion for criterion, leader in leaders.items() if leader == name]
        if len(led) >= 2:
            note = f"{name} leads on {len(led)} of 3 criteria: {', '.join(led)}"
            break
    return Ranking(
        by_activity=by_activity,
        by_development=by_development,
        by_risk=by_risk,
        dominance_note=note,
    )

"""Level-crossing analysis of financial return series.

Crossing-rate curves, waiting times, generalized crossing moments,
shuffle/surrogate resampling tests, DFA Hurst estimation, and the market
indicators built from them (activity, stage of development, risk).
"""

from .crossing import (
    CrossingCurve,
    LevelGrid,
    QMomentCurve,
    WaitingTime,
    WaitingTimeTable,
    crossing_curve,
    gaussian_iid_crossing_prob,
    q_moments,
    upward_crossings,
    waiting_times,
)
from .dfa import HurstEstimate, dfa_hurst
from .indicators import (
    AnalysisConfig,
    IndexReport,
    QSpectrum,
    Ranking,
    build_report,
    rank_indices,
)
from .ingest import (
    ColumnFormat,
    PriceSeries,
    ReturnSeries,
    load_prices,
    load_returns,
    log_returns,
)
from .resampling import (
    QComparison,
    ResamplingResult,
    phase_randomize,
    resampling_test,
    shuffle,
    surrogate,
)
from .synthetic import GeneratorSpec, fgn_autocovariance, generate

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "ColumnFormat",
    "CrossingCurve",
    "GeneratorSpec",
    "HurstEstimate",
    "IndexReport",
    "LevelGrid",
    "PriceSeries",
    "QComparison",
    "QMomentCurve",
    "QSpectrum",
    "Ranking",
    "ResamplingResult",
    "ReturnSeries",
    "WaitingTime",
    "WaitingTimeTable",
    "build_report",
    "crossing_curve",
    "dfa_hurst",
    "fgn_autocovariance",
    "gaussian_iid_crossing_prob",
    "generate",
    "load_prices",
    "load_returns",
    "log_returns",
    "phase_randomize",
    "q_moments",
    "rank_indices",
    "resampling_test",
    "shuffle",
    "surrogate",
    "upward_crossings",
    "waiting_times",
]

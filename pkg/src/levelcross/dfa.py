"""Hurst exponent estimation via detrended fluctuation analysis.

DFA integrates the centered series into a profile, splits the profile into
non-overlapping windows of size s, removes a linear trend per window, and
measures the root-mean-square residual F(s). The scaling F(s) ~ s^h gives the
Hurst exponent:

    h < 0.5  anti-persistent
    h = 0.5  uncorrelated (white noise)
    h > 0.5  persistent / long-range correlated

Windows run forward from the start and mirrored from the end so the tail of
the series is used even when the length is not a multiple of s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import linregress

from .errors import ConfigError, DegenerateSeries, TooShort
from .ingest import as_values

DEFAULT_MIN_WINDOW = 10
DEFAULT_N_WINDOWS = 20


@dataclass(frozen=True, eq=False)
class HurstEstimate:
    """Fitted scaling exponent with the window sizes and fluctuations behind it."""

    h: float
    stderr: float
    window_sizes: np.ndarray
    fluctuations: np.ndarray

    def __post_init__(self):
        self.window_sizes.setflags(write=False)
        self.fluctuations.setflags(write=False)


def _window_sizes(n: int, min_window: int, max_window: int, n_windows: int) -> np.ndarray:
    raw = np.exp(np.linspace(np.log(min_window), np.log(max_window), n_windows))
    return np.unique(np.round(raw).astype(int))


def _fluctuation(profile: np.ndarray, size: int) -> float:
    n = profile.size
    m = n // size
    segments = np.concatenate(
        [profile[: m * size].reshape(m, size), profile[n - m * size :].reshape(m, size)]
    )
    t = np.arange(size, dtype=float)
    slope, intercept = np.polyfit(t, segments.T, 1)
    residuals = segments - (np.outer(slope, t) + intercept[:, None])
    return float(np.sqrt(np.mean(residuals**2)))


def dfa_hurst(
    y,
    min_window: int = DEFAULT_MIN_WINDOW,
    max_window: int | None = None,
    n_windows: int = DEFAULT_N_WINDOWS,
) -> HurstEstimate:
    """Estimate the Hurst exponent of a series by first-order DFA.

    Parameters
    ----------
    y : ReturnSeries or array_like
        Series of length >= 4 * min_window.
    min_window, max_window : int
        Smallest and largest window size; ``max_window`` defaults to n // 4.
    n_windows : int
        Number of log-spaced window sizes (duplicates merged after rounding).

    Returns
    -------
    HurstEstimate
        Least-squares slope of log F(s) vs log s and its standard error.
    """
    v = as_values(y)
    n = v.size
    if min_window < 4:
        raise ConfigError(f"min_window must be >= 4, got {min_window}")
    if n_windows < 3:
        raise ConfigError(f"need at least 3 window sizes, got {n_windows}")
    if n < 4 * min_window:
        raise TooShort(f"need at least {4 * min_window} samples, got {n}")
    if max_window is None:
        max_window = n // 4
    if not (min_window < max_window <= n // 2):
        raise ConfigError(
            f"window range [{min_window}, {max_window}] invalid for length {n}"
        )
    if float(v.std()) == 0.0:
        raise DegenerateSeries("constant series has no fluctuations to analyze")

    profile = np.cumsum(v - v.mean())
    sizes = _window_sizes(n, min_window, max_window, n_windows)
    fluctuations = np.array([_fluctuation(profile, int(s)) for s in sizes])
    if np.any(fluctuations == 0.0):
        raise DegenerateSeries("zero detrended fluctuation at some window size")

    fit = linregress(np.log(sizes), np.log(fluctuations))
    h = float(fit.slope)
    if not (0.0 < h < 2.0):
        raise DegenerateSeries(f"estimated exponent {h:.3f} outside (0, 2)")
    return HurstEstimate(
        h=h,
        stderr=float(fit.stderr),
        window_sizes=sizes,
        fluctuations=fluctuations,
    )

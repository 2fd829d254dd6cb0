"""Positive-slope level-crossing statistics of a return series.

An upward crossing of level ``a`` happens between consecutive samples when
``y[i-1] < a`` and ``y[i] > a`` (strict on both sides; ties never count).
The per-level crossing rate ``nu`` is the count divided by the number of
consecutive pairs, so it is a probability per step and its reciprocal is a
waiting time in steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import ndtr

from .errors import ConfigError, DegenerateSeries, LevelOutOfRange, NonPositiveSigma, TooShort
from .ingest import as_values

DEFAULT_N_LEVELS = 201


@dataclass(frozen=True, eq=False)
class LevelGrid:
    """Uniform grid of levels, symmetric about 0 and containing 0 exactly."""

    levels: np.ndarray
    spacing: float

    def __post_init__(self):
        object.__setattr__(self, "levels", np.asarray(self.levels, dtype=float))
        lv = self.levels
        if lv.ndim != 1 or lv.size < 3 or lv.size % 2 == 0:
            raise ConfigError("level grid needs an odd number (>= 3) of levels")
        d = np.diff(lv)
        if np.any(d <= 0) or np.max(np.abs(d - self.spacing)) > 1e-12 + 1e-9 * abs(self.spacing):
            raise ConfigError("levels must be strictly increasing with uniform spacing")
        if lv[lv.size // 2] != 0.0 or np.max(np.abs(lv + lv[::-1])) > 1e-12 * abs(lv[-1]):
            raise ConfigError("level grid must be symmetric about 0 and contain 0")
        lv.setflags(write=False)

    @classmethod
    def symmetric(cls, span: float, n_levels: int = DEFAULT_N_LEVELS) -> "LevelGrid":
        """Grid of ``n_levels`` (odd) uniform levels on [-span, span]."""
        if n_levels < 3 or n_levels % 2 == 0:
            raise ConfigError(f"n_levels must be odd and >= 3, got {n_levels}")
        if not (span > 0) or not math.isfinite(span):
            raise ConfigError(f"span must be a positive finite number, got {span}")
        half = np.linspace(0.0, span, n_levels // 2 + 1)
        levels = np.concatenate([-half[:0:-1], half])
        return cls(levels=levels, spacing=span / (n_levels // 2))

    @classmethod
    def for_series(
        cls,
        y,
        n_levels: int = DEFAULT_N_LEVELS,
        span_mode: str = "data",
        span_sigmas: float = 6.0,
    ) -> "LevelGrid":
        """Grid spanning the series support (``"data"``: +-max|y|) or +-k*std."""
        v = as_values(y)
        if span_mode == "data":
            span = float(np.max(np.abs(v))) if v.size else 0.0
        elif span_mode == "sigma":
            span = span_sigmas * float(v.std())
        else:
            raise ConfigError(f"unknown span_mode {span_mode!r}")
        if span == 0.0:
            raise DegenerateSeries("series has no variation; cannot build a level grid")
        return cls.symmetric(span, n_levels)

    @property
    def span(self) -> float:
        return float(self.levels[-1])

    def __len__(self) -> int:
        return self.levels.size


@dataclass(frozen=True, eq=False)
class CrossingCurve:
    """Per-level upward-crossing rate (probability per step).

    ``nu[k]`` is the fraction of the ``n_steps`` consecutive pairs that cross
    ``grid.levels[k]`` upward. Levels outside the sample range have rate 0.
    """

    grid: LevelGrid
    nu: np.ndarray
    n_steps: int

    def __post_init__(self):
        object.__setattr__(self, "nu", np.asarray(self.nu, dtype=float))
        if self.n_steps < 1:
            raise TooShort("crossing curve needs at least one step")
        if np.any(self.nu < 0.0) or np.any(self.nu > 1.0):
            raise ConfigError("crossing rates must lie in [0, 1]")
        self.nu.setflags(write=False)


@dataclass(frozen=True, eq=False)
class QMomentCurve:
    """Generalized crossing totals: integral of nu weighted by |level - center|^q.

    ``n_tot`` at q=0 is the plain integral of the rate curve (total crossing
    activity per step, units 1/step * level); larger q shifts weight to tail
    levels. Units at general q: 1/step * level^(q+1).
    """

    q_values: np.ndarray
    n_tot: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q_values", np.asarray(self.q_values, dtype=float))
        object.__setattr__(self, "n_tot", np.asarray(self.n_tot, dtype=float))
        if np.any(self.n_tot < 0):
            raise ConfigError("generalized crossing totals must be >= 0")
        self.q_values.setflags(write=False)
        self.n_tot.setflags(write=False)


@dataclass(frozen=True)
class WaitingTime:
    """Waiting time at one requested level (snapped to the nearest grid level)."""

    level: float
    grid_level: float
    tau: float  # steps; math.inf when no crossings were observed


@dataclass(frozen=True)
class WaitingTimeTable:
    rows: tuple[WaitingTime, ...]


def upward_crossings(y, level: float) -> int:
    """Count upward crossings of ``level``: pairs with y[i-1] < level < y[i]."""
    v = as_values(y)
    if v.size < 2:
        return 0
    return int(np.count_nonzero((v[:-1] < level) & (v[1:] > level)))


def _counts_on_grid(values: np.ndarray, levels: np.ndarray) -> np.ndarray:
    """Upward-crossing counts for every grid level in one pass.

    A pair (a, b) with a < b crosses exactly the levels in the open interval
    (a, b); those form a contiguous index range located with searchsorted,
    accumulated via a difference array. Integer-exact, O((n+m) log m).
    """
    a = values[:-1]
    b = values[1:]
    lo = np.searchsorted(levels, a, side="right")  # first index with level > a
    hi = np.searchsorted(levels, b, side="left")  # first index with level >= b
    up = hi > lo
    diff = np.zeros(levels.size + 1, dtype=np.int64)
    np.add.at(diff, lo[up], 1)
    np.add.at(diff, hi[up], -1)
    return np.cumsum(diff[:-1])


def crossing_curve(y, grid: LevelGrid) -> CrossingCurve:
    """Estimate the upward-crossing rate at every grid level.

    Parameters
    ----------
    y : ReturnSeries or array_like
        Series of at least 2 finite values.
    grid : LevelGrid
        Levels at which to count.

    Returns
    -------
    CrossingCurve
        ``nu[k] = count(levels[k]) / (len(y) - 1)``.
    """
    v = as_values(y)
    if v.size < 2:
        raise TooShort("need at least 2 samples to count crossings")
    counts = _counts_on_grid(v, grid.levels)
    n_steps = v.size - 1
    return CrossingCurve(grid=grid, nu=counts / n_steps, n_steps=n_steps)


def waiting_times(curve: CrossingCurve, levels) -> WaitingTimeTable:
    """Waiting time tau = 1/nu at each requested level.

    Each requested level is snapped to the nearest grid level. Levels where
    no crossing was observed get ``tau = inf``. Requests outside the grid
    range raise LevelOutOfRange.
    """
    grid = curve.grid.levels
    tol = 1e-9 * curve.grid.spacing
    rows = []
    for a in np.asarray(levels, dtype=float):
        if a < grid[0] - tol or a > grid[-1] + tol:
            raise LevelOutOfRange(
                f"level {a} outside grid range [{grid[0]}, {grid[-1]}]"
            )
        k = int(np.argmin(np.abs(grid - a)))
        nu = curve.nu[k]
        tau = math.inf if nu == 0.0 else 1.0 / float(nu)
        rows.append(WaitingTime(level=float(a), grid_level=float(grid[k]), tau=tau))
    return WaitingTimeTable(rows=tuple(rows))


def q_moments(curve: CrossingCurve, q_values, center: float = 0.0) -> QMomentCurve:
    """Integrate the rate curve against |level - center|^q for each q.

    Trapezoidal rule on the uniform grid. At q=0 the weight is 1 everywhere,
    including at the center level, so the result is the plain integral of nu.
    """
    q = np.atleast_1d(np.asarray(q_values, dtype=float))
    if np.any(q < 0):
        raise ConfigError("q exponents must be >= 0")
    x = curve.grid.levels
    w = np.abs(x - center)
    n_tot = np.empty(q.size, dtype=float)
    for j, qj in enumerate(q):
        weight = np.ones_like(x) if qj == 0.0 else w**qj
        n_tot[j] = trapezoid(curve.nu * weight, x)
    return QMomentCurve(q_values=q.copy(), n_tot=n_tot)


def gaussian_iid_crossing_prob(alpha, sigma: float):
    """Exact upward-crossing probability per step for iid Gaussian samples.

    For independent N(0, sigma^2) samples the chance that a consecutive pair
    straddles ``alpha`` is ``Phi(alpha/sigma) * (1 - Phi(alpha/sigma))``; at
    alpha=0 this is 1/4. Serves as the analytic reference curve for white
    noise. Accepts scalar or array ``alpha``.
    """
    if not (sigma > 0):
        raise NonPositiveSigma(f"sigma must be > 0, got {sigma}")
    u = np.asarray(alpha, dtype=float) / sigma
    p = ndtr(u) * ndtr(-u)
    return float(p) if np.isscalar(alpha) else p

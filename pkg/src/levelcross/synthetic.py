"""Reference and test processes: white noise, fractional Gaussian noise,
and fat-tailed iid noise.

Every generator is deterministic given its seed, mean-centered, and rescaled
so the sample standard deviation equals the requested sigma exactly, which
keeps comparisons between curves at equal spread.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeries, InvalidSpec, NumericalError
from .ingest import ReturnSeries

KINDS = ("white", "fgn", "student_t")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of one synthetic series.

    ``h`` is required for (and only for) ``fgn`` and must lie in (0, 1);
    ``df`` is required for (and only for) ``student_t`` and must exceed 2 so
    the variance is finite.
    """

    kind: str
    n: int
    sigma: float = 1.0
    h: float | None = None
    df: float | None = None
    seed: int | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpec(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 2:
            raise InvalidSpec(f"n must be >= 2, got {self.n}")
        if not (self.sigma > 0):
            raise InvalidSpec(f"sigma must be > 0, got {self.sigma}")
        if self.kind == "fgn":
            if self.h is None or not (0.0 < self.h < 1.0):
                raise InvalidSpec(f"fgn requires h in (0, 1), got {self.h}")
        elif self.h is not None:
            raise InvalidSpec(f"h is only valid for fgn, not {self.kind}")
        if self.kind == "student_t":
            if self.df is None or not (self.df > 2.0):
                raise InvalidSpec(f"student_t requires df > 2, got {self.df}")
        elif self.df is not None:
            raise InvalidSpec(f"df is only valid for student_t, not {self.kind}")


def fgn_autocovariance(h: float, lags) -> np.ndarray:
    """Autocovariance of unit-variance fractional Gaussian noise.

    gamma(k) = 0.5 * (|k+1|^2H - 2|k|^2H + |k-1|^2H); gamma(0) = 1 and for
    H = 0.5 every positive lag vanishes (white noise).
    """
    k = np.asarray(lags, dtype=float)
    e = 2.0 * h
    return 0.5 * (np.abs(k + 1) ** e - 2.0 * np.abs(k) ** e + np.abs(k - 1) ** e)


def _fgn_raw(n: int, h: float, rng: np.random.Generator) -> np.ndarray:
    """Sample unit-variance fGn by circulant embedding (exact covariance).

    The autocovariance sequence is embedded in a circulant matrix of order
    2n whose eigenvalues come from one FFT; a complex Gaussian vector shaped
    by those eigenvalues transforms back into a sample with exactly the
    target covariance. O(n log n).
    """
    gamma = fgn_autocovariance(h, np.arange(n + 1))
    row = np.concatenate([gamma[:n], gamma[n : n + 1], gamma[1:n][::-1]])
    eigenvalues = np.fft.fft(row).real
    floor = -1e-8 * eigenvalues.max()
    if np.any(eigenvalues < floor):
        raise NumericalError(f"circulant embedding not nonnegative for h={h}")
    eigenvalues = np.clip(eigenvalues, 0.0, None)

    m = 2 * n
    g1 = rng.standard_normal(n)
    g2 = rng.standard_normal(n)
    w = np.empty(m, dtype=complex)
    w[0] = np.sqrt(eigenvalues[0] / m) * g1[0]
    w[1:n] = np.sqrt(eigenvalues[1:n] / (2 * m)) * (g1[1:] + 1j * g2[1:])
    w[n] = np.sqrt(eigenvalues[n] / m) * g2[0]
    w[n + 1 :] = np.sqrt(eigenvalues[n + 1 :] / (2 * m)) * (g1[1:][::-1] - 1j * g2[1:][::-1])
    return np.fft.fft(w)[:n].real


def generate(spec: GeneratorSpec) -> ReturnSeries:
    """Generate a synthetic return series according to ``spec``.

    The raw draw is mean-centered and multiplied by one factor so that the
    sample standard deviation equals ``spec.sigma`` exactly.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "white":
        raw = rng.standard_normal(spec.n)
    elif spec.kind == "fgn":
        raw = _fgn_raw(spec.n, spec.h, rng)
    else:
        raw = rng.standard_t(spec.df, spec.n)

    centered = raw - raw.mean()
    std = float(centered.std())
    if std == 0.0:
        raise DegenerateSeries("generated series is constant; cannot rescale")
    return ReturnSeries(
        name=spec.kind,
        values=centered * (spec.sigma / std),
        raw_mean=float(raw.mean()),
        step="sample",
    )

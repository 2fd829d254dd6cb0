import numpy as np
import pytest

from levelcross.dfa import dfa_hurst
from levelcross.errors import ConfigError, DegenerateSeries, TooShort
from levelcross.resampling import shuffle
from levelcross.synthetic import GeneratorSpec, generate


def test_white_noise_benchmark():
    y = generate(GeneratorSpec(kind="white", n=2**14, sigma=1.0, seed=4))
    est = dfa_hurst(y)
    assert est.h == pytest.approx(0.5, abs=0.03)
    assert est.stderr > 0.0


def test_fgn_round_trip():
    y = generate(GeneratorSpec(kind="fgn", n=2**14, sigma=1.0, h=0.7, seed=0))
    assert dfa_hurst(y).h == pytest.approx(0.7, abs=0.05)


def test_shuffle_flattens_persistence():
    y = generate(GeneratorSpec(kind="fgn", n=2**14, sigma=1.0, h=0.8, seed=1))
    assert dfa_hurst(y).h > 0.7
    assert dfa_hurst(shuffle(y, seed=2)).h == pytest.approx(0.5, abs=0.05)


def test_monotone_discrimination():
    """Averaged estimates must order generated processes by their true H."""
    targets = [0.4, 0.5, 0.6, 0.7, 0.8]
    means = []
    for h in targets:
        estimates = [
            dfa_hurst(generate(GeneratorSpec(kind="fgn", n=2**14, sigma=1.0, h=h, seed=s))).h
            for s in range(10)
        ]
        means.append(np.mean(estimates))
    assert all(a < b for a, b in zip(means, means[1:]))


def test_scale_invariance():
    y = generate(GeneratorSpec(kind="white", n=4096, sigma=0.01, seed=3)).values
    base = dfa_hurst(y)
    scaled = dfa_hurst(1000.0 * y)
    assert scaled.h == pytest.approx(base.h, abs=1e-9)
    np.testing.assert_allclose(scaled.fluctuations, 1000.0 * base.fluctuations, rtol=1e-9)


def test_estimate_structure():
    y = generate(GeneratorSpec(kind="white", n=4096, sigma=1.0, seed=5))
    est = dfa_hurst(y, min_window=10, max_window=512, n_windows=15)
    assert np.all(np.diff(est.window_sizes) > 0)
    assert est.window_sizes[0] == 10
    assert est.window_sizes[-1] == 512
    assert np.all(est.fluctuations > 0)
    assert 0.0 < est.h < 2.0


def test_too_short():
    with pytest.raises(TooShort):
        dfa_hurst(np.random.default_rng(0).normal(size=30))


def test_bad_parameters():
    y = np.random.default_rng(0).normal(size=4096)
    with pytest.raises(ConfigError):
        dfa_hurst(y, min_window=3)
    with pytest.raises(ConfigError):
        dfa_hurst(y, min_window=10, max_window=9)
    with pytest.raises(ConfigError):
        dfa_hurst(y, n_windows=2)


def test_constant_series_degenerate():
    with pytest.raises(DegenerateSeries):
        dfa_hurst(np.full(1000, 1.0))

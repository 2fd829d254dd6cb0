"""Built-in oracle suite: checks the pipeline against known-answer baselines.

Three checks, each with a documented tolerance:

1. iid crossing probability: the empirical rate curve of generated white
   noise must match the exact Gaussian pair probability within 0.01 sup-norm.
2. white-noise null invariance: shuffling and surrogating white noise must
   leave the crossing total within 5% (white noise is its own null).
3. Hurst round trip: persistent noise generated with h=0.7 must estimate
   near 0.7 by DFA, and its shuffle near 0.5.

Everything is deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crossing import LevelGrid, crossing_curve, gaussian_iid_crossing_prob
from .dfa import dfa_hurst
from .errors import LevelCrossError
from .resampling import resampling_test, shuffle
from .synthetic import GeneratorSpec, generate


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, fn) -> CheckResult:
    try:
        passed, detail = fn()
    except LevelCrossError as exc:
        return CheckResult(name=name, passed=False, detail=f"{type(exc).__name__}: {exc}")
    return CheckResult(name=name, passed=passed, detail=detail)


def run_selftest(seed: int = 0, n: int | None = None, realizations: int = 20) -> list[CheckResult]:
    """Run all checks; ``n`` overrides every sample size (for exercising
    failure paths with tiny inputs)."""
    root = np.random.SeedSequence(seed)
    s1, s2, s3, s4, s5 = (int(c.generate_state(1)[0]) for c in root.spawn(5))

    def crossing_oracle():
        m = n or 100_000
        y = generate(GeneratorSpec(kind="white", n=m, sigma=1.0, seed=s1))
        curve = crossing_curve(y, LevelGrid.for_series(y))
        expected = gaussian_iid_crossing_prob(curve.grid.levels, 1.0)
        err = float(np.max(np.abs(curve.nu - expected)))
        return err <= 0.01, f"sup|nu - exact| = {err:.5f} (tolerance 0.01, n = {m})"

    def null_invariance():
        m = n or 10_000
        y = generate(GeneratorSpec(kind="white", n=m, sigma=0.01, seed=s2))
        worst = 0.0
        for method, method_seed in (("shuffle", s3), ("surrogate", s4)):
            result = resampling_test(y, method, realizations=realizations, seed=method_seed)
            worst = max(worst, abs(result.signed_rel_diff))
        return worst <= 0.05, f"max |signed rel diff| = {worst:.4f} (tolerance 0.05, M = {realizations})"

    def hurst_round_trip():
        m = n or 2**14
        y = generate(GeneratorSpec(kind="fgn", n=m, sigma=1.0, h=0.7, seed=s5))
        h = dfa_hurst(y).h
        h_shuffled = dfa_hurst(shuffle(y, seed=s5)).h
        ok = abs(h - 0.7) <= 0.05 and abs(h_shuffled - 0.5) <= 0.05
        return ok, f"h = {h:.3f} (target 0.70 +- 0.05), shuffled h = {h_shuffled:.3f} (target 0.50 +- 0.05)"

    return [
        _check("iid-crossing-probability", crossing_oracle),
        _check("white-noise-null-invariance", null_invariance),
        _check("hurst-round-trip", hurst_round_trip),
    ]

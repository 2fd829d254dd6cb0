"""Command-line front end: analyze, synth, selftest.

Exit codes: 0 success, 1 configuration error, 2 data error, 3 numerical
failure, 4 failed self-test check. Configuration precedence is flags over
config file over defaults; the master seed falls back to the LEVELCROSS_SEED
environment variable when neither flag nor config file sets one.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import figures, reportio
from .errors import ConfigError, DataError, LevelCrossError
from .indicators import DEFAULT_WAITING_LEVELS, AnalysisConfig, build_report, rank_indices
from .ingest import ColumnFormat, load_prices, load_returns, log_returns
from .selftest import run_selftest
from .synthetic import GeneratorSpec, generate

SEED_ENV_VAR = "LEVELCROSS_SEED"


@dataclass(frozen=True)
class InputSpec:
    name: str
    path: str
    format: ColumnFormat


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration of one analyze run."""

    inputs: tuple[InputSpec, ...]
    n_levels: int = 201
    span_mode: str = "data"
    span_sigmas: float = 6.0
    q_max: float = 10.0
    q_step: float = 0.5
    q_center: float = 0.0
    realizations: int = 20
    seed: int = 0
    waiting_levels: tuple[float, ...] = DEFAULT_WAITING_LEVELS
    dfa_min_window: int = 10
    dfa_max_window: int | None = None
    dfa_n_windows: int = 20
    neutral_band: float = 0.02
    out: str = "out"
    format: str = "json"
    figures: bool = True
    workers: int = 1

    def analysis_config(self) -> AnalysisConfig:
        if self.q_step <= 0 or self.q_max < 0:
            raise ConfigError("q_max must be >= 0 and q_step > 0")
        q_values = tuple(np.arange(0.0, self.q_max + self.q_step / 2, self.q_step))
        return AnalysisConfig(
            n_levels=self.n_levels,
            span_mode=self.span_mode,
            span_sigmas=self.span_sigmas,
            q_values=q_values,
            q_center=self.q_center,
            realizations=self.realizations,
            waiting_levels=tuple(self.waiting_levels),
            dfa_min_window=self.dfa_min_window,
            dfa_max_window=self.dfa_max_window,
            dfa_n_windows=self.dfa_n_windows,
            neutral_band=self.neutral_band,
        )

    def validate(self) -> None:
        if not self.inputs:
            raise ConfigError("no inputs")
        names = [inp.name for inp in self.inputs]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate input names: {sorted(names)}")
        for inp in self.inputs:
            if not Path(inp.path).is_file():
                raise ConfigError(f"input file not found: {inp.path}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        self.analysis_config().validate()


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _resolve_seed(flag_seed, file_seed) -> int:
    for candidate in (flag_seed, file_seed, _env_seed()):
        if candidate is not None:
            return int(candidate)
    return 0


_FORMAT_KEYS = {f.name for f in dataclasses.fields(ColumnFormat)}
_CONFIG_KEYS = {
    "inputs", "levels", "span_mode", "span_sigmas", "q_max", "q_step", "q_center",
    "realizations", "seed", "waiting_levels", "dfa", "neutral_band", "out",
    "format", "figures", "workers",
}


def _input_from_entry(entry) -> InputSpec:
    if isinstance(entry, str):
        entry = {"path": entry}
    if "path" not in entry:
        raise ConfigError(f"input entry missing 'path': {entry}")
    fmt_dict = dict(entry.get("format", {}))
    unknown = set(fmt_dict) - _FORMAT_KEYS
    if unknown:
        raise ConfigError(f"unknown format keys {sorted(unknown)} for input {entry['path']}")
    return InputSpec(
        name=entry.get("name") or Path(entry["path"]).stem,
        path=entry["path"],
        format=ColumnFormat(**fmt_dict),
    )


def _load_config_file(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return raw


def _build_run_config(args) -> RunConfig:
    raw = _load_config_file(args.config) if args.config else {}
    dfa = raw.get("dfa", {})
    unknown = set(dfa) - {"min_window", "max_window", "n_windows"}
    if unknown:
        raise ConfigError(f"unknown dfa config keys: {sorted(unknown)}")

    inputs = [_input_from_entry(e) for e in raw.get("inputs", [])]
    if args.inputs:  # positional paths replace config-file inputs
        inputs = [_input_from_entry(p) for p in args.inputs]

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return raw.get(key, default)

    return RunConfig(
        inputs=tuple(inputs),
        n_levels=int(pick(args.levels, "levels", 201)),
        span_mode=raw.get("span_mode", "data"),
        span_sigmas=float(raw.get("span_sigmas", 6.0)),
        q_max=float(pick(args.q_max, "q_max", 10.0)),
        q_step=float(pick(args.q_step, "q_step", 0.5)),
        q_center=float(raw.get("q_center", 0.0)),
        realizations=int(pick(args.realizations, "realizations", 20)),
        seed=_resolve_seed(args.seed, raw.get("seed")),
        waiting_levels=tuple(raw.get("waiting_levels", DEFAULT_WAITING_LEVELS)),
        dfa_min_window=int(dfa.get("min_window", 10)),
        dfa_max_window=dfa.get("max_window"),
        dfa_n_windows=int(dfa.get("n_windows", 20)),
        neutral_band=float(raw.get("neutral_band", 0.02)),
        out=str(pick(args.out, "out", "out")),
        format=str(pick(args.format, "format", "json")),
        figures=bool(raw.get("figures", True)) and not args.no_figures,
        workers=int(pick(args.workers, "workers", 1)),
    )


def _config_dict(cfg: RunConfig) -> dict:
    return {
        "inputs": [
            {"name": i.name, "path": i.path, "format": dataclasses.asdict(i.format)}
            for i in cfg.inputs
        ],
        "levels": cfg.n_levels,
        "span_mode": cfg.span_mode,
        "span_sigmas": cfg.span_sigmas,
        "q_max": cfg.q_max,
        "q_step": cfg.q_step,
        "q_center": cfg.q_center,
        "realizations": cfg.realizations,
        "seed": cfg.seed,
        "waiting_levels": list(cfg.waiting_levels),
        "dfa": {
            "min_window": cfg.dfa_min_window,
            "max_window": cfg.dfa_max_window,
            "n_windows": cfg.dfa_n_windows,
        },
        "neutral_band": cfg.neutral_band,
        "out": cfg.out,
        "format": cfg.format,
        "figures": cfg.figures,
        "workers": cfg.workers,
    }


def _safe_dirname(name: str) -> str:
    return "".join("_" if c in '/\\:\0' else c for c in name)


class _StageFailure(Exception):
    """Carries which index and pipeline stage failed."""

    def __init__(self, index_name: str, stage: str, cause: Exception):
        super().__init__(f"[{index_name}] {stage}: {cause}")
        self.index_name = index_name
        self.stage = stage
        self.cause = cause


def _analyze_one(position: int, inp: InputSpec, cfg: RunConfig, acfg: AnalysisConfig):
    stage = "ingest"
    try:
        if inp.format.kind == "returns":
            series = load_returns(inp.path, inp.format, name=inp.name)
        else:
            series = log_returns(load_prices(inp.path, inp.format, name=inp.name))
        stage = "analyze"
        seed_seq = np.random.SeedSequence(cfg.seed, spawn_key=(position,))
        report = build_report(series, acfg, seed_seq)
        stage = "write"
        index_dir = Path(cfg.out) / _safe_dirname(inp.name)
        extra = {"master_seed": cfg.seed, "input_position": position, "source": inp.path}
        if cfg.format == "json":
            reportio.write_report_json(index_dir / "report.json", report, extra)
        else:
            reportio.write_report_csv(index_dir / "report.csv", report, extra)
        reportio.write_crossings_csv(index_dir / "crossings.csv", report.crossing)
        reportio.write_waiting_csv(index_dir / "waiting.csv", report.crossing)
        reportio.write_qspectrum_csv(index_dir / "qspectrum.csv", report.q_spectrum)
        if cfg.figures:
            index_dir.mkdir(parents=True, exist_ok=True)
            figures.save_report_figures(index_dir, report)
        return report
    except (LevelCrossError, FileNotFoundError, OSError) as exc:
        raise _StageFailure(inp.name, stage, exc) from exc


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        return 1
    if isinstance(exc, (DataError, FileNotFoundError, OSError)):
        return 2
    return 3


def cmd_analyze(args) -> int:
    try:
        cfg = _build_run_config(args)
        if args.print_config:
            print(json.dumps(_config_dict(cfg), indent=2, sort_keys=True))
            return 0
        cfg.validate()
        acfg = cfg.analysis_config()
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1

    try:
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                futures = [
                    pool.submit(_analyze_one, k, inp, cfg, acfg)
                    for k, inp in enumerate(cfg.inputs)
                ]
                reports = [f.result() for f in futures]
        else:
            reports = [_analyze_one(k, inp, cfg, acfg) for k, inp in enumerate(cfg.inputs)]
    except _StageFailure as failure:
        print(f"error: {failure}", file=sys.stderr)
        return _exit_code_for(failure.cause)

    out = Path(cfg.out)
    reportio.write_table1_csv(out / "table1.csv", reports)
    reportio.write_table2_csv(out / "table2.csv", reports)
    if len(reports) >= 2:
        reportio.write_ranking_json(out / "ranking.json", rank_indices(reports))
    if cfg.figures:
        figures.save_aggregate_figures(out, reports)
    print(f"analyzed {len(reports)} index(es) -> {out}")
    return 0


def cmd_synth(args) -> int:
    seed = _resolve_seed(args.seed, None)
    spec = GeneratorSpec(
        kind=args.kind, n=args.n, sigma=args.sigma, h=args.h, df=args.df, seed=seed
    )
    try:
        series = generate(spec)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1
    except LevelCrossError as exc:
        print(f"error: generate: {exc}", file=sys.stderr)
        return 3
    reportio.write_series_csv(args.out, series.values)
    print(f"wrote {series.values.size} values -> {args.out}")
    return 0


def cmd_selftest(args) -> int:
    try:
        seed = _resolve_seed(args.seed, None)
        results = run_selftest(seed=seed, n=args.n, realizations=args.realizations)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    return 0 if all(r.passed for r in results) else 4


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelcross",
        description="Level-crossing analysis of return series: crossing rates, "
        "waiting times, shuffle/surrogate null tests, and DFA Hurst estimation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze price files and write reports")
    pa.add_argument("inputs", nargs="*", help="input price CSV files (name = file stem)")
    pa.add_argument("--config", help="JSON config file")
    pa.add_argument("--seed", type=int, help="master seed (fallback: config, then env)")
    pa.add_argument("--realizations", type=int, help="resampling ensemble size M")
    pa.add_argument("--levels", type=int, help="number of levels (odd)")
    pa.add_argument("--q-max", type=float, dest="q_max", help="largest q exponent")
    pa.add_argument("--q-step", type=float, dest="q_step", help="q exponent step")
    pa.add_argument("--out", help="output directory")
    pa.add_argument("--format", choices=("json", "csv"), help="per-index report format")
    pa.add_argument("--workers", type=int, help="concurrent index analyses")
    pa.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    pa.add_argument(
        "--print-config", action="store_true", help="print the effective config and exit"
    )
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("synth", help="generate a synthetic series CSV")
    ps.add_argument("--kind", required=True, choices=("white", "fgn", "student_t"))
    ps.add_argument("--n", type=int, required=True, help="series length")
    ps.add_argument("--sigma", type=float, default=1.0, help="exact sample std")
    ps.add_argument("--h", type=float, help="Hurst parameter (fgn only)")
    ps.add_argument("--df", type=float, help="degrees of freedom (student_t only)")
    ps.add_argument("--seed", type=int, help="generator seed (fallback: env)")
    ps.add_argument("--out", required=True, help="output CSV path")
    ps.set_defaults(func=cmd_synth)

    pt = sub.add_parser("selftest", help="run the built-in oracle checks")
    pt.add_argument("--seed", type=int, help="seed for all checks (fallback: env)")
    pt.add_argument("--n", type=int, help="override every sample size")
    pt.add_argument("--realizations", type=int, default=20, help="ensemble size M")
    pt.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

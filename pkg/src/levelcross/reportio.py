"""Report and curve serialization: JSON reports, delimited tables and curves.

All writers are byte-deterministic: floats are serialized with ``repr``
(shortest round-trip form), JSON keys are sorted, and line endings are always
``\\n``. Files are written atomically (temp file + rename) so readers never
observe a partial file. Every delimited file begins with ``#`` comment lines
stating units and normalization.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path

import numpy as np

from .crossing import CrossingCurve
from .indicators import IndexReport, QSpectrum, Ranking

RATE_NOTE = "# rate nu = upward crossings / (n-1), probability per step (trading day)"
LEVEL_NOTE = "# levels are on mean-centered log returns"


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file and atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="")
    os.replace(tmp, path)


def _fmt(x) -> str:
    """Shortest round-trip decimal form; inf spelled 'inf'."""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf"
    return repr(x)


def _csv_text(comments: list[str], header: list[str], rows) -> str:
    out = io.StringIO()
    for comment in comments:
        out.write(comment + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    return out.getvalue()


def _json_safe(value):
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return None if not math.isfinite(v) else v
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_json_safe(x) for x in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_json_safe(x) for x in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    return value


def write_json(path, payload: dict) -> None:
    text = json.dumps(_json_safe(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"
    atomic_write_text(path, text)


def report_to_dict(report: IndexReport, extra: dict | None = None) -> dict:
    """Flatten an IndexReport into a JSON-serializable dictionary.

    Infinite waiting times serialize as null. ``extra`` entries (e.g. the
    master seed) are merged at the top level.
    """
    def resampling(rs):
        return {
            "method": rs.method,
            "realizations": rs.realizations,
            "n_tot_original": rs.n_tot_original,
            "n_tot_null_mean": rs.n_tot_null_mean,
            "n_tot_null_std": rs.n_tot_null_std,
            "signed_rel_diff": rs.signed_rel_diff,
            "abs_rel_diff": rs.abs_rel_diff,
        }

    payload = {
        "name": report.name,
        "units": {
            "rate": "upward crossings per step (trading day)",
            "waiting_time": "steps (trading days); null means no crossing observed",
            "activity": "per-step crossing total: integral of the rate curve over levels",
            "activity_raw": "activity * n_steps (raw count integral over levels)",
            "normalization": "nu = count / (n - 1); levels on mean-centered log returns",
        },
        "n_steps": report.n_steps,
        "dropped_rows": report.dropped_rows,
        "activity": report.activity,
        "activity_raw": report.activity_raw,
        "development_index": report.development_index,
        "development_sign": report.development_sign,
        "risk_index": report.risk_index,
        "tail_sign": report.tail_sign,
        "hurst": {
            "h": report.hurst.h,
            "stderr": report.hurst.stderr,
            "window_sizes": report.hurst.window_sizes,
            "fluctuations": report.hurst.fluctuations,
        },
        "shuffle_test": resampling(report.shuffle_test),
        "surrogate_test": resampling(report.surrogate_test),
        "waiting_times": [
            {
                "level": row.level,
                "grid_level": row.grid_level,
                "tau": None if math.isinf(row.tau) else row.tau,
            }
            for row in report.waiting_table.rows
        ],
        "q_spectrum": {
            "q": report.q_spectrum.original.q_values,
            "original": report.q_spectrum.original.n_tot,
            "shuffled_mean": report.q_spectrum.shuffled_mean.n_tot,
            "surrogate_mean": report.q_spectrum.surrogate_mean.n_tot,
        },
    }
    if extra:
        payload.update(extra)
    return payload


def write_report_json(path, report: IndexReport, extra: dict | None = None) -> None:
    write_json(path, report_to_dict(report, extra))


def write_report_csv(path, report: IndexReport, extra: dict | None = None) -> None:
    """Flat key,value rendering of the scalar report fields."""
    d = report_to_dict(report, extra)
    d["hurst"] = d["hurst"]["h"]
    d["hurst_stderr"] = report.hurst.stderr
    rows = [["name", d["name"]]]
    for key in sorted(d):
        value = d[key]
        if key != "name" and (isinstance(value, (str, int, float)) or value is None):
            rows.append([key, "" if value is None else value])
    text = _csv_text(
        ["# scalar indicators; see the json report for curves and ensembles"],
        ["field", "value"],
        rows,
    )
    atomic_write_text(path, text)


def write_crossings_csv(path, curve: CrossingCurve) -> None:
    text = _csv_text(
        [RATE_NOTE, LEVEL_NOTE, f"# n_steps,{curve.n_steps}"],
        ["level", "nu_per_step"],
        zip(curve.grid.levels, curve.nu),
    )
    atomic_write_text(path, text)


def write_waiting_csv(path, curve: CrossingCurve) -> None:
    """Waiting-time curve over the whole grid; tau = 1/nu, 'inf' where nu = 0."""
    taus = np.full(curve.nu.shape, math.inf)
    nonzero = curve.nu > 0
    taus[nonzero] = 1.0 / curve.nu[nonzero]
    text = _csv_text(
        ["# waiting time tau = 1/nu in steps (trading days); inf = never observed", LEVEL_NOTE],
        ["level", "tau_steps"],
        zip(curve.grid.levels, taus),
    )
    atomic_write_text(path, text)


def write_qspectrum_csv(path, spectrum: QSpectrum) -> None:
    text = _csv_text(
        [
            "# generalized crossing totals N_tot(q), per-step units (1/step * level^(q+1))",
            "# null columns are ensemble means over the resampling realizations",
        ],
        ["q", "original", "shuffled_mean", "surrogate_mean"],
        zip(
            spectrum.original.q_values,
            spectrum.original.n_tot,
            spectrum.shuffled_mean.n_tot,
            spectrum.surrogate_mean.n_tot,
        ),
    )
    atomic_write_text(path, text)


def _level_label(level: float) -> str:
    return f"tau(alpha={level:g})"


def write_table1_csv(path, reports: list[IndexReport]) -> None:
    """Waiting-time table: one row per index, one column per requested level."""
    if not reports:
        raise ValueError("no reports to tabulate")
    levels = [row.level for row in reports[0].waiting_table.rows]
    header = ["index"] + [_level_label(a) for a in levels]
    rows = []
    for r in reports:
        rows.append([r.name] + [row.tau for row in r.waiting_table.rows])
    text = _csv_text(
        ["# waiting times in steps (trading days); inf = level never crossed upward"],
        header,
        rows,
    )
    atomic_write_text(path, text)


def write_table2_csv(path, reports: list[IndexReport]) -> None:
    """Indicator table: crossing totals, null means, relative differences, Hurst."""
    header = [
        "index",
        "n_tot",
        "n_shuffled",
        "n_surrogate",
        "rel_diff_shuffle",
        "rel_diff_surrogate",
        "hurst",
    ]
    rows = [
        [
            r.name,
            r.activity,
            r.shuffle_test.n_tot_null_mean,
            r.surrogate_test.n_tot_null_mean,
            r.development_index,
            r.risk_index,
            r.hurst.h,
        ]
        for r in reports
    ]
    text = _csv_text(
        [
            "# per-step crossing totals (integral of nu over levels); relative",
            "# differences are |null - original| / original; smaller shuffle diff =",
            "# more developed, larger surrogate diff = riskier (fatter tails)",
        ],
        header,
        rows,
    )
    atomic_write_text(path, text)


def write_ranking_json(path, ranking: Ranking) -> None:
    write_json(
        path,
        {
            "by_activity": list(ranking.by_activity),
            "by_development": list(ranking.by_development),
            "by_risk": list(ranking.by_risk),
            "dominance_note": ranking.dominance_note,
            "conventions": {
                "by_activity": "descending per-step crossing total (most active first)",
                "by_development": "ascending shuffle relative difference (most developed first)",
                "by_risk": "ascending surrogate relative difference (safest first)",
            },
        },
    )


def write_series_csv(path, values) -> None:
    """Two-column (index, value) file for a generated series."""
    text = _csv_text(
        ["# generated series; value units match the requested sigma"],
        ["index", "value"],
        ((i, v) for i, v in enumerate(np.asarray(values, dtype=float))),
    )
    atomic_write_text(path, text)

import dataclasses
import json
import math

import numpy as np
import pytest

from levelcross import reportio
from levelcross.indicators import AnalysisConfig, build_report, rank_indices
from levelcross.synthetic import GeneratorSpec, generate


@pytest.fixture(scope="module")
def reports():
    cfg = AnalysisConfig(realizations=3)
    out = []
    for name, seed in [("alpha", 1), ("beta", 2)]:
        y = generate(GeneratorSpec(kind="white", n=2000, sigma=0.01, seed=seed))
        out.append(build_report(dataclasses.replace(y, name=name), cfg, seed=seed))
    return out


def test_report_json_round_trips(tmp_path, reports):
    path = tmp_path / "report.json"
    reportio.write_report_json(path, reports[0], extra={"master_seed": 9})
    payload = json.loads(path.read_text())
    assert payload["master_seed"] == 9
    assert payload["activity"] == pytest.approx(reports[0].activity)
    assert payload["development_sign"] in ("neutral", "correlated", "anti-correlated")
    assert "normalization" in payload["units"]
    assert len(payload["q_spectrum"]["q"]) == len(payload["q_spectrum"]["original"])


def test_infinite_tau_serializes_as_null(tmp_path, reports):
    report = reports[0]
    # the widest requested level of a short white series is often uncrossed;
    # force one by rebuilding with an extreme waiting level
    y = generate(GeneratorSpec(kind="white", n=2000, sigma=0.01, seed=1))
    cfg = AnalysisConfig(realizations=2, waiting_levels=(0.0, 0.99 * float(np.max(np.abs(y.values)))))
    rep = build_report(y, cfg, seed=1)
    taus = [row.tau for row in rep.waiting_table.rows]
    path = tmp_path / "report.json"
    reportio.write_report_json(path, rep)
    payload = json.loads(path.read_text())
    for row, tau in zip(payload["waiting_times"], taus):
        if math.isinf(tau):
            assert row["tau"] is None
        else:
            assert row["tau"] == pytest.approx(tau)


def test_report_csv_flat(tmp_path, reports):
    path = tmp_path / "report.csv"
    reportio.write_report_csv(path, reports[0])
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    assert lines[0] == "field,value"
    fields = {ln.split(",", 1)[0] for ln in lines[1:]}
    assert {"name", "activity", "development_index", "risk_index", "hurst"} <= fields


def test_table1_columns(tmp_path, reports):
    path = tmp_path / "table1.csv"
    reportio.write_table1_csv(path, reports)
    header = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")][0]
    assert header.split(",") == [
        "index",
        "tau(alpha=0)",
        "tau(alpha=-0.005)",
        "tau(alpha=0.005)",
        "tau(alpha=-0.01)",
        "tau(alpha=0.01)",
        "tau(alpha=-0.02)",
        "tau(alpha=0.02)",
    ]


def test_table2_columns(tmp_path, reports):
    path = tmp_path / "table2.csv"
    reportio.write_table2_csv(path, reports)
    header = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")][0]
    assert header.split(",") == [
        "index",
        "n_tot",
        "n_shuffled",
        "n_surrogate",
        "rel_diff_shuffle",
        "rel_diff_surrogate",
        "hurst",
    ]
    rows = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")][1:]
    assert len(rows) == len(reports)


def test_curve_files_parse_with_numpy(tmp_path, reports):
    report = reports[0]
    reportio.write_crossings_csv(tmp_path / "crossings.csv", report.crossing)
    reportio.write_waiting_csv(tmp_path / "waiting.csv", report.crossing)
    reportio.write_qspectrum_csv(tmp_path / "qspectrum.csv", report.q_spectrum)

    def load(path):
        comment_lines = sum(
            1 for ln in path.read_text().splitlines() if ln.startswith("#")
        )
        return np.genfromtxt(path, delimiter=",", names=True, skip_header=comment_lines)

    crossings = load(tmp_path / "crossings.csv")
    np.testing.assert_allclose(crossings["nu_per_step"], report.crossing.nu)

    waiting = load(tmp_path / "waiting.csv")
    observed = report.crossing.nu > 0
    np.testing.assert_allclose(
        waiting["tau_steps"][observed], 1.0 / report.crossing.nu[observed]
    )
    assert np.all(np.isinf(waiting["tau_steps"][~observed]))

    spectrum = load(tmp_path / "qspectrum.csv")
    np.testing.assert_allclose(spectrum["original"], report.q_spectrum.original.n_tot)


def test_ranking_json(tmp_path, reports):
    path = tmp_path / "ranking.json"
    reportio.write_ranking_json(path, rank_indices(reports))
    payload = json.loads(path.read_text())
    assert set(payload["by_activity"]) == {"alpha", "beta"}
    assert payload["conventions"]["by_risk"].startswith("ascending")


def test_atomic_write_replaces(tmp_path):
    path = tmp_path / "x.txt"
    reportio.atomic_write_text(path, "one\n")
    reportio.atomic_write_text(path, "two\n")
    assert path.read_text() == "two\n"
    assert not path.with_name("x.txt.tmp").exists()


def test_series_csv(tmp_path):
    reportio.write_series_csv(tmp_path / "s.csv", np.array([0.5, -0.25]))
    lines = (tmp_path / "s.csv").read_text().splitlines()
    assert lines[1] == "index,value"
    assert lines[2] == "0,0.5"
    assert lines[3] == "1,-0.25"

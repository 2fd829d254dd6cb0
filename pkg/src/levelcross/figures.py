"""Rendering of crossing-rate, waiting-time, and q-spectrum figures.

Figures are rendered straight to PNG files next to the delimited curve
files, using the object-oriented matplotlib API (no pyplot, no global
state), which keeps output byte-deterministic and thread-safe.
"""

from __future__ import annotations

import numpy as np
from matplotlib.figure import Figure

from .crossing import CrossingCurve
from .indicators import IndexReport, QSpectrum

DPI = 130


def _new_axes(xlabel: str, ylabel: str, title: str):
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.subplots()
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return fig, ax


def _finish(fig, ax, path, legend=True):
    if legend:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)


def save_crossing_figure(path, curves: dict[str, CrossingCurve], title="Upward crossing rate"):
    """Rate curves nu(level), one line per series."""
    fig, ax = _new_axes("level (on centered returns)", "crossings per step", title)
    for name, curve in curves.items():
        ax.plot(curve.grid.levels, curve.nu, label=name, linewidth=1.2)
    _finish(fig, ax, path)


def save_waiting_figure(path, curves: dict[str, CrossingCurve], title="Waiting time"):
    """Waiting-time curves tau(level) = 1/nu on a log scale; gaps where nu = 0."""
    fig, ax = _new_axes("level (on centered returns)", "waiting time (steps)", title)
    for name, curve in curves.items():
        tau = np.full(curve.nu.shape, np.nan)
        observed = curve.nu > 0
        tau[observed] = 1.0 / curve.nu[observed]
        ax.plot(curve.grid.levels, tau, label=name, linewidth=1.2)
    ax.set_yscale("log")
    _finish(fig, ax, path)


def save_qspectrum_figure(path, spectrum: QSpectrum, title="Generalized crossing totals"):
    """N_tot(q) for the original series and both resampling null means."""
    fig, ax = _new_axes("q", "N_tot(q) per step", title)
    ax.plot(spectrum.original.q_values, spectrum.original.n_tot, label="original", linewidth=1.4)
    ax.plot(
        spectrum.shuffled_mean.q_values,
        spectrum.shuffled_mean.n_tot,
        label="shuffled (mean)",
        linestyle="--",
    )
    ax.plot(
        spectrum.surrogate_mean.q_values,
        spectrum.surrogate_mean.n_tot,
        label="surrogate (mean)",
        linestyle=":",
    )
    positive = [c.n_tot[c.n_tot > 0] for c in
                (spectrum.original, spectrum.shuffled_mean, spectrum.surrogate_mean)]
    if all(p.size for p in positive) and min(p.min() for p in positive) > 0:
        ax.set_yscale("log")
    _finish(fig, ax, path)


def save_qspectrum_compare_figure(path, spectra: dict[str, QSpectrum],
                                  title="Generalized crossing totals"):
    """Original N_tot(q) curves across indices."""
    fig, ax = _new_axes("q", "N_tot(q) per step", title)
    log_ok = True
    for name, spectrum in spectra.items():
        ax.plot(spectrum.original.q_values, spectrum.original.n_tot, label=name, linewidth=1.2)
        log_ok = log_ok and bool(np.all(spectrum.original.n_tot > 0))
    if log_ok:
        ax.set_yscale("log")
    _finish(fig, ax, path)


def save_report_figures(out_dir, report: IndexReport) -> list[str]:
    """Render the per-index figures; returns the file names written."""
    written = []
    for name, renderer in (
        ("crossings.png", lambda p: save_crossing_figure(
            p, {report.name: report.crossing}, f"Upward crossing rate: {report.name}")),
        ("waiting.png", lambda p: save_waiting_figure(
            p, {report.name: report.crossing}, f"Waiting time: {report.name}")),
        ("qspectrum.png", lambda p: save_qspectrum_figure(
            p, report.q_spectrum, f"Generalized crossing totals: {report.name}")),
    ):
        renderer(str(out_dir / name))
        written.append(name)
    return written


def save_aggregate_figures(out_dir, reports: list[IndexReport]) -> list[str]:
    """Render the cross-index comparison figures; returns the file names."""
    curves = {r.name: r.crossing for r in reports}
    spectra = {r.name: r.q_spectrum for r in reports}
    save_crossing_figure(str(out_dir / "crossings_compare.png"), curves)
    save_waiting_figure(str(out_dir / "waiting_compare.png"), curves)
    save_qspectrum_compare_figure(str(out_dir / "qspectrum_compare.png"), spectra)
    return ["crossings_compare.png", "waiting_compare.png", "qspectrum_compare.png"]

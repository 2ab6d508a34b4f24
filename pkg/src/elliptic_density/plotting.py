"""Figures for CLI reports. Everything renders off-screen to files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lattice import ChainReport  # noqa: E402
from .sim import EllipticityReport, orbit_gap  # noqa: E402


def _style(ax, xlabel, ylabel, title):
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    ax.grid(True, which="both", alpha=0.3)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_chain(report: ChainReport, path, label: str = "") -> Path:
    """Covolume per truncation level (log scale), rank on a twin axis."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = list(range(1, len(report.levels) + 1))
    ax.semilogy(ns, [float(c) for c in report.covolumes], "o-", label="covolume")
    _style(ax, "N", "covolume", f"chain of spans {label}".strip())
    ax2 = ax.twinx()
    ax2.step(ns, report.ranks, where="mid", color="tab:orange", alpha=0.6, label="rank")
    ax2.set_ylabel("rank")
    ax2.set_ylim(-0.2, max(report.ranks, default=1) + 0.5)
    if report.stabilized_at is not None:
        ax.axvline(report.stabilized_at, color="gray", ls="--", lw=1)
    return _save(fig, path)


def plot_orbit_gaps(theta, ns: Sequence[int], path, label: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    gaps = [orbit_gap(theta, n) for n in ns]
    ax.loglog(ns, gaps, "o-", label="largest gap")
    ax.loglog(ns, [1.0 / n for n in ns], ":", color="gray", label="1/N")
    ax.legend()
    _style(ax, "N", "largest gap", f"orbit of rotation by {label or theta}")
    return _save(fig, path)


def plot_elliptic_distances(report: EllipticityReport, path) -> Path:
    """Histogram of sampled elliptic distances, one series per component."""
    fig, ax = plt.subplots(figsize=(6, 4))
    by_comp: dict[str, list[float]] = {}
    for comp, d in report.distances:
        by_comp.setdefault(comp, []).append(d)
    for comp in sorted(by_comp):
        ax.hist(by_comp[comp], bins=30, alpha=0.6, label=f"component {comp}")
    ax.axvline(report.threshold, color="red", ls="--", lw=1, label="threshold")
    ax.legend()
    _style(ax, "distance to elliptic set", "samples", f"delta = {report.delta}, seed = {report.seed}")
    return _save(fig, path)

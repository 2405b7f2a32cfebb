"""Chart rendering for report bundles.

Everything draws through the Agg backend with fixed sizes, so the PNG
bytes are reproducible run to run (the determinism checks hash them).
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .metrics import DegreeFrequencyTable  # noqa: E402
from .stats import NullModelRun  # noqa: E402

DPI = 150


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def save_degree_ecdf(tables: dict[str, DegreeFrequencyTable], path) -> Path:
    """Overlayed empirical CDFs of the degree distributions."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label in sorted(tables):
        table = tables[label]
        n = table.total
        xs, ys = [0], [0.0]
        acc = 0
        for d, f in table.rows:
            acc += f
            xs.append(d)
            ys.append(acc / n)
        ax.step(xs, ys, where="post", label=f"{label} (n={n})")
    ax.set_xscale("symlog")
    ax.set_xlabel("degree")
    ax.set_ylabel("cumulative share of nodes")
    ax.set_title("Degree distribution ECDF")
    ax.legend(loc="lower right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def save_degree_histogram(table: DegreeFrequencyTable, label: str, path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    degrees = [d for d, _ in table.rows]
    freqs = [f for _, f in table.rows]
    ax.bar(degrees, freqs, width=0.9, color="#4878a8")
    ax.set_xlabel("degree")
    ax.set_ylabel("nodes")
    ax.set_title(f"Degree frequencies: {label}")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    return _save(fig, path)


def save_indicator_deltas(deltas: dict[str, dict[str, float]], path) -> Path:
    """Grouped bars of indicator deltas versus the control panel.

    deltas maps panel label -> indicator -> (value - control value).
    """
    panels = sorted(deltas)
    indicators = sorted({ind for d in deltas.values() for ind in d})
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    width = 0.8 / max(1, len(panels))
    for pi, panel in enumerate(panels):
        xs = [i + pi * width for i in range(len(indicators))]
        ys = [deltas[panel].get(ind, 0.0) for ind in indicators]
        ax.bar(xs, ys, width=width, label=panel)
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(indicators))])
    ax.set_xticklabels(indicators, rotation=20, fontsize=7, ha="right")
    ax.set_ylabel("difference vs control")
    ax.set_title("Composition indicators relative to the control panel")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)


def save_null_histogram(run: NullModelRun, path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.hist(run.values, bins=40, color="#7aa87a", edgecolor="white")
    ax.axvline(run.observed, color="#b03030", linewidth=1.6,
               label=f"observed ({run.percentile:.1f}th pct)")
    ax.set_xlabel(run.indicator)
    ax.set_ylabel("draws")
    mode = "all panels" if run.exhaustive else f"{run.samples} draws"
    ax.set_title(f"Null model for {run.indicator} ({mode})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)

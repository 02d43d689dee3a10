#!/usr/bin/env python3
"""Render walk-experiment CSVs into publication-style figures.

Reads only the documented CSV schemas of the ``cyclewalk`` CLI; every number
shown comes straight from the file.  Four figure kinds:

* ``fidelity``         - Hellinger-fidelity-vs-timestep curves from a run or
                         scheme-comparison table.
* ``distributions``    - per-timestep bar panels of ideal vs measured walker
                         position distributions.
* ``entropy``          - Renyi-2 entropies of coin, position, and the full
                         register vs timestep, with the entanglement bounds.
* ``metrics-heatmap``  - (n, t) heatmap grid of gate counts and depth, one
                         column per scheme.

Usage: render.py --kind <kind> --in <csv> --out <png/svg> [--steps a:b]

Rendering is deterministic: fixed figure geometry, pinned font, no embedded
timestamps, so the same CSV yields identical image bytes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

RC_PARAMS = {
    "font.family": "DejaVu Sans",
    "svg.hashsalt": "cyclewalk-plots",
    "axes.grid": True,
    "grid.alpha": 0.3,
}

SCHEME_ORDER = ["present", "qft", "id-linear-depth", "id-ancilla"]
METRIC_ROWS = [("n1", "one-qubit gates"), ("n2", "two-qubit gates"),
               ("depth", "depth")]


class RenderError(ValueError):
    """Input table missing, empty, or lacking required columns."""


def load_table(path: str) -> pd.DataFrame:
    try:
        table = pd.read_csv(path)
    except FileNotFoundError:
        raise RenderError(f"input CSV not found: {path}") from None
    except pd.errors.EmptyDataError:
        raise RenderError(f"input CSV is empty: {path}") from None
    if table.empty:
        raise RenderError(f"input CSV has a header but no rows: {path}")
    return table


def require_columns(table: pd.DataFrame, names, path: str):
    missing = [c for c in names if c not in table.columns]
    if missing:
        raise RenderError(f"{path}: missing required column(s) {missing}")


def clip_steps(table: pd.DataFrame, steps: str | None) -> pd.DataFrame:
    if steps is None:
        return table
    try:
        lo, hi = (int(p) for p in steps.split(":"))
    except ValueError:
        raise RenderError(f"--steps expects lo:hi, got {steps!r}") from None
    return table[(table["t"] >= lo) & (table["t"] <= hi)]


# ---------------------------------------------------------------------------
# figure builders (pure: table in, Figure out)
# ---------------------------------------------------------------------------

def build_fidelity_figure(tables: dict[str, pd.DataFrame]) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for name, table in tables.items():
        cols = [c for c in table.columns
                if c == "hellinger_fidelity" or c.startswith("fidelity_")]
        if not cols:
            raise RenderError(f"{name}: no fidelity column "
                              "(hellinger_fidelity or fidelity_*)")
        for col in cols:
            label = col.replace("fidelity_", "").replace("hellinger_fidelity",
                                                         Path(name).stem)
            ax.plot(table["t"], table[col], marker="o", markersize=4,
                    label=label)
    ax.set_xlabel("timestep t")
    ax.set_ylabel("Hellinger fidelity")
    ax.set_ylim(0.0, 1.05)
    ax.axhline(0.8, color="gray", linestyle=":", linewidth=1)
    ax.legend(loc="lower left")
    fig.tight_layout()
    return fig


def build_distributions_figure(table: pd.DataFrame) -> plt.Figure:
    p_cols = sorted((c for c in table.columns if c.startswith("p_")),
                    key=lambda c: int(c.split("_")[1]))
    phat_cols = sorted((c for c in table.columns if c.startswith("phat_")),
                       key=lambda c: int(c.split("_")[1]))
    if not p_cols or len(p_cols) != len(phat_cols):
        raise RenderError("distribution figure needs matching p_k / phat_k "
                          "column families")
    steps = table["t"].to_numpy()
    n_panels = len(steps)
    n_cols = min(5, n_panels)
    n_rows = -(-n_panels // n_cols)
    fig, axes = plt.subplots(n_rows, n_cols,
                             figsize=(2.3 * n_cols, 2.0 * n_rows),
                             sharey=True, squeeze=False)
    positions = np.arange(len(p_cols))
    for k, (_, row) in enumerate(table.iterrows()):
        ax = axes[k // n_cols][k % n_cols]
        ax.bar(positions - 0.2, [row[c] for c in p_cols], width=0.4,
               label="ideal", color="#4878cf")
        ax.bar(positions + 0.2, [row[c] for c in phat_cols], width=0.4,
               label="measured", color="#ee854a")
        ax.set_title(f"t = {int(row['t'])}", fontsize=9)
        ax.set_xticks(positions)
        ax.set_ylim(0.0, 1.05)
    for k in range(n_panels, n_rows * n_cols):
        axes[k // n_cols][k % n_cols].set_axis_off()
    axes[0][0].legend(fontsize=7, loc="upper right")
    fig.supxlabel("walker position")
    fig.supylabel("probability")
    fig.tight_layout()
    return fig


def build_entropy_figure(table: pd.DataFrame) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    styles = {"s2_coin": ("coin", "o-"), "s2_position": ("position", "s--"),
              "s2_total": ("total", "^:")}
    for col, (label, style) in styles.items():
        ax.plot(table["t"], table[col], style, markersize=4, label=label)
    ax.axhline(1.0, color="gray", linestyle=":", linewidth=1)
    ax.axhline(0.0, color="gray", linestyle=":", linewidth=1)
    ax.set_xlabel("timestep t")
    ax.set_ylabel("Renyi-2 entropy (bits)")
    ax.set_ylim(-0.08, max(1.3, float(table[list(styles)].to_numpy().max()) + 0.2))
    ax.legend(loc="upper right")
    fig.tight_layout()
    return fig


def build_metrics_heatmap_figure(table: pd.DataFrame) -> plt.Figure:
    schemes = [s for s in SCHEME_ORDER if s in set(table["scheme"])]
    if not schemes:
        raise RenderError("metrics table lists no known schemes")
    fig, axes = plt.subplots(len(METRIC_ROWS), len(schemes),
                             figsize=(3.2 * len(schemes), 2.6 * len(METRIC_ROWS)),
                             squeeze=False)
    for col_i, scheme in enumerate(schemes):
        part = table[table["scheme"] == scheme]
        for row_i, (metric, title) in enumerate(METRIC_ROWS):
            ax = axes[row_i][col_i]
            grid = part.pivot(index="n", columns="t", values=metric)
            image = ax.imshow(grid.to_numpy(), aspect="auto", origin="lower",
                              cmap="viridis",
                              extent=(grid.columns.min() - 0.5,
                                      grid.columns.max() + 0.5,
                                      grid.index.min() - 0.5,
                                      grid.index.max() + 0.5))
            fig.colorbar(image, ax=ax, shrink=0.85)
            if row_i == 0:
                ax.set_title(scheme, fontsize=10)
            if col_i == 0:
                ax.set_ylabel(f"{title}\nposition qubits n")
            if row_i == len(METRIC_ROWS) - 1:
                ax.set_xlabel("timesteps t")
    fig.tight_layout()
    return fig


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def render(kind: str, inputs: list[str], out_path: str,
           steps: str | None = None, dpi: int = 150) -> Path:
    with plt.rc_context(RC_PARAMS):
        if kind == "fidelity":
            tables = {}
            for path in inputs:
                table = load_table(path)
                require_columns(table, ["t"], path)
                tables[path] = clip_steps(table, steps)
            fig = build_fidelity_figure(tables)
        else:
            if len(inputs) != 1:
                raise RenderError(f"kind {kind} takes exactly one input CSV")
            table = load_table(inputs[0])
            if kind == "distributions":
                require_columns(table, ["t"], inputs[0])
                fig = build_distributions_figure(clip_steps(table, steps))
            elif kind == "entropy":
                require_columns(table, ["t", "s2_coin", "s2_position",
                                        "s2_total"], inputs[0])
                fig = build_entropy_figure(clip_steps(table, steps))
            elif kind == "metrics-heatmap":
                require_columns(table, ["scheme", "n", "t", "n1", "n2",
                                        "depth"], inputs[0])
                fig = build_metrics_heatmap_figure(table)
            else:
                raise RenderError(f"unknown figure kind {kind!r}")
        out = Path(out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=dpi, metadata=_stable_metadata(out.suffix))
        plt.close(fig)
    return out


def _stable_metadata(suffix: str) -> dict:
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".png":
        return {"Software": "cyclewalk-plots"}
    return {}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Render walk CSVs to figures.")
    parser.add_argument("--kind", required=True,
                        choices=("fidelity", "distributions", "entropy",
                                 "metrics-heatmap"))
    parser.add_argument("--in", dest="inputs", required=True, action="append",
                        help="input CSV (repeatable for fidelity overlays)")
    parser.add_argument("--out", required=True, help="output image (.png/.svg)")
    parser.add_argument("--steps", default=None, help="restrict to t range lo:hi")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        path = render(args.kind, args.inputs, args.out, steps=args.steps,
                      dpi=args.dpi)
    except RenderError as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())

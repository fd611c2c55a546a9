"""Render netlists as lane diagrams (ASCII text or SVG files).

Lanes are the data paths, drawn left to right in stage order.  The X and
X-dagger fragments of the full-polarization backend collapse into single
boxes spanning all lanes, and the gadgets between them are drawn on the
lane whose mode pair they rotate, so an n-pair circuit renders with n
lanes regardless of ancilla rails.

ASCII output stays within 120 columns for dimensions up to 8.  SVG output
is byte-deterministic for a given netlist: fixed hash salt, no timestamp
metadata.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .elements import (
    MZI,
    PBS,
    PDBS,
    BalancedBS,
    CombinedRotation,
    DiagonalPhases,
    Netlist,
    PhaseShifter,
    WavePlateElement,
)
from .errors import NetlistError

_CELL = 5
_POL_CODE = {None: "", "h": "h", "v": "v"}


class _Column:
    """One display column: either a spanning box or a set of lane glyphs."""

    def __init__(self, box_label=None):
        self.box_label = box_label
        self.singles = {}
        self.pairs = []

    @property
    def is_box(self):
        return self.box_label is not None


def _lane_count(nl: Netlist) -> int:
    if nl.architecture == "fullpol":
        return max(nl.n_rails // 2, 1)
    return nl.n_rails


def _lane_of(path: int, n_lanes: int) -> int:
    return path - n_lanes if path >= n_lanes else path


def _add_element(col: _Column, elem, n_lanes: int) -> None:
    if isinstance(elem, MZI):
        col.pairs.append((*sorted(elem.paths), "M"))
    elif isinstance(elem, BalancedBS):
        col.pairs.append((*sorted(elem.paths), "S"))
    elif isinstance(elem, PDBS):
        col.pairs.append((*sorted(elem.paths), "P" + _POL_CODE[elem.active_pol]))
    elif isinstance(elem, PBS):
        col.pairs.append((*sorted(elem.paths), "B"))
    elif isinstance(elem, PhaseShifter):
        col.singles[_lane_of(elem.path, n_lanes)] = "P" + _POL_CODE[elem.pol]
    elif isinstance(elem, WavePlateElement):
        col.singles[_lane_of(elem.path, n_lanes)] = "H" if elem.plate.kind == "hwp" else "Q"
    elif isinstance(elem, CombinedRotation):
        col.singles[_lane_of(elem.path, n_lanes)] = "T"
    elif isinstance(elem, DiagonalPhases):
        for lane in range(n_lanes):
            col.singles[lane] = "D"
    else:
        raise NetlistError(f"unknown element kind {type(elem).__name__}")


def build_columns(nl: Netlist) -> tuple:
    """Collapse stages into display columns; returns (n_lanes, columns)."""
    n_lanes = _lane_count(nl)
    columns = []
    open_box = None
    for stage in nl.stages:
        if stage.role in ("x", "x_dagger"):
            key = (stage.role, stage.depth_group)
            if open_box != key:
                columns.append(_Column(box_label="X" if stage.role == "x" else "X'"))
                open_box = key
            continue
        open_box = None
        col = _Column()
        for elem in stage.elements:
            _add_element(col, elem, n_lanes)
        columns.append(col)
    return n_lanes, columns


def render_ascii(nl: Netlist) -> str:
    """Text diagram: one row per lane, one five-character cell per column."""
    n_lanes, columns = build_columns(nl)
    grid = [["-" * _CELL for _ in columns] for _ in range(n_lanes)]
    for ci, col in enumerate(columns):
        if col.is_box:
            for lane in range(n_lanes):
                grid[lane][ci] = f"{col.box_label:=^{_CELL}}"
            continue
        for lane, code in col.singles.items():
            grid[lane][ci] = f"--{code:-<2}-"
        for p, q, code in col.pairs:
            grid[p][ci] = f"-/{code:-<2}-"
            grid[q][ci] = f"-\\{code:-<2}-"
            for mid in range(p + 1, q):
                grid[mid][ci] = "--|--"
    lines = [f"{nl.architecture} dim={nl.dim} rails={nl.n_rails}"]
    for lane in range(n_lanes):
        lines.append(f"p{lane:<2}" + "".join(grid[lane]))
    return "\n".join(lines) + "\n"


def render_svg(nl: Netlist, out_path: str) -> None:
    """Draw the lane diagram and write a deterministic SVG file."""
    n_lanes, columns = build_columns(nl)
    n_cols = max(len(columns), 1)
    fig_w = 1.2 + 0.55 * n_cols
    fig_h = 1.0 + 0.5 * n_lanes
    plt.rcParams["svg.hashsalt"] = "pathpol"
    fig, ax = plt.subplots(figsize=(fig_w, fig_h))
    for lane in range(n_lanes):
        y = n_lanes - 1 - lane
        ax.plot([-0.8, n_cols - 0.2], [y, y], color="#4878a8", lw=1.2, zorder=1)
        ax.text(-0.95, y, f"p{lane}", ha="right", va="center", fontsize=8)
    for ci, col in enumerate(columns):
        if col.is_box:
            ax.add_patch(
                Rectangle(
                    (ci - 0.3, -0.45),
                    0.6,
                    n_lanes - 0.1,
                    facecolor="#d8e4f0",
                    edgecolor="#223344",
                    zorder=2,
                )
            )
            ax.text(ci, (n_lanes - 1) / 2.0, col.box_label, ha="center", va="center", fontsize=9, zorder=3)
            continue
        for lane, code in col.singles.items():
            y = n_lanes - 1 - lane
            ax.add_patch(
                Rectangle((ci - 0.22, y - 0.22), 0.44, 0.44, facecolor="#f0e6c8", edgecolor="#554422", zorder=2)
            )
            ax.text(ci, y, code, ha="center", va="center", fontsize=7, zorder=3)
        for p, q, code in col.pairs:
            yp = n_lanes - 1 - p
            yq = n_lanes - 1 - q
            ax.plot([ci, ci], [yq, yp], color="#8a2f2f", lw=1.6, zorder=2)
            ax.plot([ci, ci], [yq, yp], marker="o", ms=4, color="#8a2f2f", ls="", zorder=3)
            ax.text(ci + 0.12, (yp + yq) / 2.0, code, ha="left", va="center", fontsize=7, zorder=3)
    ax.set_xlim(-1.6, n_cols)
    ax.set_ylim(-0.8, n_lanes - 0.2)
    ax.set_axis_off()
    ax.set_title(f"{nl.architecture} dim={nl.dim}", fontsize=10)
    _save_deterministic(fig, out_path)
    plt.close(fig)


def plot_transmission(ns, series: dict, out_path: str) -> None:
    """Line chart of overall transmission against pair count n.

    ``series`` maps an architecture label to one value per entry of ``ns``.
    Written with the same deterministic settings as the lane diagrams.
    """
    plt.rcParams["svg.hashsalt"] = "pathpol"
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for label in sorted(series):
        ax.plot(list(ns), series[label], marker="o", ms=4, label=label)
    ax.set_xlabel("n (path pairs, N = 2n)")
    ax.set_ylabel("overall transmission")
    ax.set_yscale("log")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save_deterministic(fig, out_path)
    plt.close(fig)


def _save_deterministic(fig, out_path: str) -> None:
    if out_path.lower().endswith(".svg"):
        fig.savefig(out_path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    else:
        fig.savefig(out_path, dpi=150, bbox_inches="tight")

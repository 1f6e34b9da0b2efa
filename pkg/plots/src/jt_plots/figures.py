"""Figure rendering from the delimited experiment artifacts.

Two figure kinds are supported:

contour-triptych
    Two filled contour panels of single-step error over the (td1, td2)
    plane, one per method, sharing one linear color range, plus a line
    panel comparing both methods along the diagonal td1 = td2.
fidelity-lines
    State error against evolution time for four approximants, log-scale
    y-axis, with the conventional naming and colors of the curves.

Rendering is a pure function of the CSV contents: the style is pinned
(Agg backend, fixed figure geometry and dpi, no metadata), so rendering
the same file twice produces identical bytes.
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGURE_KINDS = ("contour-triptych", "fidelity-lines")

CONTOUR_COLUMNS = ("td1", "td2", "err_s3", "err_q3")
FIDELITY_COLUMNS = ("t", "eps_j1", "eps_s2", "eps_s3", "eps_q3")

# curve naming and colors follow the usual presentation of these methods
FIDELITY_STYLE = {
    "eps_j1": ("first-order Trotter-Suzuki", "red"),
    "eps_s2": ("second-order Trotter-Suzuki", "cyan"),
    "eps_s3": ("third-order Trotter-Suzuki", "gray"),
    "eps_q3": ("Jordan-Trotter product formula", "darkblue"),
}

CONTOUR_TITLES = {
    "err_s3": "third-order Trotter-Suzuki",
    "err_q3": "Jordan-Trotter product formula",
}

_DPI = 150


@dataclass(frozen=True)
class FigureJob:
    """One rendering request: input table, figure kind, output path."""

    csv_path: Path
    kind: str
    out_path: Path

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(
                f"unknown figure kind {self.kind!r}, expected one of {FIGURE_KINDS}"
            )


def read_columns(path, required) -> dict:
    """Load a CSV into float column arrays, checking the header.

    Required columns must all be present; anything else in the header is
    ignored with a warning.  A file without data rows is rejected.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        missing = [name for name in required if name not in header]
        if missing:
            noun = "column" if len(missing) == 1 else "columns"
            raise ValueError(f"{path}: missing {noun} {', '.join(missing)}")
        extra = [name for name in header if name not in required]
        if extra:
            warnings.warn(f"{path}: ignoring unknown columns {extra}", stacklevel=2)
        idx = {name: header.index(name) for name in required}
        data = {name: [] for name in required}
        for row in reader:
            for name, k in idx.items():
                data[name].append(float(row[k]))
    if not next(iter(data.values())):
        raise ValueError(f"{path}: no data rows")
    return {name: np.asarray(vals) for name, vals in data.items()}


def _grid_shape(td1, td2):
    """Recover the row-major grid axes behind the flat columns."""
    axis1 = np.unique(td1)
    axis2 = np.unique(td2)
    if axis1.size * axis2.size != td1.size:
        raise ValueError(
            f"rows do not fill a grid: {axis1.size} x {axis2.size} != {td1.size}"
        )
    return axis1, axis2


def build_contour_figure(data: dict):
    """Two shared-scale contour panels plus the diagonal comparison."""
    td1, td2 = data["td1"], data["td2"]
    axis1, axis2 = _grid_shape(td1, td2)
    fields = {name: data[name].reshape(axis1.size, axis2.size)
              for name in ("err_s3", "err_q3")}

    vmax = max(float(np.max(v)) for v in fields.values())
    levels = np.linspace(0.0, vmax, 21)

    fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.0), dpi=_DPI)
    for ax, (name, grid) in zip(axes[:2], fields.items()):
        im = ax.contourf(axis1, axis2, grid.T, levels=levels, cmap="viridis")
        ax.set_title(CONTOUR_TITLES[name])
        ax.set_xlabel("td1")
        ax.set_ylabel("td2")
        fig.colorbar(im, ax=ax)

    mask = td1 == td2
    if not np.any(mask):
        raise ValueError("no rows with td1 = td2 for the diagonal panel")
    order = np.argsort(td1[mask])
    diag_t = td1[mask][order]
    ax = axes[2]
    for name, color in (("err_s3", "gray"), ("err_q3", "darkblue")):
        ax.plot(diag_t, data[name][mask][order], color=color,
                label=CONTOUR_TITLES[name])
    ax.set_title("diagonal td1 = td2")
    ax.set_xlabel("td")
    ax.set_ylabel("error")
    ax.legend()
    fig.tight_layout()
    return fig


def build_fidelity_figure(data: dict):
    """Four labeled error curves against time, log-scale y-axis."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=_DPI)
    for name in FIDELITY_COLUMNS[1:]:
        label, color = FIDELITY_STYLE[name]
        ax.plot(data["t"], data[name], color=color, label=label)
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("state error")
    ax.legend()
    fig.tight_layout()
    return fig


def _save(fig, out_path) -> None:
    fig.savefig(out_path, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)


def render_contour_triptych(job: FigureJob) -> Path:
    data = read_columns(job.csv_path, CONTOUR_COLUMNS)
    _save(build_contour_figure(data), job.out_path)
    return Path(job.out_path)


def render_fidelity_lines(job: FigureJob) -> Path:
    data = read_columns(job.csv_path, FIDELITY_COLUMNS)
    _save(build_fidelity_figure(data), job.out_path)
    return Path(job.out_path)


def render(job: FigureJob) -> Path:
    if job.kind == "contour-triptych":
        return render_contour_triptych(job)
    return render_fidelity_lines(job)

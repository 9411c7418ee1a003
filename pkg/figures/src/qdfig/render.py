"""Figure definitions and the deterministic SVG renderer.

Five figure ids are supported:

- fig1: relative energies against ln g, one curve per (epsilon, sector, level)
- fig2: linear entropy against ln g, one curve per (epsilon, sector), with a
  horizontal asymptote line per epsilon taken from the asymptotic CSV
- fig3: leading occupancies against ln g, one curve per
  (epsilon, sector, occupancy index)
- fig4: asymptotic occupancies against ln(epsilon - 1), one curve per
  occupancy index
- fig5: asymptotic von Neumann entropy and linearly rescaled linear entropy
  against ln(epsilon - 1)

Rendering is pure: no timestamps, fixed style, fixed hash salt, so the same
CSV input always yields the same SVG bytes. All physics numbers come from
the CSVs; the only arithmetic here is axis transforms and the declared
rescale on fig5.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator

import matplotlib
import numpy as np

matplotlib.use("svg")

import matplotlib.pyplot as plt  # noqa: E402

from .errors import FigureError, TransformError
from .reader import (
    ASYMPTOTIC_COLUMNS,
    ENTANGLEMENT_COLUMNS,
    SPECTRUM_COLUMNS,
    read_table,
)

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5")

# input roles each figure consumes, in reader-schema terms
FIGURE_INPUTS = {
    "fig1": ("spectrum",),
    "fig2": ("entanglement", "asymptotic"),
    "fig3": ("entanglement",),
    "fig4": ("asymptotic",),
    "fig5": ("asymptotic",),
}

ROLE_COLUMNS = {
    "spectrum": SPECTRUM_COLUMNS,
    "entanglement": ENTANGLEMENT_COLUMNS,
    "asymptotic": ASYMPTOTIC_COLUMNS,
}

N_OCCUPANCY_CURVES = 4

# declared linear rescale drawn on fig5 alongside the entropy curve
L_RESCALE_SLOPE = 12.8
L_RESCALE_INTERCEPT = -7.6

STYLE = {
    "svg.hashsalt": "qdfig",
    "svg.fonttype": "none",
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 100,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "legend.fontsize": 8,
    "path.simplify": False,
}


@dataclass(frozen=True)
class FigureSpec:
    """A renderable figure: id, input CSV paths by role, and output path."""

    figure_id: str
    inputs: dict[str, str]
    output: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise FigureError(f"unknown figure id {self.figure_id!r}")
        for role in FIGURE_INPUTS[self.figure_id]:
            if role not in self.inputs:
                raise FigureError(f"{self.figure_id} needs an input for role {role!r}")


@dataclass
class RenderReport:
    """What a render produced: curve labels and asymptote count."""

    figure_id: str
    output: str
    series_labels: list[str] = field(default_factory=list)
    asymptote_count: int = 0


def ln_g(g: np.ndarray) -> np.ndarray:
    if np.any(g <= 0.0):
        raise TransformError("ln g is undefined at g <= 0; drop nonpositive-g rows")
    return np.log(g)


def ln_eps_minus_1(epsilon: np.ndarray) -> np.ndarray:
    if np.any(epsilon <= 1.0):
        raise TransformError(
            "ln(epsilon - 1) is undefined at epsilon <= 1; drop isotropic rows"
        )
    return np.log(epsilon - 1.0)


def _fmt(value: float) -> str:
    return f"{value:g}"


def _sweep_keys(table: dict[str, np.ndarray]) -> Iterator[tuple[float, str, np.ndarray]]:
    """Yield (epsilon, sector, row mask) per sweep series in sorted order."""
    pairs = sorted(
        {(float(e), str(s)) for e, s in zip(table["epsilon"], table["sector"])}
    )
    for eps, sector in pairs:
        mask = (table["epsilon"] == eps) & (table["sector"] == sector)
        yield eps, sector, mask


def _sorted_by_g(table, mask):
    order = np.argsort(table["g"][mask], kind="stable")
    return table["g"][mask][order], order


def _draw_fig1(ax, spec, report):
    table = read_table(spec.inputs["spectrum"], SPECTRUM_COLUMNS)
    for eps, sector, mask in _sweep_keys(table):
        for level in sorted({int(v) for v in table["level"][mask]}):
            sub = mask & (table["level"] == level)
            g, order = _sorted_by_g(table, sub)
            label = f"eps={_fmt(eps)} {sector} n={level}"
            ax.plot(ln_g(g), table["E_rel"][sub][order], label=label)
            report.series_labels.append(label)
    ax.set_xlabel("ln g")
    ax.set_ylabel("relative energy")


def _asymptote_values(path: str, column: str) -> dict[float, float]:
    table = read_table(path, ASYMPTOTIC_COLUMNS)
    return {
        float(e): float(v) for e, v in zip(table["epsilon"], table[column])
    }


def _draw_fig2(ax, spec, report):
    table = read_table(spec.inputs["entanglement"], ENTANGLEMENT_COLUMNS)
    asymptotes = _asymptote_values(spec.inputs["asymptotic"], "L_closed")
    seen_eps = []
    for eps, sector, mask in _sweep_keys(table):
        g, order = _sorted_by_g(table, mask)
        label = f"eps={_fmt(eps)} {sector}"
        ax.plot(ln_g(g), table["L_lin"][mask][order], label=label)
        report.series_labels.append(label)
        if eps not in seen_eps:
            seen_eps.append(eps)
    for eps in seen_eps:
        if eps in asymptotes:
            ax.axhline(asymptotes[eps], color="0.4", linestyle="--", linewidth=0.9)
            report.asymptote_count += 1
    ax.set_xlabel("ln g")
    ax.set_ylabel("linear entropy")


def _draw_fig3(ax, spec, report):
    table = read_table(spec.inputs["entanglement"], ENTANGLEMENT_COLUMNS)
    for eps, sector, mask in _sweep_keys(table):
        g, order = _sorted_by_g(table, mask)
        for k in range(N_OCCUPANCY_CURVES):
            label = f"eps={_fmt(eps)} {sector} lambda{k}"
            ax.plot(ln_g(g), table[f"lambda{k}"][mask][order], label=label)
            report.series_labels.append(label)
    ax.set_xlabel("ln g")
    ax.set_ylabel("occupancy")


def _draw_fig4(ax, spec, report):
    table = read_table(spec.inputs["asymptotic"], ASYMPTOTIC_COLUMNS)
    x = ln_eps_minus_1(table["epsilon"])
    order = np.argsort(x, kind="stable")
    for k in range(N_OCCUPANCY_CURVES):
        label = f"lambda{k}"
        ax.plot(x[order], table[f"lambda{k}"][order], label=label)
        report.series_labels.append(label)
    ax.set_xlabel("ln(epsilon - 1)")
    ax.set_ylabel("asymptotic occupancy")


def _draw_fig5(ax, spec, report):
    table = read_table(spec.inputs["asymptotic"], ASYMPTOTIC_COLUMNS)
    x = ln_eps_minus_1(table["epsilon"])
    order = np.argsort(x, kind="stable")
    ax.plot(x[order], table["S_vn"][order], label="S")
    report.series_labels.append("S")
    rescaled = L_RESCALE_SLOPE * table["L_closed"][order] + L_RESCALE_INTERCEPT
    label = f"{_fmt(L_RESCALE_SLOPE)} L {_fmt(L_RESCALE_INTERCEPT)}"
    ax.plot(x[order], rescaled, linestyle=":", label=label)
    report.series_labels.append(label)
    ax.set_xlabel("ln(epsilon - 1)")
    ax.set_ylabel("entropy")


_DRAWERS = {
    "fig1": _draw_fig1,
    "fig2": _draw_fig2,
    "fig3": _draw_fig3,
    "fig4": _draw_fig4,
    "fig5": _draw_fig5,
}


def render(spec: FigureSpec) -> RenderReport:
    """Render one figure to SVG; on any error no output file is written."""
    report = RenderReport(spec.figure_id, spec.output)
    with matplotlib.rc_context(STYLE):
        fig, ax = plt.subplots()
        try:
            _DRAWERS[spec.figure_id](ax, spec, report)
            ax.legend(loc="best")
            tmp = spec.output + ".tmp"
            try:
                fig.savefig(tmp, format="svg", metadata={"Date": None})
                os.replace(tmp, spec.output)
            except BaseException:
                if os.path.exists(tmp):
                    os.remove(tmp)
                raise
        finally:
            plt.close(fig)
    return report


def default_specs(data_dir: str, out_dir: str) -> list[FigureSpec]:
    """Specs wiring the conventional CSV names to fig1..fig5 outputs."""
    spectrum = os.path.join(data_dir, "spectrum.csv")
    entanglement = os.path.join(data_dir, "entanglement.csv")
    asymptotic = os.path.join(data_dir, "asymptotic.csv")
    out = lambda fid: os.path.join(out_dir, f"{fid}.svg")
    return [
        FigureSpec("fig1", {"spectrum": spectrum}, out("fig1")),
        FigureSpec(
            "fig2",
            {"entanglement": entanglement, "asymptotic": asymptotic},
            out("fig2"),
        ),
        FigureSpec("fig3", {"entanglement": entanglement}, out("fig3")),
        FigureSpec("fig4", {"asymptotic": asymptotic}, out("fig4")),
        FigureSpec("fig5", {"asymptotic": asymptotic}, out("fig5")),
    ]

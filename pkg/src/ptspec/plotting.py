"""Figure rendering for Stokes diagrams and traced lines.

Anti-Stokes lines are drawn solid red, Stokes lines dashed blue, matching
the legend of the benchmark figures.  Rendering is headless (Agg) since
this module backs the CLI report path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .potential import PotentialSpec, canonicalize, turning_points
from .stokes import StokesDiagram, TracedLine

__all__ = ["render_diagram"]

_STYLE = {
    "antistokes": dict(color="red", linestyle="-", linewidth=1.2),
    "stokes": dict(color="blue", linestyle="--", linewidth=1.0),
}


def _spec_label(spec: PotentialSpec) -> str:
    sign = "" if spec.s == 1 else "-"
    label = f"{sign}x^{2 * spec.M} (ix)^{spec.epsilon}"
    if spec.b:
        label += f" + {spec.b:g} ix"
    return label


def render_diagram(spec: PotentialSpec, diagram: StokesDiagram, path: str,
                   traces: list[TracedLine] | None = None,
                   energy: float | None = None, radius: float = 4.0) -> None:
    """Save a figure of the asymptotic directions and optional traced lines."""
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    for line in diagram.lines:
        ray = np.array([0.7 * radius, radius]) if traces else np.array([0.0, radius])
        ax.plot(ray * np.cos(line.angle), ray * np.sin(line.angle),
                **_STYLE[line.kind])
        frac = line.fraction
        lx = 1.09 * radius * np.cos(line.angle)
        ly = 1.09 * radius * np.sin(line.angle)
        ax.text(lx, ly, f"{frac.numerator}π/{frac.denominator}",
                ha="center", va="center", fontsize=7)
    if traces:
        for tr in traces:
            pts = tr.points[np.abs(tr.points) <= radius]
            ax.plot(pts.real, pts.imag, **_STYLE[tr.kind])
    if energy is not None:
        tps = turning_points(canonicalize(spec), energy).points
        ax.plot([t.real for t in tps], [t.imag for t in tps], "ko", markersize=4,
                zorder=5)
    ax.axhline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.axvline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.set_xlim(-1.2 * radius, 1.2 * radius)
    ax.set_ylim(-1.2 * radius, 1.2 * radius)
    ax.set_aspect("equal")
    ax.set_xlabel("Re x")
    ax.set_ylabel("Im x")
    title = f"V = {_spec_label(spec)}: anti-Stokes (solid red), Stokes (dashed blue)"
    if energy is not None:
        title += f"\nlines traced at E = {energy:g}"
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)

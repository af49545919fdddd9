"""Matplotlib rendering of the CLI's report curves (Agg backend, file
output only)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .criterion import CriterionReport

_CURVE_TITLES = {
    1: "cnoidal KdV instability indicator h",
    2: "dnoidal mKdV instability indicator h",
    3: "snoidal defocusing mKdV indicator h (criterion fails: h < 0)",
}


def render_criterion_curve(
    reports: Sequence[CriterionReport], which: int, path: str | Path
) -> Path:
    """Plot h(kappa) for one report sweep and save it next to the CSV."""
    path = Path(path)
    kappas = [r.kappa for r in reports]
    hs = [r.h_value for r in reports]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(kappas, hs, marker="o", markersize=2.5, lw=1.2)
    ax.axhline(0.0, color="0.4", lw=0.8)
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel(r"$h(\kappa)$")
    ax.set_title(_CURVE_TITLES.get(which, "instability indicator"))
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

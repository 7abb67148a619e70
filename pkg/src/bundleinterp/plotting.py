"""Two-colour region grids for scan tables."""
from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

from .classify import Region, Row  # noqa: E402

# statuses counted as "theorem applies"
POSITIVE = {"true", "INTERPOLATION", "WEAK_ONLY"}
COLOURS = ("#d9d9d9", "#2b6cb0")
AXIS_LABEL = {Region.ELLIPTIC: "n", Region.SPACE: "g", Region.HILBERT: "g"}


def _positive(status: str) -> bool:
    return status in POSITIVE or status.startswith("PARTIAL")


def region_figure(rows: Sequence[Row], which: Region, title: str | None = None):
    if not rows:
        raise ValueError("nothing to plot")
    ds = sorted({r.d for r in rows})
    ss = sorted({r.g_or_n for r in rows})
    grid = [[0] * len(ds) for _ in ss]
    for r in rows:
        grid[ss.index(r.g_or_n)][ds.index(r.d)] = int(_positive(r.status))

    fig, ax = plt.subplots(figsize=(0.35 * len(ds) + 2, 0.35 * len(ss) + 1.5))
    ax.imshow(grid, origin="lower", cmap=ListedColormap(COLOURS), vmin=0, vmax=1, aspect="equal",
              extent=(ds[0] - 0.5, ds[-1] + 0.5, ss[0] - 0.5, ss[-1] + 0.5), interpolation="nearest")
    for r in rows:
        if r.status.startswith("PARTIAL"):
            ax.plot(r.d, r.g_or_n, marker="x", color="#c53030", ms=6)
    ax.set_xlabel("d")
    ax.set_ylabel(AXIS_LABEL[which])
    ax.set_xticks(ds)
    ax.set_yticks(ss)
    ax.tick_params(labelsize=7)
    ax.set_title(title or f"{which.value} region")
    ax.legend(handles=[Patch(color=COLOURS[1], label="theorem applies"), Patch(color=COLOURS[0], label="no claim")],
              loc="upper left", bbox_to_anchor=(1.01, 1), fontsize=7, frameon=False)
    fig.tight_layout()
    return fig


def save_region_plot(rows: Sequence[Row], which: Region, path, title: str | None = None) -> None:
    """Write the grid to ``path``; the format follows the suffix (svg, png, pdf)."""
    fig = region_figure(rows, which, title)
    with plt.rc_context({"svg.hashsalt": "bundleinterp", "svg.fonttype": "path"}):
        fig.savefig(path, metadata=_metadata(str(path)))
    plt.close(fig)


def region_svg(rows: Sequence[Row], which: Region, title: str | None = None) -> str:
    fig = region_figure(rows, which, title)
    buf = io.StringIO()
    with plt.rc_context({"svg.hashsalt": "bundleinterp", "svg.fonttype": "path"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _metadata(path: str) -> dict:
    # drop timestamps so repeated runs give identical files
    if path.endswith(".svg"):
        return {"Date": None}
    if path.endswith(".pdf"):
        return {"CreationDate": None}
    return {}

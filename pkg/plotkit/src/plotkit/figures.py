"""Figure rendering for root point clouds.

Four figure kinds: flat root scatters of the periodic and preperiodic
clouds (axes fixed to [-2, 2] squared), gap close-ups color-banded by
word length, and a 3D view with the leading root on the vertical axis.
Dense clouds (above a million points) switch from scatter to a 2D
histogram; raw scatters of that many markers are unreadable and slow.

Every render logs and asserts its point accounting: flat and 3D figures
plot exactly the parsed records, close-ups plot exactly the records
inside the window.  Saved PNGs carry no software metadata so the same
input bytes give the same image bytes.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .pointfile import read_points, word_length

KINDS = ("omega2", "omega2pre", "gap_closeup", "teapot3d")
DENSITY_THRESHOLD = 1_000_000
_DPI = 100


@dataclass(frozen=True)
class PlotJob:
    inputs: tuple[str, ...]
    kind: str
    out: str
    size: tuple[int, int] = (900, 900)
    scheme: str = "viridis"
    center: complex = 1j
    radius: float = 0.1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input file is required")
        if self.kind == "gap_closeup" and not self.radius > 0:
            raise ValueError("close-up radius must be positive")
        if self.size[0] < 1 or self.size[1] < 1:
            raise ValueError("image size must be positive")


def _log(msg: str):
    print(f"plotkit: {msg}", file=sys.stderr)


def _load(job: PlotJob) -> np.ndarray:
    parts = [read_points(path) for path in job.inputs]
    arr = parts[0] if len(parts) == 1 else np.concatenate(parts)
    _log(f"parsed {len(arr)} points from {len(parts)} file(s)")
    return arr


def _new_axes(job: PlotJob, three_d: bool = False):
    fig = plt.figure(figsize=(job.size[0] / _DPI, job.size[1] / _DPI), dpi=_DPI)
    if three_d:
        ax = fig.add_subplot(projection="3d")
    else:
        ax = fig.add_subplot()
        ax.set_aspect("equal")
    return fig, ax


def _save(fig, job: PlotJob) -> str:
    fig.savefig(job.out, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)
    return job.out


def length_bands(lengths: np.ndarray, max_bands: int = 16) -> list[tuple[str, np.ndarray]]:
    """(label, mask) pairs binning points by word length, one band per
    length when that stays legible and equal-width groups otherwise."""
    distinct = np.unique(lengths)
    if len(distinct) <= max_bands:
        return [(str(v), lengths == v) for v in distinct]
    edges = np.linspace(distinct.min(), distinct.max() + 1, 9).astype(int)
    bands = []
    for lo, hi in zip(edges, edges[1:]):
        mask = (lengths >= lo) & (lengths < hi)
        if mask.any():
            bands.append((f"{lo}-{hi - 1}", mask))
    return bands


def _render_flat(job: PlotJob, arr: np.ndarray) -> int:
    fig, ax = _new_axes(job)
    ax.set_xlim(-2, 2)
    ax.set_ylim(-2, 2)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if len(arr) > DENSITY_THRESHOLD:
        # clip the (at most 1e-6) annulus tolerance overshoot so the
        # histogram accounts for every parsed point
        counts, xe, ye = np.histogram2d(
            np.clip(arr["z_re"], -2, 2), np.clip(arr["z_im"], -2, 2),
            bins=min(job.size[0], 1024), range=[[-2, 2], [-2, 2]])
        ax.imshow(np.log1p(counts).T, origin="lower", extent=(-2, 2, -2, 2),
                  cmap=job.scheme, interpolation="nearest")
        plotted = int(counts.sum())
    else:
        ax.scatter(arr["z_re"], arr["z_im"], s=0.25, c="#1a1a2e",
                   marker=".", linewidths=0)
        plotted = len(arr)
    _save(fig, job)
    return plotted


def _render_closeup(job: PlotJob, arr: np.ndarray) -> int:
    cx, cy, r = job.center.real, job.center.imag, job.radius
    window = ((np.abs(arr["z_re"] - cx) <= r) &
              (np.abs(arr["z_im"] - cy) <= r))
    sel = arr[window]
    _log(f"{len(sel)} points inside the window")
    fig, ax = _new_axes(job)
    ax.set_xlim(cx - r, cx + r)
    ax.set_ylim(cy - r, cy + r)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    plotted = 0
    if len(sel):
        lengths = np.array([word_length(int(w)) for w in sel["word_id"]])
        bands = length_bands(lengths)
        cmap = plt.get_cmap(job.scheme)
        for i, (label, mask) in enumerate(bands):
            color = cmap(i / max(len(bands) - 1, 1))
            ax.scatter(sel["z_re"][mask], sel["z_im"][mask], s=4,
                       color=color, label=label, linewidths=0)
            plotted += int(mask.sum())
        ax.legend(title="length", loc="upper right", fontsize="x-small",
                  title_fontsize="x-small", markerscale=2)
    _save(fig, job)
    return plotted


def _render_teapot(job: PlotJob, arr: np.ndarray) -> int:
    fig, ax = _new_axes(job, three_d=True)
    ax.set_xlim(-2, 2)
    ax.set_ylim(-2, 2)
    ax.set_zlim(1, 2)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_zlabel("growth rate")
    ax.scatter(arr["z_re"], arr["z_im"], arr["lam"], s=0.2, c=arr["lam"],
               cmap=job.scheme, marker=".", linewidths=0)
    _save(fig, job)
    return len(arr)


def render(job: PlotJob) -> str:
    """Render one figure; returns the written image path."""
    arr = _load(job)
    if len(arr) == 0:
        _log("warning: empty cloud, rendering blank axes")
        if job.kind == "gap_closeup":
            plotted = _render_closeup(job, arr)
        elif job.kind == "teapot3d":
            plotted = _render_teapot(job, arr)
        else:
            plotted = _render_flat(job, arr)
        _log(f"plotted {plotted} points -> {job.out}")
        return job.out

    if job.kind in ("omega2", "omega2pre"):
        plotted = _render_flat(job, arr)
        expected = len(arr)
    elif job.kind == "gap_closeup":
        cx, cy, r = job.center.real, job.center.imag, job.radius
        expected = int(((np.abs(arr["z_re"] - cx) <= r) &
                        (np.abs(arr["z_im"] - cy) <= r)).sum())
        plotted = _render_closeup(job, arr)
    else:
        plotted = _render_teapot(job, arr)
        expected = len(arr)
    if plotted != expected:
        raise RuntimeError(f"point accounting broke: plotted {plotted}, "
                           f"expected {expected}")
    _log(f"plotted {plotted} points -> {job.out}")
    return job.out

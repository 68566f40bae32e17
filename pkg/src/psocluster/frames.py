"""Per-iteration SVG scatter frames for 2-D runs.

Each frame shows the data coloured by the global-best assignment, every
particle's centroids as small markers in that particle's colour, and the
global-best centroids as large outlined crosses. The view box is the data
bounding box padded by 5% on each side and stays fixed for the whole run,
so consecutive frames can be stitched into a video with any external tool.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .core import DataSet, as_points

logger = logging.getLogger(__name__)

WIDTH = HEIGHT = 480
MARGIN = 24
PAD = 0.05
CLUSTER_COLORS = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
PARTICLE_COLORS = ("#00a651", "#c2008a", "#0072bc", "#f7941d", "#6d6e71", "#8dc63f")


def frame_name(iteration: int) -> str:
    return f"frame_{iteration:04d}.svg"


class _Viewport:
    def __init__(self, X: np.ndarray):
        lo, hi = X.min(axis=0), X.max(axis=0)
        span = np.where(hi > lo, hi - lo, 1.0)
        self.lo = lo - PAD * span
        self.hi = hi + PAD * span

    def __call__(self, pt):
        inner_w, inner_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
        fx = (pt[0] - self.lo[0]) / (self.hi[0] - self.lo[0])
        fy = (pt[1] - self.lo[1]) / (self.hi[1] - self.lo[1])
        return MARGIN + fx * inner_w, HEIGHT - MARGIN - fy * inner_h


def _f(v: float) -> str:
    return f"{v:.3f}"


def render_frame(X, swarm, labels, iteration: int) -> str:
    """SVG document text for one iteration."""
    X = as_points(X)
    view = _Viewport(X)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}" fill="none" stroke="#888"/>',
        f'<clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" '
        f'height="{HEIGHT - 2 * MARGIN}"/></clipPath>',
        f'<text x="{MARGIN}" y="{MARGIN - 8}" font-family="monospace" font-size="12">'
        f'iteration {iteration}</text>',
        '<g id="data" clip-path="url(#plot)">',
    ]
    for pt, lab in zip(X, labels):
        x, y = view(pt)
        color = CLUSTER_COLORS[int(lab) % len(CLUSTER_COLORS)]
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="{color}"/>')
    out.append("</g>")
    out.append('<g id="particles" clip-path="url(#plot)">')
    for i, p in enumerate(swarm.particles):
        color = PARTICLE_COLORS[i % len(PARTICLE_COLORS)]
        for c in p.position:
            x, y = view(c)
            out.append(
                f'<rect x="{_f(x - 4)}" y="{_f(y - 4)}" width="8" height="8" '
                f'fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
    out.append("</g>")
    out.append('<g id="gbest" clip-path="url(#plot)">')
    for c in swarm.global_best_position:
        x, y = view(c)
        out.append(
            f'<path d="M{_f(x - 8)} {_f(y)}H{_f(x + 8)}M{_f(x)} {_f(y - 8)}V{_f(y + 8)}" '
            'stroke="black" stroke-width="3"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_frame(data, swarm, labels, iteration: int, directory):
    """Write ``frame_NNNN.svg`` into ``directory`` and return its path.

    Only 2-D data can be drawn; for other dimensionalities nothing is written
    and ``None`` is returned.
    """
    X = data.points if isinstance(data, DataSet) else as_points(data)
    if X.shape[1] != 2:
        logger.info("frames are only drawn for 2-D data (got d=%d); skipping", X.shape[1])
        return None
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / frame_name(iteration)
    path.write_text(render_frame(X, swarm, labels, iteration))
    return path


class FrameWriter:
    """Iteration callback that writes one frame per iteration.

    For non-2-D data it logs a single notice and writes nothing.
    """

    def __init__(self, data, directory):
        self.X = data.points if isinstance(data, DataSet) else as_points(data)
        self.directory = Path(directory)
        self.paths = []
        self.enabled = self.X.shape[1] == 2
        if not self.enabled:
            logger.warning(
                "frames requested but data has %d dimensions; only 2-D runs are drawn",
                self.X.shape[1],
            )

    def __call__(self, iteration, swarm, labels):
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / frame_name(iteration)
        path.write_text(render_frame(self.X, swarm, labels, iteration))
        self.paths.append(path)

"""Figure rendering for boundary-curve reports.

The plot command's delimited output (theta, Re, Im rows for the dominant
and target boundary curves) is accompanied by a rendered figure; rendering
goes through the Agg canvas directly so no interactive backend is touched.
"""

from __future__ import annotations

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

__all__ = ["render_curves_png", "render_curves_svg"]


def _close(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pts = np.concatenate([points, points[:1]])
    return pts.real, pts.imag


def render_curves_png(
    q_points: np.ndarray,
    target_points: np.ndarray,
    title: str,
    out_path: str,
) -> None:
    """Render the dominant curve inside the target curve to a PNG file."""
    fig = Figure(figsize=(6.0, 6.0), dpi=150)
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    ax.plot(*_close(np.asarray(target_points)), color="tab:blue", lw=1.2, label="target boundary")
    ax.plot(*_close(np.asarray(q_points)), color="tab:red", lw=1.2, label="dominant boundary")
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.savefig(out_path, bbox_inches="tight")


def render_curves_svg(
    q_points: np.ndarray,
    target_points: np.ndarray,
    title: str,
    out_path: str,
    size: int = 640,
) -> None:
    """Write minimal static SVG markup: exactly two closed polylines.

    Intentionally not a matplotlib rendering; downstream tooling relies on
    the two-polyline structure.
    """
    q = np.asarray(q_points)
    t = np.asarray(target_points)
    allpts = np.concatenate([q, t])
    lo_x, hi_x = float(np.min(allpts.real)), float(np.max(allpts.real))
    lo_y, hi_y = float(np.min(allpts.imag)), float(np.max(allpts.imag))
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    pad = 0.05 * span
    scale = size / (span + 2 * pad)

    def to_px(pts: np.ndarray) -> str:
        xs = (pts.real - lo_x + pad) * scale
        ys = (hi_y - pts.imag + pad) * scale  # svg y grows downward
        closed = np.column_stack([np.append(xs, xs[0]), np.append(ys, ys[0])])
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in closed)

    with open(out_path, "w", encoding="utf-8") as handle:
        handle.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
        )
        handle.write(f"<title>{title}</title>\n")
        handle.write(
            f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{to_px(t)}"/>\n'
        )
        handle.write(
            f'<polyline fill="none" stroke="#d62728" stroke-width="1.5" points="{to_px(q)}"/>\n'
        )
        handle.write("</svg>\n")

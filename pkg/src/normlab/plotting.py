"""Figure rendering for two-dimensional spaces.

One figure per space: the unit ball of the norm, the unit ball of its dual,
and a fan of orthogonality segments along the sphere (at each base point x
the drawn direction y spans the kernel of a norming functional at x, so x is
orthogonal to y in the triangle-inequality sense). The boundary samples
behind the figure land in a CSV next to the image.
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from . import norms as nr  # noqa: E402


def ball_boundary(spec: nr.NormSpec, resolution: int = 720):
    """(theta, points): the unit sphere of spec traced by angle."""
    theta = np.linspace(0.0, 2.0 * math.pi, resolution, endpoint=False)
    dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    r = 1.0 / nr.norm_eval_many(spec, dirs)
    return theta, dirs * r[:, None]


def orthogonal_fan(spec: nr.NormSpec, count: int = 12):
    """(x, y) pairs with x on the sphere and y a unit direction BJ-orthogonal
    to x."""
    pairs = []
    for k in range(count):
        theta = 2.0 * math.pi * k / count
        d = np.array([math.cos(theta), math.sin(theta)])
        x = d / nr.norm_eval(spec, d)
        f = nr.norming_functional(spec, x)
        y = np.array([-f[1], f[0]])  # kernel of f in two dimensions
        ny = nr.norm_eval(spec, y)
        if ny < 1e-12:
            continue
        pairs.append((x, y / ny))
    return pairs


def render_plot(spec: nr.NormSpec, out_path: str, title: str = "", fan: int = 12,
                resolution: int = 720, csv_path: str | None = None):
    """Write the figure (format from the extension, SVG by default) and the
    boundary CSV; returns (figure_path, csv_path)."""
    if spec.dim != 2:
        raise nr.NormSpecError("plots are only defined for two-dimensional spaces")
    if not os.path.splitext(out_path)[1]:
        out_path = out_path + ".svg"
    if csv_path is None:
        csv_path = os.path.splitext(out_path)[0] + ".csv"

    theta, ball = ball_boundary(spec, resolution)
    _, dual_ball = ball_boundary(nr.dual(spec), resolution)

    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    ax.plot(np.append(ball[:, 0], ball[0, 0]), np.append(ball[:, 1], ball[0, 1]),
            color="tab:blue", lw=1.8, label="unit ball")
    ax.plot(np.append(dual_ball[:, 0], dual_ball[0, 0]),
            np.append(dual_ball[:, 1], dual_ball[0, 1]),
            color="tab:orange", lw=1.6, ls="--", label="dual ball")
    for x, y in orthogonal_fan(spec, fan):
        seg = np.array([x - 0.35 * y, x + 0.35 * y])
        ax.plot(seg[:, 0], seg[:, 1], color="tab:green", lw=0.9, alpha=0.8)
        ax.plot([x[0]], [x[1]], marker=".", color="tab:green", ms=4)
    lim = 1.15 * max(np.abs(ball).max(), np.abs(dual_ball).max())
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.axhline(0.0, color="0.85", lw=0.6, zorder=0)
    ax.axvline(0.0, color="0.85", lw=0.6, zorder=0)
    ax.legend(loc="upper right", fontsize=8)
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(out_path, bbox_inches="tight")
    plt.close(fig)

    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "ball_x", "ball_y", "dual_x", "dual_y"])
        for t, b, d in zip(theta, ball, dual_ball):
            writer.writerow([f"{t:.12g}", f"{b[0]:.12g}", f"{b[1]:.12g}",
                             f"{d[0]:.12g}", f"{d[1]:.12g}"])
    return out_path, csv_path

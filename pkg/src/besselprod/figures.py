"""q_nu curves on (x_min, 2.5] and matplotlib renderings of them and of sweep margins."""
from __future__ import annotations

import csv
import io
import math
from typing import Optional, Sequence

import numpy as np

from .bounds import q_ratio
from .explore import q_limit_at_zero

FIGURE1_ORDERS = (0.0, 0.15, 0.2, 0.25, 0.33, 0.5, 1.0, 2.0)
FIGURE1_X_MIN = 1e-3
FIGURE1_X_MAX = 2.5
FIGURE1_POINTS = 500

STYLE = {
    "font.family": "serif",
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.linewidth": 0.8,
    "legend.fontsize": 8,
    "legend.frameon": False,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "figure.figsize": (6.4, 4.0),
    "svg.hashsalt": "besselprod",  # stable ids make SVG output reproducible
}


def column_name(nu: float) -> str:
    return f"q_nu_{nu:g}"


def figure1_x(x_min: float = FIGURE1_X_MIN, x_max: float = FIGURE1_X_MAX, n: int = FIGURE1_POINTS):
    """Log-spaced on [x_min, 1] and linear on (1, x_max]; x = 1 is always a node."""
    n_left = n // 2
    left = np.geomspace(x_min, 1.0, n_left)
    right = np.linspace(1.0, x_max, n - n_left + 1)[1:]
    xs = np.concatenate([left, right])
    xs[n_left - 1] = 1.0
    return [float(v) for v in xs]


def figure1_data(x_min: float = FIGURE1_X_MIN, orders: Sequence[float] = FIGURE1_ORDERS,
                 n: int = FIGURE1_POINTS):
    xs = figure1_x(x_min, FIGURE1_X_MAX, n)
    cols = {nu: [q_ratio(nu, x) for x in xs] for nu in orders}
    return xs, cols


def figure1_csv(xs, cols) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    orders = list(cols)
    w.writerow(["x"] + [column_name(nu) for nu in orders])
    for i, x in enumerate(xs):
        w.writerow([format(x, ".15g")] + [format(cols[nu][i], ".15g") for nu in orders])
    return buf.getvalue()


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_figure1(path: str, fmt: str, xs, cols) -> None:
    """Line chart of the q_nu curves; each curve carries gid ``q_nu_<nu>``."""
    plt = _pyplot()
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for nu, qs in cols.items():
            (line,) = ax.plot(xs, qs, label=rf"$\nu = {nu:g}$")
            line.set_gid(column_name(nu))
        if 0.0 in cols:
            lim = q_limit_at_zero(0.0)
            (pt,) = ax.plot([0.0], [lim], "o", color="C0", markersize=4, clip_on=False)
            pt.set_gid("limit_nu_0")
            ax.annotate(r"$\lim_{x\to 0} q_0(x) = 1$", (0.0, lim), xytext=(0.12, 1.02),
                        fontsize=8, arrowprops={"arrowstyle": "-", "lw": 0.6})
        ax.set_xlim(0.0, FIGURE1_X_MAX)
        ax.set_ylim(0.0, 1.1)
        ax.set_xlabel(r"$x$")
        ax.set_ylabel(r"$q_\nu(x) = I_\nu(x)K_\nu(x)/(1+|\ln x|)$")
        ax.legend(loc="upper right", ncol=2)
        fig.tight_layout()
        fig.savefig(path, format=fmt, metadata={"Date": None} if fmt == "svg" else None)
        plt.close(fig)


def render_margins(path: str, records, title: Optional[str] = None) -> None:
    """Scatter of sweep margins against x, one marker style per verdict."""
    plt = _pyplot()
    styles = {"holds": ("o", "C2"), "indeterminate": ("s", "C1"), "violated": ("x", "C3")}
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for verdict, (marker, color) in styles.items():
            pts = [(r.x, r.margin) for r in records
                   if r.verdict.value == verdict and math.isfinite(r.margin) and r.x > 0]
            if pts:
                x, m = zip(*pts)
                ax.scatter(x, np.abs(m), marker=marker, s=10, color=color, label=verdict)
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(r"$x$")
        ax.set_ylabel("|margin|")
        if title:
            ax.set_title(title)
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)

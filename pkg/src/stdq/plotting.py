"""PNG figures for CLI tables (matplotlib, headless Agg backend)."""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _num(v) -> float:
    if isinstance(v, dict):
        return float(v.get("re", math.nan))
    try:
        return float(v)
    except (TypeError, ValueError):
        return math.nan


def plot_table(rows: List[Dict], x: str, ys: Sequence[str], path: str, title: str = "",
               group: Optional[str] = None, logy: bool = False, marker: str = "o") -> str:
    """One line per y column, or per distinct ``group`` value when given."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if group is None:
        xs = [_num(r[x]) for r in rows]
        for y in ys:
            ax.plot(xs, [_num(r[y]) for r in rows], marker=marker, ms=3, label=y)
    else:
        keys = []
        for r in rows:
            if r[group] not in keys:
                keys.append(r[group])
        for k in keys:
            sub = [r for r in rows if r[group] == k]
            for y in ys:
                label = f"{group}={k}" if len(ys) == 1 else f"{y}, {group}={k}"
                ax.plot([_num(r[x]) for r in sub], [_num(r[y]) for r in sub], marker=marker, ms=3, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(x)
    ax.set_ylabel(ys[0] if len(ys) == 1 else "value")
    if title:
        ax.set_title(title)
    handles, _ = ax.get_legend_handles_labels()
    if 1 < len(handles) <= 16:
        ax.legend(fontsize=7)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_degeneracy(poly, roots: Sequence[float], path: str, title: str = "") -> str:
    """The level-difference polynomial on [-1, 1] with its roots marked."""
    xs = [-1 + 2 * i / 400 for i in range(401)]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(xs, [float(poly(x)) for x in xs], lw=1.2)
    ax.axhline(0, color="k", lw=0.6)
    ax.plot(list(roots), [0.0] * len(roots), "o", color="C3")
    ax.set_xlabel("x = cos(theta)")
    ax.set_ylabel("2(E_{n+r} - E_n)")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

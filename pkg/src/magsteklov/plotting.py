"""Matplotlib rendering of the figure tables to SVG files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .figures import Table  # noqa: E402

# fixed id salt and no date stamp keep repeated renders byte-identical
_RC = {"svg.hashsalt": "magsteklov", "svg.fonttype": "none"}
_META = {"Date": None}

FIG1_STYLE = {
    "sigma_1_0": ("tab:red", "-"),
    "sigma_2_0": ("tab:blue", "-"),
    "sigma_1_1": ("tab:green", "-"),
    "sigma_2_1": ("tab:green", "--"),
    "sigma_1_m1": ("tab:orange", "-"),
    "sigma_2_m1": ("tab:orange", "--"),
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata=_META)
    plt.close(fig)
    return path


def render_fig1(tables: dict[str, Table], path: Path, y_max: float = 25.0) -> Path:
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(1, len(tables), figsize=(4.0 * len(tables), 3.6), sharey=True)
        axes = np.atleast_1d(axes)
        for ax, (label, tab) in zip(axes, tables.items()):
            M = tab.rows[:, 0]
            for j, name in enumerate(tab.columns[1:], start=1):
                color, ls = FIG1_STYLE[name]
                ax.plot(M, tab.rows[:, j], color=color, ls=ls, lw=1.2, label=name)
            ax.set_ylim(0.0, y_max)
            ax.set_xlabel("M")
            ax.set_title(f"flux = {label}")
        axes[0].set_ylabel("normalized eigenvalue")
        axes[-1].legend(fontsize=7, loc="upper right")
        fig.tight_layout()
        return _save(fig, path)


def _grouped(tab: Table):
    keys = tab.rows[:, 0]
    for a in dict.fromkeys(keys.tolist()):
        sel = tab.rows[keys == a]
        yield a, sel[:, 1], sel[:, 2]


def render_fig2(tab: Table, path: Path) -> Path:
    """Profiles drawn as the meridian pair (+rho, -rho) against t."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.0, 4.0))
        cmap = plt.get_cmap("coolwarm")
        groups = list(_grouped(tab))
        for i, (a, t, rho) in enumerate(groups):
            color = cmap(i / max(len(groups) - 1, 1))
            ax.plot(rho, t, color=color, lw=1.2, label=f"alpha = {a:g}")
            ax.plot(-rho, t, color=color, lw=1.2)
        ax.set_xlim(-4.0, 4.0)
        ax.set_aspect("equal")
        ax.set_xlabel("rho")
        ax.set_ylabel("t")
        ax.legend(fontsize=7)
        fig.tight_layout()
        return _save(fig, path)


def render_fig3(tab: Table, path: Path) -> Path:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        theta = np.linspace(0.0, 2.0 * np.pi, 361)
        ax.plot(np.cos(theta), np.sin(theta), color="0.6", lw=0.8)
        for a, x, z in _grouped(tab):
            line, = ax.plot(x, z, lw=1.2, label=f"alpha = {a:g}")
            ax.plot(-x, z, lw=1.2, color=line.get_color())
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("z")
        ax.legend(fontsize=7, loc="lower right")
        fig.tight_layout()
        return _save(fig, path)

"""Matplotlib renderings of the fidelity curve and the earliest-time table.

Only needed for ``--plot``; matplotlib is imported lazily so the rest of the
package runs without it.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "pgst"
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path) -> Path:
    path = Path(path)
    # dropping timestamps keeps repeated runs byte-identical
    metadata = {".svg": {"Date": None}, ".pdf": {"CreationDate": None},
                ".png": {"Software": None}}.get(path.suffix.lower(), {})
    fig.savefig(path, bbox_inches="tight", metadata=metadata)
    return path


def plot_fidelity_curve(times: Sequence[float], values: Sequence[float], n: int, path,
                        threshold: float | None = None) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    ax.plot(times, values, lw=0.8, color="#1f4e9c")
    if threshold is not None:
        ax.axhline(threshold, color="0.4", lw=0.8, ls="--")
    ax.set_xlabel("t")
    ax.set_ylabel(r"$|U(t)_{1,n}|$")
    ax.set_title(f"P_{n}")
    ax.set_ylim(0, 1.02)
    out = _save(fig, path)
    plt.close(fig)
    return out


def plot_earliest_times(ns: Sequence[int], log_times: Sequence[float], path,
                        epsilon: float = 0.01) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.8, 3.4))
    ax.plot(ns, log_times, "o-", color="#1f4e9c")
    ax.set_xticks(list(ns))
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\log t^*$")
    ax.set_title(f"earliest fidelity > {1 - epsilon:g}")
    out = _save(fig, path)
    plt.close(fig)
    return out

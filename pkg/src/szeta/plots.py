"""Static SVG charts.  Output is byte-stable: fixed hash salt, no date metadata."""

from __future__ import annotations

import io
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "szeta"


def _save(fig, path: str | None) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    text = buf.getvalue()
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def staircase(levels: Sequence[tuple[float, int]], path: str | None = None, title: str = "counting function") -> str:
    """Cumulative count of classes with length <= t."""
    xs, ys, total = [0.0], [0], 0
    for length, mult in levels:
        total += mult
        xs.append(float(length))
        ys.append(total)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.step(xs, ys, where="post")
    ax.set_xlabel("t")
    ax.set_ylabel("#classes with length <= t")
    ax.set_title(title)
    return _save(fig, path)


def line_chart(xs, ys, xlabel: str, ylabel: str, path: str | None = None, title: str = "", reference=None) -> str:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(xs, ys, marker=".")
    if reference is not None:
        ax.axhline(reference, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    return _save(fig, path)

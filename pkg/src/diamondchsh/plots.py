"""Figure rendering for the CLI report paths.

Each subcommand can emit a matplotlib figure next to its delimited
output: a heatmap of a test function, the three Bessel curves, the
search leaderboard, or the four correlator terms of one evaluation.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .chsh import TSIRELSON_BOUND

__all__ = [
    "render_test_function",
    "render_bessel_table",
    "render_search_records",
    "render_eval_terms",
]


def render_test_function(t, x, values, fn, path) -> None:
    """Heatmap of one diamond bump over its support box."""
    fig, ax = plt.subplots(figsize=(5, 4))
    mesh = ax.pcolormesh(x, t, values, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="value")
    ax.set_xlabel("x")
    ax.set_ylabel("t")
    ax.set_title(
        f"{fn.side.value} diamond, r={fn.radius:g}, "
        f"sharpness={fn.sharpness:g}, amplitude={fn.amplitude:g}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bessel_table(rows, path) -> None:
    """J0, Y0, K0 over the tabulated grid."""
    xs = [row[0] for row in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for idx, label in ((1, "J0"), (2, "Y0"), (3, "K0")):
        ax.plot(xs, [row[idx] for row in rows], label=label)
    if xs and xs[0] > 0 and xs[-1] / xs[0] > 100:
        ax.set_xscale("log")
    ax.set_xlabel("x")
    ax.set_ylim(-2, 3)
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_search_records(records, path) -> None:
    """|C| of the ranked records against the classical/Tsirelson bounds."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ranks = np.arange(1, len(records) + 1)
    values = [abs(rec.correlator) for rec in records]
    errors = [rec.correlator_error for rec in records]
    ax.errorbar(ranks, values, yerr=errors, fmt="o", capsize=3)
    ax.axhline(2.0, color="k", ls="--", lw=1, label="classical bound")
    ax.axhline(TSIRELSON_BOUND, color="r", ls=":", lw=1, label="Tsirelson bound")
    ax.set_xlabel("rank")
    ax.set_ylabel("|C|")
    ax.set_xticks(ranks)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_eval_terms(terms, correlator, path) -> None:
    """The four exponential terms of one correlator evaluation."""
    fig, ax = plt.subplots(figsize=(5, 4))
    labels = ["E(f,g)", "E(f',g)", "E(f,g')", "-E(f',g')"]
    signed = [terms[0], terms[1], terms[2], -terms[3]]
    ax.bar(labels, signed, color=["C0", "C0", "C0", "C3"])
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_ylabel("term value")
    ax.set_title(f"C = {correlator:.4f}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

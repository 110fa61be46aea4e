"""Figure rendering for the CLI report path.

Each function takes the rows a CLI command emits (lists of per-column
values) and writes one png next to the delimited output.  Rendering is
opt-in via --plot and never alters the data files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _grouped(rows, key_index):
    groups: dict[float, list] = {}
    for row in rows:
        groups.setdefault(row[key_index], []).append(row)
    return groups


def witness_scan_figure(rows, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for eps, group in sorted(_grouped(rows, 1).items()):
        taus = [r[0] for r in group]
        ax.plot(taus, [r[4] for r in group], label=f"strength {eps:g}")
    ax.set_xlabel(r"time $\tau$")
    ax.set_ylabel("witness")
    ax.legend()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def strength_curve_figure(rows, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot([r[0] for r in rows], [r[1] for r in rows], label="amplitude factor")
    with_slope = [r for r in rows if r[2] is not None]
    ax_slope = ax.twinx()
    ax_slope.plot(
        [r[0] for r in with_slope],
        [r[2] for r in with_slope],
        linestyle="--",
        color="tab:red",
        label="derivative",
    )
    ax.set_xlabel(r"strength $\varepsilon$")
    ax.set_ylabel("amplitude factor")
    ax_slope.set_ylabel("derivative")
    fig.legend(loc="upper left", bbox_to_anchor=(0.12, 0.95))
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def eff_strength_figure(rows, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for gamma, group in sorted(_grouped(rows, 1).items()):
        taus = [r[0] for r in group]
        ax.plot(taus, [r[2] for r in group], label=f"rate {gamma:g}")
    ax.set_xlabel(r"time $\tau$")
    ax.set_ylabel("effective strength")
    ax.legend()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def monte_carlo_figure(rows, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for eps, group in sorted(_grouped(rows, 1).items()):
        taus = [r[0] for r in group]
        ax.errorbar(
            taus,
            [r[2] for r in group],
            yerr=[r[3] for r in group],
            fmt="o",
            markersize=3,
            label=f"sampled, strength {eps:g}",
        )
        ax.plot(taus, [r[4] for r in group], linewidth=1, color="gray")
    ax.set_xlabel(r"time $\tau$")
    ax.set_ylabel("witness")
    ax.legend()
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)

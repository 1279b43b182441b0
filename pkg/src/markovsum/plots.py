"""Figure rendering for the report paths.

Remainders reach 1e-455 and beyond, far outside machine-float range, so
the curves are drawn as log10 values on a linear axis rather than through
a log-scale transform of underflowed floats.  Callers pass log10 data
computed at working precision.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_remainder_profile(rows: list[tuple[int, float, float]], path: str) -> None:
    """Remainder and tail-model curves against the term count.

    rows: (n, log10 remainder, log10 modeled tail), ascending n.
    """
    ns = [r[0] for r in rows]
    rem = [r[1] for r in rows]
    tail = [r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, rem, "-", color="tab:blue", label="remainder")
    ax.plot(ns, tail, "--", color="tab:orange", label="tail model")
    ax.set_xlabel("terms summed")
    ax.set_ylabel("log10 of remainder")
    if ns and ns[-1] / max(ns[0], 1) > 100:
        ax.set_xscale("log")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_mcshane_convergence(rows: list[tuple[int, float]], path: str) -> None:
    """Distance of the truncated length series from 1/2 per box bound.

    rows: (box bound, log10 of (1/2 - partial sum)).
    """
    boxes = [r[0] for r in rows]
    gaps = [r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(boxes, gaps, "o-", color="tab:green")
    ax.set_xlabel("slope box bound")
    ax.set_ylabel("log10 of (1/2 - partial sum)")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

"""Figure rendering for CLI reports.

Figures are written next to the delimited output when the CLI is invoked
with ``--plot``; the data files stay the authoritative record and the
figures are a convenience view of them.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_ssa_figure(alphas, reports, path, lam: float) -> None:
    """Entropy-inequality gaps I1 (solid) and I2 (dotted) over alpha.

    The shaded band is I1 - max(0, Delta), the slack of the strengthened
    inequality; the inset shows Delta itself with its sign change.
    """
    alphas = np.asarray(list(alphas), dtype=float)
    i1 = np.array([r.I1 for r in reports])
    i2 = np.array([r.I2 for r in reports])
    delta = np.array([r.delta for r in reports])

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    ax.plot(alphas, i1, color="red", lw=1.6, label="$I_1$")
    ax.plot(alphas, i2, color="blue", lw=1.6, ls=":", label="$I_2$")
    ax.fill_between(alphas, 0.0, np.minimum(i1, i2), color="gray", alpha=0.25,
                    label=r"$I_1 - \tilde\Delta$")
    ax.set_xlabel(r"$\alpha$")
    ax.set_ylabel("bits")
    ax.set_title(rf"Subadditivity gaps, $\lambda = {lam:g}$")
    ax.legend(loc="lower left")

    inset = ax.inset_axes([0.58, 0.58, 0.38, 0.36])
    inset.plot(alphas, delta, color="black", lw=1.2)
    inset.axhline(0.0, color="gray", lw=0.6)
    inset.set_title(r"$\Delta$", fontsize=9)
    inset.tick_params(labelsize=7)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_conservation_figure(rows, path) -> None:
    """Per-sample identity residual magnitudes on a log scale."""
    samples = sorted({int(r["sample"]) for r in rows})
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    markers = {"r1": "o", "r2": "s", "r3": "^", "r4": "v", "r5": "d"}
    floor = 1e-18
    for key, marker in markers.items():
        by_sample = {}
        for r in rows:
            i = int(r["sample"])
            by_sample[i] = max(by_sample.get(i, 0.0), abs(float(r[key])))
        ax.semilogy(samples, [max(by_sample[i], floor) for i in samples],
                    marker=marker, ms=3, lw=0.5, label=key)
    ax.set_xlabel("sample")
    ax.set_ylabel("max |residual| over focuses (bits)")
    ax.set_title("Monogamy and conservation residuals")
    ax.legend(ncol=5, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

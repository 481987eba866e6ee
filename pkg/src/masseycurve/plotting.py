"""Render vanishing-ratio experiment results to an image file."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_ratio_plot(reports, path: str, title: str = "Cup-vanishing ratio") -> str:
    """One line per ell value, ratio against curve degree.  Returns the
    path written.  The image format follows the file extension."""
    by_ell: dict = {}
    for rep in reports:
        by_ell.setdefault(rep.ell, []).append(rep)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for ell in sorted(by_ell, key=lambda e: (e is None, e)):
        rows = sorted(by_ell[ell], key=lambda r: r.n)
        xs = [r.n for r in rows]
        ys = [float(r.ratio) for r in rows]
        label = f"ell = {ell}" if ell is not None else "direct caps"
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xlabel("curve degree n")
    ax.set_ylabel("vanishing ratio")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

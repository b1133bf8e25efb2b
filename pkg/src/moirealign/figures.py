"""Matplotlib renderings saved next to the delimited outputs."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .imaging import overlap_to_gray, pattern_to_gray

_DPI = 150


def save_alignment_figure(outcome, path) -> None:
    """Stack, query, overlap, and row-intensity panels for one alignment."""
    fig, axes = plt.subplots(
        2, 2, figsize=(10, 6), gridspec_kw={"width_ratios": [3, 1]}
    )
    n_rows = outcome.overlap.shape[0]
    extent = (0.5, outcome.overlap.shape[1] + 0.5, n_rows + 0.5, 0.5)

    axes[0, 0].imshow(
        pattern_to_gray(outcome.stack), cmap="gray", aspect="auto",
        interpolation="nearest", extent=extent, vmin=0, vmax=255,
    )
    axes[0, 0].set_title("reference shift stack")
    axes[0, 0].set_ylabel("shift row")

    axes[1, 0].imshow(
        overlap_to_gray(outcome.overlap), cmap="gray", aspect="auto",
        interpolation="nearest", extent=extent, vmin=0, vmax=255,
    )
    axes[1, 0].set_title("overlap")
    axes[1, 0].set_xlabel("slot")
    axes[1, 0].set_ylabel("shift row")

    sums = outcome.overlap.intensities.sum(axis=1)
    rows = np.arange(1, n_rows + 1)
    for ax in (axes[0, 1], axes[1, 1]):
        ax.barh(rows, sums, color="0.3")
        ax.set_ylim(n_rows + 0.5, 0.5)
        ax.set_xlabel("row intensity")
    axes[0, 1].set_title("projected profile")
    for offset in outcome.report.exact_match_offsets:
        axes[1, 1].axhline(offset, color="tab:red", lw=0.8)

    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_profile_figure(profile, threshold, candidates, path) -> None:
    """1D projection profile with the candidate threshold marked."""
    fig, ax = plt.subplots(figsize=(7, 4))
    rows = np.arange(1, len(profile.values) + 1)
    ax.bar(rows, profile.values, color="0.4")
    cut = threshold * profile.full_match_value
    ax.axhline(cut, color="tab:red", lw=1.0, label=f"threshold {threshold:g}")
    for r in candidates:
        ax.bar([r], [profile.values[r - 1]], color="tab:orange")
    ax.set_xlabel("shift row")
    ax.set_ylabel("row intensity")
    ax.set_title("cylindrical-lens projection")
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_snr_figure(summaries, expected_db, path) -> None:
    """Mean SNR per scheme with one-sigma bars and expectation lines."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [s.scheme.name for s in summaries]
    means = [s.mean_db for s in summaries]
    stds = [s.std_db for s in summaries]
    ax.bar(labels, means, yerr=stds, capsize=4, color="0.5")
    for level in sorted(set(expected_db.values())):
        ax.axhline(level, color="tab:red", lw=0.8, ls="--")
    ax.set_ylabel("SNR (dB)")
    ax.set_title("self-match SNR over random draws")
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_circular_figure(outcome, path) -> None:
    """Overlap raster beside the normalized per-ring energy."""
    fig, (ax_img, ax_energy) = plt.subplots(
        1, 2, figsize=(10, 4.5), gridspec_kw={"width_ratios": [1.2, 1]}
    )
    ax_img.imshow(outcome.overlap * 255, cmap="gray", vmin=0, vmax=255)
    ax_img.set_title("circular overlap")
    ax_img.set_xticks([])
    ax_img.set_yticks([])

    rings = np.arange(len(outcome.ring_energy))
    ax_energy.plot(rings, outcome.ring_energy, marker="o", ms=3, color="0.3")
    for ring in outcome.matched_rings:
        ax_energy.axvline(ring, color="tab:red", lw=0.8)
    ax_energy.set_xlabel("ring index")
    ax_energy.set_ylabel("normalized ring energy")
    ax_energy.set_ylim(0, 1.05)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)

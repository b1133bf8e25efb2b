"""Cylindrical-lens projection: 2D overlap collapsed to one value per row.

The lens is modelled as an exact row integrator, so the projected value
of a row equals its total lit-slot count.  A cheap 1D threshold pass
then nominates candidate rows, and segment detection only revisits
those rows (plus a small dilation) in the 2D image.
"""

from dataclasses import dataclass

import numpy as np

from .bars import (
    AlignmentReport,
    OverlapImage,
    attach_snr,
    build_query_pattern,
    build_shift_stack,
    detect_segments,
    infer_alignment,
    overlap,
)
from .coding import CodingScheme, DnaSequence
from .errors import NoCandidates, WindowTooLarge


@dataclass(frozen=True)
class ProjectionProfile:
    """Per-row intensity sums of an overlap image."""

    values: np.ndarray
    scheme: CodingScheme
    words_per_row: int

    @property
    def full_match_value(self) -> int:
        """Intensity of a row in which every word matches."""
        return self.words_per_row * self.scheme.signal_level

    def __len__(self) -> int:
        return len(self.values)


def project_rows(img: OverlapImage) -> ProjectionProfile:
    """Collapse an overlap image to its per-row sums."""
    return ProjectionProfile(
        img.intensities.sum(axis=1, dtype=np.int64),
        img.scheme,
        img.words_per_row,
    )


def detect_candidates(profile: ProjectionProfile, threshold: float) -> list[int]:
    """Rows whose projected value reaches ``threshold`` of a full match.

    Returned 1-based, brightest first (ties by row index).
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    cut = threshold * profile.full_match_value
    rows = [r + 1 for r in range(len(profile.values)) if profile.values[r] >= cut]
    rows.sort(key=lambda r: (-int(profile.values[r - 1]), r))
    return rows


def dilate_rows(rows: list[int], gap: int, n_rows: int) -> set[int]:
    """Expand candidate rows by ``gap`` in both directions."""
    allowed: set[int] = set()
    for r in rows:
        allowed.update(range(max(1, r - gap), min(n_rows, r + gap) + 1))
    return allowed


def restricted_report(
    img: OverlapImage,
    profile: ProjectionProfile,
    threshold: float,
    min_run: int = 3,
    candidate_gap: int = 4,
) -> AlignmentReport:
    """Segment inference limited to profile candidates and their vicinity."""
    candidates = detect_candidates(profile, threshold)
    if not candidates:
        raise NoCandidates(
            f"no row reaches {threshold:.2f} of the full-match value"
        )
    allowed = dilate_rows(candidates, candidate_gap, img.shape[0])
    segments = detect_segments(img, min_run, rows=allowed)
    report = infer_alignment(segments, min_run, img.scheme, img.words_per_row)
    if img.shape[0] >= 2:
        report = attach_snr(report, img)
    return report


def two_stage_align(
    reference: DnaSequence,
    query: DnaSequence,
    scheme: CodingScheme,
    threshold: float,
    min_run: int = 3,
    candidate_gap: int = 4,
) -> AlignmentReport:
    """Coarse 1D candidate detection followed by row-restricted 2D inference.

    Produces the same report as the full pipeline whenever the stage-1
    candidates cover every row holding a reported segment.
    """
    window = len(query)
    shifts = len(reference) - window + 1
    if shifts < 1:
        raise WindowTooLarge("query longer than reference")
    stack = build_shift_stack(reference, window, scheme, shifts)
    img = overlap(stack, build_query_pattern(query, scheme, shifts))
    profile = project_rows(img)
    return restricted_report(img, profile, threshold, min_run, candidate_gap)

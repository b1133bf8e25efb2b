"""Bar-pattern overlap alignment.

A reference sequence is rendered as a stack of rows, row r carrying the
window that starts at base r, so consecutive rows are shifted by one
whole code word.  The query pattern repeats the query row at every
shift.  Overlaying the two stacks lights a full-width row at an exact
match; insertions and deletions fragment the lit line into segments
whose row jumps give the event lengths.

Rows, words, and base positions are 1-based everywhere in this module's
public surface; grids are plain numpy arrays indexed from 0.
"""

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .coding import CodingScheme, DnaSequence, encode_sequence, slot_product_grid, _BASE_TABLE, _PAIR_TABLE
from .errors import DimensionMismatch, TooShort, WindowTooLarge

# Optimal chains are enumerated to compare their event lists; beyond this
# many tied chains the report is flagged ambiguous without full listing.
_MAX_TIED_CHAINS = 16


@dataclass(frozen=True)
class PatternImage:
    """Stack of slot rows; ``origin_shift`` is the shift encoded by row 1."""

    rows: np.ndarray
    scheme: CodingScheme
    origin_shift: int = 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.shape

    @property
    def words_per_row(self) -> int:
        return self.rows.shape[1] // self.scheme.word_length


@dataclass(frozen=True)
class OverlapImage:
    """Per-slot transmitted intensity of two overlaid patterns."""

    intensities: np.ndarray
    scheme: CodingScheme
    origin_shift: int = 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.intensities.shape

    @property
    def words_per_row(self) -> int:
        return self.intensities.shape[1] // self.scheme.word_length

    def word_intensities(self) -> np.ndarray:
        """Per-word lit-slot counts, shape (rows, words_per_row)."""
        n_rows = self.intensities.shape[0]
        return self.intensities.reshape(
            n_rows, self.words_per_row, self.scheme.word_length
        ).sum(axis=2)


@dataclass(frozen=True, order=True)
class BrightSegment:
    """Maximal run of fully matched words on one row."""

    row: int
    word_start: int
    word_end: int
    intensity: int

    @property
    def word_count(self) -> int:
        return self.word_end - self.word_start + 1


@dataclass(frozen=True, order=True)
class IndelEvent:
    query_position: int
    kind: str  # "insertion" or "deletion"
    length: int


@dataclass(frozen=True)
class AlignmentReport:
    """Outcome of chaining bright segments into a single alignment."""

    exact_match_offsets: tuple[int, ...] = ()
    segments: tuple[BrightSegment, ...] = ()
    events: tuple[IndelEvent, ...] = ()
    ambiguous: bool = False
    snr_db: float | None = None
    snr_row: int | None = None
    snr_row_kind: str | None = None  # "match" or "best"
    alternatives: tuple[tuple[IndelEvent, ...], ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class AlignOutcome:
    """Everything the bar pipeline produces for one reference/query pair."""

    stack: PatternImage
    query_pattern: PatternImage
    overlap: OverlapImage
    report: AlignmentReport


def build_shift_stack(
    reference: DnaSequence,
    window_bases: int,
    scheme: CodingScheme,
    shifts: int,
) -> PatternImage:
    """Render ``shifts`` windows of the reference, one per row.

    Row r encodes reference(r : r + window_bases - 1), so each row is
    the previous one advanced by a single word (4, 8, or 16 slots
    depending on the scheme).
    """
    n = len(reference)
    if window_bases < scheme.unit_bases:
        raise TooShort(f"window of {window_bases} bases cannot be coded with {scheme.name}")
    if shifts < 1 or window_bases > n or shifts > n - window_bases + 1:
        raise WindowTooLarge(
            f"{shifts} shifts of a {window_bases}-base window exceed a {n}-base reference"
        )
    codes = reference.codes()
    windows = np.lib.stride_tricks.sliding_window_view(codes, window_bases)[:shifts]
    if scheme.unit_bases == 1:
        rows = _BASE_TABLE[scheme][windows].reshape(shifts, -1)
    else:
        rows = _PAIR_TABLE[scheme][windows[:, :-1], windows[:, 1:]].reshape(shifts, -1)
    return PatternImage(np.ascontiguousarray(rows), scheme, origin_shift=1)


def build_query_pattern(query: DnaSequence, scheme: CodingScheme, rows: int) -> PatternImage:
    """Repeat the encoded query on every row.

    The physical tilt between the two patterns is simulated on the
    reference side (per-row window shifts), so the query side is
    shift-free.
    """
    if rows < 1:
        raise WindowTooLarge("a pattern needs at least one row")
    row = encode_sequence(query, scheme)
    return PatternImage(np.tile(row, (rows, 1)), scheme, origin_shift=0)


def overlap(stack: PatternImage, query: PatternImage) -> OverlapImage:
    """Per-slot product of two patterns (simulated optical overlay)."""
    if stack.rows.shape != query.rows.shape or stack.scheme != query.scheme:
        raise DimensionMismatch(
            f"cannot overlay {stack.rows.shape}/{stack.scheme.name} "
            f"with {query.rows.shape}/{query.scheme.name}"
        )
    return OverlapImage(
        slot_product_grid(stack.rows, query.rows),
        stack.scheme,
        origin_shift=max(stack.origin_shift, query.origin_shift),
    )


def row_intensity(img: OverlapImage) -> np.ndarray:
    """Total lit slots per row."""
    return img.intensities.sum(axis=1, dtype=np.int64)


def snr_db(img: OverlapImage, match_row: int) -> float:
    """Ratio of the match row's intensity to the mean of all other rows, in dB.

    Returns +inf when every other row is completely dark (the report
    serializes that as the "+inf" sentinel).
    """
    sums = row_intensity(img)
    if len(sums) < 2:
        raise ValueError("SNR needs at least two rows")
    if not 1 <= match_row <= len(sums):
        raise ValueError(f"row {match_row} outside 1..{len(sums)}")
    others = np.delete(sums, match_row - 1)
    noise = float(others.mean())
    signal = float(sums[match_row - 1])
    if noise == 0.0:
        return math.inf
    if signal == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal / noise)


def detect_segments(
    img: OverlapImage,
    min_run: int,
    rows: set[int] | None = None,
) -> list[BrightSegment]:
    """Maximal runs of fully matched words, at least ``min_run`` words long.

    ``rows`` restricts detection to a subset of 1-based row indices
    (used by the two-stage pipeline); None scans every row.
    """
    if min_run < 1:
        raise ValueError("min_run must be at least 1")
    level = img.scheme.signal_level
    full = img.word_intensities() == level
    segments = []
    for r in range(1, full.shape[0] + 1):
        if rows is not None and r not in rows:
            continue
        padded = np.concatenate(([False], full[r - 1], [False]))
        edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
        for start, end in zip(edges[::2], edges[1::2]):
            length = end - start
            if length >= min_run:
                segments.append(
                    BrightSegment(r, int(start) + 1, int(end), int(length) * level)
                )
    segments.sort(key=lambda s: (s.word_start, s.row))
    return segments


def _covered_start(seg: BrightSegment) -> int:
    return seg.word_start


def _covered_end(seg: BrightSegment, unit_bases: int) -> int:
    return seg.word_end + unit_bases - 1


def _junction(left, right, unit_bases, min_block):
    """Feasibility of chaining two segments, in covered-base coordinates.

    A row change between consecutive blocks is a clean break point: the
    query gap must hold exactly the inserted bases (insertion) or be
    empty (deletion), so junctions wider than the row jump allows are
    rejected rather than silently absorbing mismatched bases.  When the
    segments crowd each other the junction is realized by trimming,
    which costs coverage and may leave several equally good trim
    positions (a slide).  Returns (loss, slide) or None.
    """
    qs_l, qe_l = _covered_start(left), _covered_end(left, unit_bases)
    qs_r, qe_r = _covered_start(right), _covered_end(right, unit_bases)
    if not (qs_r > qs_l and qe_r > qe_l):
        return None
    d_row = left.row - right.row
    spacing = max(1, d_row + 1)  # reference adjacency: insertions consume query room
    gap = qs_r - qe_l
    if d_row != 0 and gap > spacing:
        return None
    if gap >= spacing:
        return 0, False
    b_lo = max(qs_l + min_block - 1, qs_r - spacing)
    b_hi = min(qe_l, qe_r - spacing - min_block + 1)
    if b_lo > b_hi:
        return None
    return spacing - gap, b_hi > b_lo


def _chain_events(chain, unit_bases, min_block):
    """Events implied by consecutive row changes along a chain."""
    events = []
    for left, right in itertools.pairwise(chain):
        d_row = left.row - right.row
        if d_row == 0:
            continue
        spacing = max(1, d_row + 1)
        gap = _covered_start(right) - _covered_end(left, unit_bases)
        if gap >= spacing:
            boundary = _covered_end(left, unit_bases)
        else:
            boundary = min(
                _covered_end(left, unit_bases),
                _covered_end(right, unit_bases) - spacing - min_block + 1,
            )
        kind = "insertion" if d_row > 0 else "deletion"
        events.append(IndelEvent(boundary + 1, kind, abs(d_row)))
    return tuple(events)


def infer_alignment(
    segments: list[BrightSegment],
    min_run: int,
    scheme: CodingScheme,
    words_per_row: int,
) -> AlignmentReport:
    """Chain bright segments into match offsets and indel events.

    A row whose segment spans the whole query is an exact match.
    Otherwise the maximum-coverage chain (monotone in query and
    reference order) is selected; a drop of the row index between
    consecutive chained segments reads as an insertion of that many
    bases, a rise as a deletion.  Ties between optimal chains and
    slidable junctions set the ambiguous flag instead of being broken
    silently.
    """
    full_span = sorted(
        (s for s in segments if s.word_start == 1 and s.word_end == words_per_row),
        key=lambda s: s.row,
    )
    if full_span:
        return AlignmentReport(
            exact_match_offsets=tuple(s.row for s in full_span),
            segments=tuple(full_span),
            events=(),
        )
    if not segments:
        return AlignmentReport()

    unit_bases = scheme.unit_bases
    min_block = min_run + unit_bases - 1
    segs = sorted(segments, key=lambda s: (s.word_start, s.word_end, s.row))
    n = len(segs)
    lengths = [_covered_end(s, unit_bases) - _covered_start(s) + 1 for s in segs]

    # DP over segments ordered by query start: maximize covered bases,
    # then prefer fewer segments; keep all optimal predecessors for tie
    # enumeration.
    score = [(lengths[i], -1) for i in range(n)]
    preds: list[list[int | None]] = [[None] for _ in range(n)]
    slides = [[False] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            link = _junction(segs[j], segs[i], unit_bases, min_block)
            if link is None:
                continue
            loss, slide = link
            cand = (score[j][0] + lengths[i] - loss, score[j][1] - 1)
            if cand > score[i]:
                score[i] = cand
                preds[i] = [j]
                slides[i] = [slide]
            elif cand == score[i]:
                preds[i].append(j)
                slides[i].append(slide)

    best = max(score)
    ends = [i for i in range(n) if score[i] == best]

    chains: list[tuple[tuple[BrightSegment, ...], bool]] = []

    def _walk(i: int, suffix: tuple[BrightSegment, ...], slid: bool):
        if len(chains) >= _MAX_TIED_CHAINS:
            return
        for pred, slide in zip(preds[i], slides[i]):
            if pred is None:
                chains.append(((segs[i],) + suffix, slid))
            else:
                _walk(pred, (segs[i],) + suffix, slid or slide)

    for i in ends:
        _walk(i, (), False)

    described = [
        (chain, _chain_events(chain, unit_bases, min_block), slid)
        for chain, slid in chains
    ]
    event_lists = {ev for _, ev, _ in described}
    overflow = len(chains) >= _MAX_TIED_CHAINS
    chain, events, slid = min(described, key=lambda entry: entry[0])
    alternatives = tuple(sorted(ev for ev in event_lists if ev != events))
    return AlignmentReport(
        exact_match_offsets=(),
        segments=chain,
        events=events,
        ambiguous=bool(alternatives) or slid or overflow,
        alternatives=alternatives,
    )


def attach_snr(report: AlignmentReport, img: OverlapImage) -> AlignmentReport:
    """Fill in the report's SNR against the match row or, failing one, the
    brightest row."""
    if img.shape[0] < 2:
        return report
    if report.exact_match_offsets:
        row = report.exact_match_offsets[0]
        kind = "match"
    else:
        sums = row_intensity(img)
        row = int(np.argmax(sums)) + 1
        kind = "best"
    return replace(report, snr_db=snr_db(img, row), snr_row=row, snr_row_kind=kind)


def align_sequences(
    reference: DnaSequence,
    query: DnaSequence,
    scheme: CodingScheme,
    min_run: int = 3,
) -> AlignOutcome:
    """Full bar pipeline: stack, overlay, segment detection, inference."""
    window = len(query)
    shifts = len(reference) - window + 1
    if shifts < 1:
        raise WindowTooLarge("query longer than reference")
    stack = build_shift_stack(reference, window, scheme, shifts)
    query_pattern = build_query_pattern(query, scheme, shifts)
    img = overlap(stack, query_pattern)
    segments = detect_segments(img, min_run)
    report = infer_alignment(segments, min_run, scheme, img.words_per_row)
    if img.shape[0] >= 2:
        report = attach_snr(report, img)
    return AlignOutcome(stack, query_pattern, img, report)

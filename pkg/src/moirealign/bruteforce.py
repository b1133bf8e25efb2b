"""Exhaustive ground truth for alignment reports.

This module never touches the optical simulation: matches are found by
direct string comparison, and segmented alignments by enumerating every
placement of up to a few insertion/deletion events.  Property tests and
the acceptance suite compare pipeline output against these answers.
"""

from dataclasses import dataclass

import numpy as np

from .bars import AlignmentReport, BrightSegment, IndelEvent
from .coding import DnaSequence, random_sequence
from .errors import InconsistentSpec, NoAlignment

INSERTION = "insertion"
DELETION = "deletion"


@dataclass(frozen=True)
class PlantedInstance:
    """A reference/query pair with known alignment truth."""

    reference: DnaSequence
    query: DnaSequence
    truth: AlignmentReport
    rng_seed: int


def brute_force_find(reference: DnaSequence, query: DnaSequence) -> list[int]:
    """All 1-based offsets where the query occurs verbatim in the reference."""
    ref, q = reference.bases, query.bases
    if len(q) > len(ref):
        return []
    return [o + 1 for o in range(len(ref) - len(q) + 1) if ref[o : o + len(q)] == q]


def _placement_report(o1: int, blocks, events) -> AlignmentReport:
    """Build a report from 0-based (q_start, r_start, length) blocks."""
    segments = tuple(
        BrightSegment(
            row=r - q + 1,
            word_start=q + 1,
            word_end=q + length,
            intensity=length,
        )
        for q, r, length in blocks
    )
    offsets = (o1 + 1,) if len(blocks) == 1 else ()
    return AlignmentReport(
        exact_match_offsets=offsets,
        segments=segments,
        events=tuple(events),
    )


def brute_force_segment_align(
    reference: DnaSequence,
    query: DnaSequence,
    max_events: int = 3,
    min_seg: int = 3,
    max_event_len: int = 8,
) -> AlignmentReport:
    """Best split of the query into contiguous reference-matching blocks.

    Every placement of at most ``max_events`` insertion/deletion events
    (lengths 1..max_event_len) is enumerated; each block must match the
    reference exactly and span at least ``min_seg`` bases.  The placement
    matching the most bases wins.  Ties are all reported: the returned
    report carries the first placement in deterministic order, the
    ambiguous flag, and the tied alternatives' event lists.
    """
    ref, q = reference.bases, query.bases
    n_ref, n_q = len(ref), len(q)
    best_matched = -1
    best: list[tuple[int, tuple, tuple]] = []

    def lce(qi: int, ri: int) -> int:
        k = 0
        while qi + k < n_q and ri + k < n_ref and q[qi + k] == ref[ri + k]:
            k += 1
        return k

    def record(matched, o1, blocks, events):
        nonlocal best_matched, best
        if matched > best_matched:
            best_matched = matched
            best = [(o1, tuple(blocks), tuple(events))]
        elif matched == best_matched:
            best.append((o1, tuple(blocks), tuple(events)))

    def dfs(qpos, rpos, o1, events_left, blocks, events, matched):
        ext = lce(qpos, rpos)
        remaining = n_q - qpos
        if ext >= remaining >= min_seg:
            record(
                matched + remaining,
                o1,
                blocks + [(qpos, rpos, remaining)],
                events,
            )
        if events_left == 0:
            return
        # a non-final block leaves room for at least one more min_seg block
        for length in range(min_seg, min(ext, remaining - min_seg) + 1):
            q_next = qpos + length
            r_next = rpos + length
            boundary = q_next + 1  # 1-based position just after the block
            for k in range(1, max_event_len + 1):
                if q_next + k + min_seg <= n_q:
                    dfs(
                        q_next + k,
                        r_next,
                        o1,
                        events_left - 1,
                        blocks + [(qpos, rpos, length)],
                        events + [IndelEvent(boundary, INSERTION, k)],
                        matched + length,
                    )
                if r_next + k + min_seg <= n_ref:
                    dfs(
                        q_next,
                        r_next + k,
                        o1,
                        events_left - 1,
                        blocks + [(qpos, rpos, length)],
                        events + [IndelEvent(boundary, DELETION, k)],
                        matched + length,
                    )

    for o1 in range(n_ref):
        dfs(0, o1, o1, max_events, [], [], 0)

    if not best:
        raise NoAlignment(
            f"no split into blocks of >= {min_seg} bases with <= {max_events} events"
        )
    best.sort(key=lambda item: (item[0], tuple((e.query_position, e.kind, e.length) for e in item[2])))
    o1, blocks, events = best[0]
    report = _placement_report(o1, blocks, events)
    others = tuple(
        sorted(
            {
                _placement_report(b_o1, b_blocks, b_events).events
                for b_o1, b_blocks, b_events in best[1:]
            }
        )
    )
    if len(best) > 1:
        report = AlignmentReport(
            exact_match_offsets=report.exact_match_offsets,
            segments=report.segments,
            events=report.events,
            ambiguous=True,
            alternatives=others,
        )
    return report


def plant_instance(
    rng_seed: int,
    ref_len: int,
    query_len: int,
    events: list[tuple[str, int]],
    min_block: int = 5,
) -> PlantedInstance:
    """Draw a random reference and carve a query with known indel events.

    The query is a window of the reference with the requested events
    applied between blocks of at least ``min_block`` matched bases;
    inserted content is drawn uniformly.  Deterministic for a given seed.
    """
    for kind, length in events:
        if kind not in (INSERTION, DELETION) or length < 1:
            raise InconsistentSpec(f"bad event ({kind}, {length})")
    rng = np.random.default_rng(rng_seed)
    ins_total = sum(k for kind, k in events if kind == INSERTION)
    del_total = sum(k for kind, k in events if kind == DELETION)
    window = query_len - ins_total + del_total
    n_blocks = len(events) + 1
    matched_total = query_len - ins_total
    if window < 1 or window > ref_len:
        raise InconsistentSpec(
            f"events need a {window}-base window in a {ref_len}-base reference"
        )
    if matched_total < n_blocks * min_block:
        raise InconsistentSpec(
            f"{matched_total} matched bases cannot form {n_blocks} blocks of >= {min_block}"
        )

    # Every block must sit on a visible shift row: deletions push later
    # blocks to higher rows, insertions to lower ones, and the stack only
    # holds rows 1 .. ref_len - query_len + 1.
    drifts = [0]
    for kind, k in events:
        drifts.append(drifts[-1] + (k if kind == DELETION else -k))
    shifts = ref_len - query_len + 1
    offset_lo = 1 - min(drifts)
    offset_hi = shifts - max(drifts)
    if offset_lo > offset_hi:
        raise InconsistentSpec(
            f"events drift outside the {shifts} visible shifts of the reference"
        )

    reference = random_sequence(rng, ref_len)
    offset = int(rng.integers(offset_lo, offset_hi + 1))

    extra = matched_total - n_blocks * min_block
    cuts = np.sort(rng.integers(0, extra + 1, size=n_blocks - 1)) if n_blocks > 1 else np.array([], dtype=int)
    parts = np.diff(np.concatenate(([0], cuts, [extra])))
    block_lengths = [min_block + int(p) for p in parts]

    ref_pos = offset  # 1-based cursor in the reference
    query_parts: list[str] = []
    blocks = []
    truth_events = []
    for b, length in enumerate(block_lengths):
        q_start = sum(len(p) for p in query_parts) + 1
        query_parts.append(reference.bases[ref_pos - 1 : ref_pos - 1 + length])
        blocks.append((q_start - 1, ref_pos - 1, length))
        ref_pos += length
        if b < len(events):
            kind, k = events[b]
            position = sum(len(p) for p in query_parts) + 1
            truth_events.append(IndelEvent(position, kind, k))
            if kind == INSERTION:
                query_parts.append(str(random_sequence(rng, k)))
            else:
                ref_pos += k
    if ref_pos - 1 > ref_len:
        raise InconsistentSpec("events overrun the reference")

    query = DnaSequence("".join(query_parts))
    assert len(query) == query_len
    truth = _placement_report(offset - 1, blocks, truth_events)
    return PlantedInstance(reference, query, truth, rng_seed)

import math

import numpy as np
import pytest

from moirealign import (
    BrightSegment,
    CodingScheme,
    DimensionMismatch,
    DnaSequence,
    IndelEvent,
    OverlapImage,
    PatternImage,
    WindowTooLarge,
    align_sequences,
    brute_force_find,
    build_query_pattern,
    build_shift_stack,
    detect_segments,
    encode_sequence,
    infer_alignment,
    overlap,
    random_sequence,
    row_intensity,
    snr_db,
)

# All maximal runs of >= 3 matched words for the indel fixture, sorted by
# (word_start, row); the true alignment uses rows 6, 4, 6.
S3_SEGMENTS = [
    (6, 1, 6),
    (2, 2, 5),
    (12, 2, 5),
    (4, 9, 15),
    (19, 10, 19),
    (6, 16, 20),
]


def test_stack_rows_are_shifted_windows(s1):
    stack = build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 21)
    assert stack.shape == (21, 80)
    assert stack.words_per_row == 20
    for r in (1, 2, 21):
        expected = encode_sequence(s1.window(r, 20), CodingScheme.BASE_PPM)
        assert (stack.rows[r - 1] == expected).all()


def test_stack_pair_coding_width(s1):
    stack = build_shift_stack(s1, 20, CodingScheme.PAIR_POLARIZED, 21)
    assert stack.shape == (21, 152)  # 19 pair words of 8 slots
    assert stack.words_per_row == 19


def test_stack_degenerate_single_row(s2):
    stack = build_shift_stack(s2, len(s2), CodingScheme.BASE_PPM, 1)
    assert stack.shape == (1, 80)
    assert (stack.rows[0] == encode_sequence(s2, CodingScheme.BASE_PPM)).all()


def test_stack_window_bounds(s1):
    with pytest.raises(WindowTooLarge):
        build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 22)
    with pytest.raises(WindowTooLarge):
        build_shift_stack(s1, 41, CodingScheme.BASE_PPM, 1)
    with pytest.raises(WindowTooLarge):
        build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 0)


def test_query_pattern_repeats_rows(s2):
    pattern = build_query_pattern(s2, CodingScheme.BASE_PPM, 21)
    assert pattern.shape == (21, 80)
    assert (pattern.rows == pattern.rows[0]).all()
    single = build_query_pattern(s2, CodingScheme.BASE_PPM, 1)
    assert single.shape == (1, 80)


def test_overlap_exact_match_row_is_fully_lit(s1, s2):
    out = align_sequences(s1, s2, CodingScheme.BASE_PPM)
    word_hits = out.overlap.word_intensities()
    assert (word_hits[5] == 1).all()  # row 6, every word matched
    assert out.overlap.intensities.max() <= 1


def test_overlap_with_all_dark_pattern_is_zero(s1, s2):
    stack = build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 21)
    dark = PatternImage(np.zeros_like(stack.rows), CodingScheme.BASE_PPM)
    assert overlap(stack, dark).intensities.sum() == 0


def test_overlap_is_symmetric(s1, s2):
    stack = build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 21)
    query = build_query_pattern(s2, CodingScheme.BASE_PPM, 21)
    assert (overlap(stack, query).intensities == overlap(query, stack).intensities).all()


def test_overlap_rejects_mismatched_grids(s1, s2):
    stack = build_shift_stack(s1, 20, CodingScheme.BASE_PPM, 21)
    with pytest.raises(DimensionMismatch):
        overlap(stack, build_query_pattern(s2, CodingScheme.BASE_PPM, 20))
    with pytest.raises(DimensionMismatch):
        overlap(stack, build_query_pattern(s2, CodingScheme.BASE_POLARIZED, 21))


def test_row_intensity_levels(s1, s2):
    out1 = align_sequences(s1, s2, CodingScheme.BASE_PPM)
    out2 = align_sequences(s1, s2, CodingScheme.BASE_POLARIZED)
    assert row_intensity(out1.overlap)[5] == 20
    assert row_intensity(out2.overlap)[5] == 40
    zero = OverlapImage(np.zeros((4, 16), dtype=np.uint8), CodingScheme.BASE_PPM)
    assert (row_intensity(zero) == 0).all()


def test_row_intensity_bound_and_doubling():
    for seed in range(25):
        rng = np.random.default_rng([101, seed])
        reference = random_sequence(rng, 48)
        query = reference.window(int(rng.integers(1, 12)), 36)
        out1 = align_sequences(reference, query, CodingScheme.BASE_PPM)
        out2 = align_sequences(reference, query, CodingScheme.BASE_POLARIZED)
        sums1 = row_intensity(out1.overlap)
        sums2 = row_intensity(out2.overlap)
        full1 = out1.overlap.words_per_row * 1
        assert (sums1 <= full1).all()
        for r in range(len(sums1)):
            full_row = (out1.overlap.word_intensities()[r] == 1).all()
            assert (sums1[r] == full1) == full_row
        assert (sums2 == 2 * sums1).all()


def test_snr_db_value_and_sentinels():
    intensities = np.zeros((3, 8), dtype=np.uint8)
    intensities[1] = 1
    img = OverlapImage(intensities, CodingScheme.BASE_PPM)
    assert snr_db(img, 2) == math.inf  # other rows fully dark
    intensities2 = intensities.copy()
    intensities2[0, 0] = 1
    img2 = OverlapImage(intensities2, CodingScheme.BASE_PPM)
    assert snr_db(img2, 2) == pytest.approx(10 * math.log10(8 / 0.5))
    assert snr_db(img2, 3) == -math.inf
    with pytest.raises(ValueError):
        snr_db(img2, 4)
    with pytest.raises(ValueError):
        snr_db(OverlapImage(intensities[:1], CodingScheme.BASE_PPM), 1)


def test_detect_segments_exact_match(s1, s2):
    out = align_sequences(s1, s2, CodingScheme.BASE_PPM)
    segments = detect_segments(out.overlap, 3)
    assert BrightSegment(6, 1, 20, 20) in segments


def test_detect_segments_indel_fixture(s1, s3):
    out = align_sequences(s1, s3, CodingScheme.BASE_PPM)
    segments = detect_segments(out.overlap, 3)
    assert [(s.row, s.word_start, s.word_end) for s in segments] == S3_SEGMENTS
    for seg in segments:
        assert seg.intensity == seg.word_count


def test_detect_segments_empty_overlap():
    img = OverlapImage(np.zeros((4, 16), dtype=np.uint8), CodingScheme.BASE_PPM)
    assert detect_segments(img, 3) == []


def test_detect_segments_row_restriction(s1, s3):
    out = align_sequences(s1, s3, CodingScheme.BASE_PPM)
    segments = detect_segments(out.overlap, 3, rows={4, 6})
    assert {s.row for s in segments} == {4, 6}


def test_infer_alignment_exact_match(s1, s2):
    report = align_sequences(s1, s2, CodingScheme.BASE_PPM).report
    assert report.exact_match_offsets == (6,)
    assert report.events == ()
    assert not report.ambiguous
    assert report.snr_row == 6
    assert report.snr_row_kind == "match"


def test_infer_alignment_indel_fixture(s1, s3):
    report = align_sequences(s1, s3, CodingScheme.BASE_PPM).report
    assert report.exact_match_offsets == ()
    assert report.events == (
        IndelEvent(7, "insertion", 2),
        IndelEvent(16, "deletion", 2),
    )
    assert [(s.row, s.word_start, s.word_end) for s in report.segments] == [
        (6, 1, 6),
        (4, 9, 15),
        (6, 16, 20),
    ]
    assert not report.ambiguous
    assert report.snr_row_kind == "best"


@pytest.mark.parametrize("scheme", list(CodingScheme))
def test_infer_alignment_indel_fixture_all_schemes(s1, s3, scheme):
    report = align_sequences(s1, s3, scheme).report
    assert [(e.query_position, e.kind, e.length) for e in report.events] == [
        (7, "insertion", 2),
        (16, "deletion", 2),
    ]


def test_infer_alignment_single_full_segment_is_trivial():
    segment = BrightSegment(4, 1, 10, 10)
    report = infer_alignment([segment], 3, CodingScheme.BASE_PPM, 10)
    assert report.exact_match_offsets == (4,)
    assert report.segments == (segment,)
    assert report.events == ()


def test_infer_alignment_no_segments():
    report = infer_alignment([], 3, CodingScheme.BASE_PPM, 10)
    assert report.exact_match_offsets == ()
    assert report.segments == ()
    assert report.events == ()


@pytest.mark.parametrize("scheme", list(CodingScheme))
def test_exact_match_soundness_random_windows(scheme):
    for seed in range(30):
        rng = np.random.default_rng([202, int(scheme), seed])
        reference = random_sequence(rng, int(rng.integers(30, 61)))
        m = int(rng.integers(8, 21))
        start = int(rng.integers(1, len(reference) - m + 2))
        query = reference.window(start, m)
        report = align_sequences(reference, query, scheme).report
        assert list(report.exact_match_offsets) == brute_force_find(reference, query)
        assert start in report.exact_match_offsets
        assert report.events == ()


def test_query_longer_than_reference(s1):
    with pytest.raises(WindowTooLarge):
        align_sequences(s1, DnaSequence("A" * 41), CodingScheme.BASE_PPM)

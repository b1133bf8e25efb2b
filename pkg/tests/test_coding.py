import numpy as np
import pytest
from hypothesis import given, strategies as st

from moirealign import (
    BASES,
    CodingScheme,
    DnaSequence,
    InvalidBase,
    NotAligned,
    SlotState,
    TooShort,
    WrongScheme,
    encode_pair,
    encode_sequence,
    encode_symbol,
    parse_sequence,
    processing_gain,
    random_sequence,
    slot_product,
    slot_product_grid,
    word_correlation,
)
from moirealign.coding import slots_to_text, text_to_slots

BASE_SCHEMES = (CodingScheme.BASE_PPM, CodingScheme.BASE_POLARIZED)
PAIR_SCHEMES = (CodingScheme.PAIR_POLARIZED, CodingScheme.PAIR_PPM)

# Golden copies of the published code tables.
GOLDEN_BASE = {
    CodingScheme.BASE_PPM: {"A": "1000", "G": "0100", "C": "0010", "T": "0001"},
    CodingScheme.BASE_POLARIZED: {"A": "H00H", "G": "V0V0", "C": "0V0V", "T": "0HH0"},
}
GOLDEN_PAIR_ORDER = [
    "AA", "GA", "CA", "TA", "AG", "GG", "CG", "TG",
    "AC", "GC", "CC", "TC", "AT", "GT", "CT", "TT",
]
GOLDEN_PAIR = {
    CodingScheme.PAIR_POLARIZED: [
        "H0000000", "0H000000", "00H00000", "000H0000",
        "0000H000", "00000H00", "000000H0", "0000000H",
        "V0000000", "0V000000", "00V00000", "000V0000",
        "0000V000", "00000V00", "000000V0", "0000000V",
    ],
    CodingScheme.PAIR_PPM: [
        "1000000000000000", "0100000000000000", "0010000000000000", "0001000000000000",
        "0000100000000000", "0000010000000000", "0000001000000000", "0000000100000000",
        "0000000010000000", "0000000001000000", "0000000000100000", "0000000000010000",
        "0000000000001000", "0000000000000100", "0000000000000010", "0000000000000001",
    ],
}

dna_text = st.text(alphabet="ACGT", min_size=1, max_size=60)


@pytest.mark.parametrize("scheme", BASE_SCHEMES)
def test_base_code_tables_verbatim(scheme):
    for base, word in GOLDEN_BASE[scheme].items():
        assert slots_to_text(encode_symbol(base, scheme)) == word


@pytest.mark.parametrize("scheme", PAIR_SCHEMES)
def test_pair_code_tables_verbatim(scheme):
    for label, word in zip(GOLDEN_PAIR_ORDER, GOLDEN_PAIR[scheme]):
        assert slots_to_text(encode_pair(label[0], label[1], scheme)) == word


def test_word_lengths_and_units():
    assert [s.word_length for s in CodingScheme] == [4, 4, 8, 16]
    assert [s.unit_bases for s in CodingScheme] == [1, 1, 2, 2]
    assert [s.signal_level for s in CodingScheme] == [1, 2, 1, 1]


def test_parse_sequence_identity():
    assert parse_sequence("ACGT").bases == "ACGT"


def test_parse_sequence_normalizes_case_and_whitespace():
    assert parse_sequence("acgt\n").bases == "ACGT"
    assert parse_sequence(" a C\ng T ").bases == "ACGT"


def test_parse_sequence_rejects_bad_base():
    with pytest.raises(InvalidBase) as err:
        parse_sequence("ACXT")
    assert err.value.position == 3
    assert err.value.character == "X"


def test_parse_sequence_rejects_empty():
    with pytest.raises(TooShort):
        parse_sequence("  \n ")


def test_encode_sequence_concatenates_base_words():
    row = encode_sequence(DnaSequence("AC"), CodingScheme.BASE_PPM)
    assert slots_to_text(row) == "10000010"


def test_encode_sequence_overlapped_pairs():
    row = encode_sequence(DnaSequence("ACG"), CodingScheme.PAIR_POLARIZED)
    expected = np.concatenate(
        [
            encode_pair("A", "C", CodingScheme.PAIR_POLARIZED),
            encode_pair("C", "G", CodingScheme.PAIR_POLARIZED),
        ]
    )
    assert (row == expected).all()


def test_encode_sequence_too_short_for_pairs():
    with pytest.raises(TooShort):
        encode_sequence(DnaSequence("A"), CodingScheme.PAIR_POLARIZED)


def test_encode_wrong_scheme():
    with pytest.raises(WrongScheme):
        encode_symbol("A", CodingScheme.PAIR_POLARIZED)
    with pytest.raises(WrongScheme):
        encode_pair("A", "C", CodingScheme.BASE_PPM)


def test_slot_product_table():
    states = list(SlotState)
    for a in states:
        for b in states:
            expected = int(a == b and a != SlotState.DARK)
            assert slot_product(a, b) == expected
            assert slot_product(b, a) == expected  # commutative
    for a in states:
        assert slot_product(a, a) == (0 if a == SlotState.DARK else 1)


def test_slot_product_grid_matches_scalar():
    rng = np.random.default_rng(3)
    a = rng.integers(0, 4, size=(5, 12)).astype(np.uint8)
    b = rng.integers(0, 4, size=(5, 12)).astype(np.uint8)
    grid = slot_product_grid(a, b)
    for i in range(5):
        for j in range(12):
            assert grid[i, j] == slot_product(int(a[i, j]), int(b[i, j]))


def test_word_correlation_examples():
    assert word_correlation("A", "A", CodingScheme.BASE_POLARIZED) == 2
    assert word_correlation("A", "G", CodingScheme.BASE_POLARIZED) == 0
    assert word_correlation("GA", "GA", CodingScheme.PAIR_POLARIZED) == 1


@pytest.mark.parametrize("scheme", list(CodingScheme))
def test_code_sets_are_orthogonal(scheme):
    if scheme.unit_bases == 1:
        units = list(BASES)
    else:
        units = [a + b for a in BASES for b in BASES]
    for x in units:
        for y in units:
            expected = scheme.signal_level if x == y else 0
            assert word_correlation(x, y, scheme) == expected


def test_processing_gain_values():
    assert processing_gain(48, CodingScheme.BASE_PPM) == 12
    assert processing_gain(48, CodingScheme.BASE_POLARIZED) == 12
    assert processing_gain(48, CodingScheme.PAIR_POLARIZED) == 6
    assert processing_gain(48, CodingScheme.PAIR_PPM) == 3


def test_processing_gain_requires_word_alignment():
    with pytest.raises(NotAligned):
        processing_gain(50, CodingScheme.BASE_PPM)
    with pytest.raises(NotAligned):
        processing_gain(0, CodingScheme.BASE_PPM)


def test_slots_text_round_trip():
    for text in ("1000", "H00H", "0V0V", "0000000V"):
        assert slots_to_text(text_to_slots(text)) == text


@given(dna_text)
def test_parse_round_trips_clean_text(text):
    assert parse_sequence(text).bases == text


@given(dna_text, st.sampled_from(["\n", " ", "\t"]))
def test_parse_ignores_interleaved_whitespace(text, ws):
    noisy = ws.join(text)
    assert parse_sequence(noisy).bases == text


@given(st.text(alphabet="ACGT", min_size=2, max_size=40),
       st.sampled_from(PAIR_SCHEMES))
def test_pair_words_share_their_middle_base(text, scheme):
    seq = DnaSequence(text)
    row = encode_sequence(seq, scheme)
    words = row.reshape(-1, scheme.word_length)
    assert len(words) == len(text) - 1
    for i in range(len(words)):
        expected = encode_pair(text[i], text[i + 1], scheme)
        assert (words[i] == expected).all()


def _pair_labels(text):
    return [text[i : i + 2] for i in range(len(text) - 1)]


def _changed_words(longer, shorter, position, k):
    """Pair words of `longer` that differ from `shorter` at corresponding
    positions, where `longer` contains k extra bases starting at `position`."""
    lw, sw = _pair_labels(longer), _pair_labels(shorter)
    n = 0
    for i in range(1, len(lw) + 1):
        if i <= position - 2:
            corr = sw[i - 1]
        elif i >= position + k:
            corr = sw[i - k - 1]
        else:
            corr = sw[i - 1] if i - 1 < len(sw) else None
        if corr is None or lw[i - 1] != corr:
            n += 1
    return n


def test_single_event_changes_k_plus_one_words_on_fixture():
    # S2 with "AG" inserted after base 6, then bases 16-17 removed again.
    s2 = "ACGTATCCGTACAGGTCGAA"
    inter = s2[:6] + "AG" + s2[6:]
    s3 = inter[:15] + inter[17:]
    assert _changed_words(inter, s2, 7, 2) == 3
    assert _changed_words(inter, s3, 16, 2) == 3


@given(st.data())
def test_single_event_changes_at_most_k_plus_one_words(data):
    text = data.draw(st.text(alphabet="ACGT", min_size=8, max_size=40))
    k = data.draw(st.integers(1, 4))
    kind = data.draw(st.sampled_from(["insertion", "deletion"]))
    if kind == "insertion":
        position = data.draw(st.integers(2, len(text)))
        inserted = data.draw(st.text(alphabet="ACGT", min_size=k, max_size=k))
        longer = text[: position - 1] + inserted + text[position - 1 :]
        shorter = text
    else:
        position = data.draw(st.integers(2, len(text) - k))
        longer = text
        shorter = text[: position - 1] + text[position - 1 + k :]
    assert _changed_words(longer, shorter, position, k) <= k + 1


def test_random_sequence_is_deterministic_per_seed():
    a = random_sequence(np.random.default_rng(11), 50)
    b = random_sequence(np.random.default_rng(11), 50)
    assert a == b
    assert set(a.bases) <= set("ACGT")

"""Slot coding of DNA sequences for optical overlap correlation.

A sequence is rendered as a row of narrow optical slots.  Each slot is
dark, bright, or linearly polarized (horizontal/vertical), and each base
(or overlapped base pair) occupies one fixed-length code word.  Two
overlaid rows transmit light only where co-aligned slots carry the same
non-dark state, so word-level correlation reduces to counting lit slots.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBase, NotAligned, TooShort, WrongScheme

BASES = "AGCT"  # column order of the published code tables

_BASE_CODE = {base: i for i, base in enumerate(BASES)}

_CODE_LOOKUP = np.full(256, 255, dtype=np.uint8)
for _b, _i in _BASE_CODE.items():
    _CODE_LOOKUP[ord(_b)] = _i


class SlotState(enum.IntEnum):
    """State of a single optical slot."""

    DARK = 0
    BRIGHT = 1
    H = 2  # horizontally polarized
    V = 3  # vertically polarized


class CodingScheme(enum.IntEnum):
    """The four slot-coding schemes.

    Schemes 1 and 2 code one base per word; schemes 3 and 4 code
    overlapped base pairs (word i covers bases i and i+1), which trades
    pixel budget for a higher signal-to-noise ratio and word-level
    indel localization.
    """

    BASE_PPM = 1        # 4 slots, one bright slot per base
    BASE_POLARIZED = 2  # 4 slots, two polarized slots per base
    PAIR_POLARIZED = 3  # 8 slots, one polarized slot per base pair
    PAIR_PPM = 4        # 16 slots, one bright slot per base pair

    @property
    def word_length(self) -> int:
        """Slots per code word."""
        return _WORD_LENGTH[self]

    @property
    def unit_bases(self) -> int:
        """Bases covered by one word: 1 for base coding, 2 for pair coding."""
        return 1 if self in (CodingScheme.BASE_PPM, CodingScheme.BASE_POLARIZED) else 2

    @property
    def signal_level(self) -> int:
        """Lit slots contributed by one fully matched word."""
        return 2 if self is CodingScheme.BASE_POLARIZED else 1

    @property
    def uses_polarization(self) -> bool:
        return self in (CodingScheme.BASE_POLARIZED, CodingScheme.PAIR_POLARIZED)

    @property
    def modulation(self) -> str:
        """Modulator capability the scheme needs."""
        if self in (CodingScheme.BASE_PPM, CodingScheme.PAIR_PPM):
            return "intensity-or-polarization"
        return "intensity-and-polarization"

    def words_for(self, n_bases: int) -> int:
        """Code words emitted for a sequence of ``n_bases`` bases."""
        return n_bases if self.unit_bases == 1 else n_bases - 1


_WORD_LENGTH = {
    CodingScheme.BASE_PPM: 4,
    CodingScheme.BASE_POLARIZED: 4,
    CodingScheme.PAIR_POLARIZED: 8,
    CodingScheme.PAIR_PPM: 16,
}

# Published code sets, verbatim.  '0' dark, '1' bright, 'H'/'V' polarized.
BASE_CODES = {
    CodingScheme.BASE_PPM: {
        "A": "1000",
        "G": "0100",
        "C": "0010",
        "T": "0001",
    },
    CodingScheme.BASE_POLARIZED: {
        "A": "H00H",
        "G": "V0V0",
        "C": "0V0V",
        "T": "0HH0",
    },
}

PAIR_CODES = {
    CodingScheme.PAIR_POLARIZED: {
        "AA": "H0000000",
        "GA": "0H000000",
        "CA": "00H00000",
        "TA": "000H0000",
        "AG": "0000H000",
        "GG": "00000H00",
        "CG": "000000H0",
        "TG": "0000000H",
        "AC": "V0000000",
        "GC": "0V000000",
        "CC": "00V00000",
        "TC": "000V0000",
        "AT": "0000V000",
        "GT": "00000V00",
        "CT": "000000V0",
        "TT": "0000000V",
    },
    CodingScheme.PAIR_PPM: {
        "AA": "1000000000000000",
        "GA": "0100000000000000",
        "CA": "0010000000000000",
        "TA": "0001000000000000",
        "AG": "0000100000000000",
        "GG": "0000010000000000",
        "CG": "0000001000000000",
        "TG": "0000000100000000",
        "AC": "0000000010000000",
        "GC": "0000000001000000",
        "CC": "0000000000100000",
        "TC": "0000000000010000",
        "AT": "0000000000001000",
        "GT": "0000000000000100",
        "CT": "0000000000000010",
        "TT": "0000000000000001",
    },
}

_STATE_FOR_CHAR = {
    "0": SlotState.DARK,
    "1": SlotState.BRIGHT,
    "H": SlotState.H,
    "V": SlotState.V,
}
_CHAR_FOR_STATE = {state: char for char, state in _STATE_FOR_CHAR.items()}


def text_to_slots(text: str) -> np.ndarray:
    """Convert a '0'/'1'/'H'/'V' string to a slot-state array."""
    return np.array([_STATE_FOR_CHAR[c] for c in text], dtype=np.uint8)


def slots_to_text(slots: np.ndarray) -> str:
    """Render a slot-state array as a '0'/'1'/'H'/'V' string."""
    return "".join(_CHAR_FOR_STATE[SlotState(int(s))] for s in np.asarray(slots).ravel())


def _base_table(scheme: CodingScheme) -> np.ndarray:
    return np.stack([text_to_slots(BASE_CODES[scheme][b]) for b in BASES])


def _pair_table(scheme: CodingScheme) -> np.ndarray:
    table = np.zeros((4, 4, scheme.word_length), dtype=np.uint8)
    for first in BASES:
        for second in BASES:
            word = PAIR_CODES[scheme][first + second]
            table[_BASE_CODE[first], _BASE_CODE[second]] = text_to_slots(word)
    return table


_BASE_TABLE = {s: _base_table(s) for s in BASE_CODES}
_PAIR_TABLE = {s: _pair_table(s) for s in PAIR_CODES}


@dataclass(frozen=True)
class DnaSequence:
    """A validated DNA string; positions are 1-based in all reports."""

    bases: str

    def __post_init__(self):
        if len(self.bases) < 1:
            raise TooShort("sequence must contain at least one base")
        for i, ch in enumerate(self.bases, start=1):
            if ch not in _BASE_CODE:
                raise InvalidBase(i, ch)

    def __len__(self) -> int:
        return len(self.bases)

    def __str__(self) -> str:
        return self.bases

    def window(self, start: int, length: int) -> "DnaSequence":
        """Subsequence of ``length`` bases starting at 1-based ``start``."""
        if start < 1 or start + length - 1 > len(self.bases):
            raise WindowTooLarge(
                f"window [{start}, {start + length - 1}] outside sequence of length {len(self.bases)}"
            )
        return DnaSequence(self.bases[start - 1 : start - 1 + length])

    def codes(self) -> np.ndarray:
        """Numeric base codes in table order (A=0, G=1, C=2, T=3)."""
        raw = np.frombuffer(self.bases.encode("ascii"), dtype=np.uint8)
        return _CODE_LOOKUP[raw]


def parse_sequence(text: str) -> DnaSequence:
    """Parse a DNA string, ignoring whitespace and accepting lower case.

    Raises InvalidBase with the 1-based position (counted over the
    retained, non-whitespace characters) of the first bad character.
    """
    kept = []
    for ch in text:
        if ch.isspace():
            continue
        upper = ch.upper()
        if upper not in _BASE_CODE:
            raise InvalidBase(len(kept) + 1, ch)
        kept.append(upper)
    if not kept:
        raise TooShort("no bases found in input")
    return DnaSequence("".join(kept))


def random_sequence(rng: np.random.Generator, length: int) -> DnaSequence:
    """Uniform IID random sequence of ``length`` bases."""
    codes = rng.integers(0, 4, size=length)
    alphabet = np.frombuffer(BASES.encode("ascii"), dtype=np.uint8)
    return DnaSequence(alphabet[codes].tobytes().decode("ascii"))


def encode_symbol(base: str, scheme: CodingScheme) -> np.ndarray:
    """Code word for a single base under a base-granular scheme."""
    if scheme.unit_bases != 1:
        raise WrongScheme(f"{scheme.name} codes base pairs, not single bases")
    if base not in _BASE_CODE:
        raise InvalidBase(1, base)
    return _BASE_TABLE[scheme][_BASE_CODE[base]].copy()


def encode_pair(first: str, second: str, scheme: CodingScheme) -> np.ndarray:
    """Code word for the overlapped pair labelled ``first + second``."""
    if scheme.unit_bases != 2:
        raise WrongScheme(f"{scheme.name} codes single bases, not pairs")
    for pos, base in enumerate((first, second), start=1):
        if base not in _BASE_CODE:
            raise InvalidBase(pos, base)
    return _PAIR_TABLE[scheme][_BASE_CODE[first], _BASE_CODE[second]].copy()


def encode_sequence(seq: DnaSequence, scheme: CodingScheme) -> np.ndarray:
    """Concatenated code words for a whole sequence.

    Base schemes emit one word per base.  Pair schemes emit n-1 words for
    n bases, word i covering bases i and i+1 so that consecutive words
    share a base.
    """
    codes = seq.codes()
    if scheme.unit_bases == 1:
        return _BASE_TABLE[scheme][codes].reshape(-1)
    if len(codes) < 2:
        raise TooShort("pair coding needs at least two bases")
    return _PAIR_TABLE[scheme][codes[:-1], codes[1:]].reshape(-1)


def slot_product(a: int, b: int) -> int:
    """Light transmitted by two overlaid slots: 1 iff equal and non-dark."""
    return int(a == b and a != SlotState.DARK)


def slot_product_grid(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise slot_product over two equal-shape slot grids."""
    return ((a == b) & (a != SlotState.DARK)).astype(np.uint8)


def word_correlation(x: str, y: str, scheme: CodingScheme) -> int:
    """Lit-slot count when the code words for units ``x`` and ``y`` overlap.

    Equals the scheme's signal level when x == y and 0 otherwise: all
    four code sets are orthogonal.
    """
    if scheme.unit_bases == 1:
        wx, wy = encode_symbol(x, scheme), encode_symbol(y, scheme)
    else:
        wx, wy = encode_pair(x[0], x[1], scheme), encode_pair(y[0], y[1], scheme)
    return int(slot_product_grid(wx, wy).sum())


def processing_gain(pixels_per_row: int, scheme: CodingScheme) -> int:
    """Number of bases one row of ``pixels_per_row`` pixels can compare."""
    if pixels_per_row <= 0 or pixels_per_row % scheme.word_length != 0:
        raise NotAligned(
            f"{pixels_per_row} pixels is not a whole number of {scheme.word_length}-slot words"
        )
    return pixels_per_row // scheme.word_length

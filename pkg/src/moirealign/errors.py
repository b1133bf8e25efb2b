"""Exception types shared across the package."""


class MoireAlignError(Exception):
    """Base class for all moirealign errors."""


class InvalidBase(MoireAlignError):
    """A character outside the A/C/G/T alphabet was encountered."""

    def __init__(self, position, character, record=None):
        self.position = position
        self.character = character
        self.record = record
        where = f"record {record!r}, " if record is not None else ""
        super().__init__(f"{where}position {position}: invalid base {character!r}")


class WrongScheme(MoireAlignError):
    """Operation called with a coding scheme it does not support."""


class TooShort(MoireAlignError):
    """Sequence shorter than the coding scheme requires."""


class NotAligned(MoireAlignError):
    """Pixel count is not a whole number of code words."""


class WindowTooLarge(MoireAlignError):
    """Requested window/shift range does not fit in the reference."""


class DimensionMismatch(MoireAlignError):
    """Two patterns cannot be overlaid because their grids differ."""


class TooManySlots(MoireAlignError):
    """Encoded row does not fit in the available angular slots."""


class TooFewRings(MoireAlignError):
    """Circular geometry has fewer rings than shifts to encode."""


class NoAlignment(MoireAlignError):
    """Exhaustive search found no placement satisfying the constraints."""


class NoCandidates(MoireAlignError):
    """Projection profile never crossed the detection threshold."""


class InconsistentSpec(MoireAlignError):
    """Planted-instance parameters are mutually inconsistent."""


class MalformedFasta(MoireAlignError):
    """FASTA input violates the record structure."""

    def __init__(self, line, message="malformed FASTA"):
        self.line = line
        super().__init__(f"line {line}: {message}")

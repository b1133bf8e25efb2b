"""Moire-pattern optical correlation simulator for DNA string alignment."""

from .bars import (
    AlignmentReport,
    AlignOutcome,
    BrightSegment,
    IndelEvent,
    OverlapImage,
    PatternImage,
    align_sequences,
    attach_snr,
    build_query_pattern,
    build_shift_stack,
    detect_segments,
    infer_alignment,
    overlap,
    row_intensity,
    snr_db,
)
from .bruteforce import (
    PlantedInstance,
    brute_force_find,
    brute_force_segment_align,
    plant_instance,
)
from .circular import (
    CircularGeometry,
    CircularOutcome,
    PolarPattern,
    circular_align,
    compute_radii,
    detect_ring,
    overlap_circular,
    render_curved_pattern,
    render_curved_stack,
    render_sector_pattern,
    ring_energy,
    ring_ideal_energy,
)
from .coding import (
    BASES,
    CodingScheme,
    DnaSequence,
    SlotState,
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
from .errors import (
    DimensionMismatch,
    InconsistentSpec,
    InvalidBase,
    MalformedFasta,
    MoireAlignError,
    NoAlignment,
    NoCandidates,
    NotAligned,
    TooFewRings,
    TooManySlots,
    TooShort,
    WindowTooLarge,
    WrongScheme,
)
from .experiments import SnrSummary, run_snr_experiment, snr_samples, snr_trial
from .projection import (
    ProjectionProfile,
    detect_candidates,
    project_rows,
    two_stage_align,
)
from .seqio import read_fasta

__version__ = "0.1.0"

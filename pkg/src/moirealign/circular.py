"""Circular moire patterns: equal-area rings, sector rasters, ring detection.

Ring widths shrink outward so that every (ring, angular slot) cell keeps
the same area: r_i * dtheta * dr_i is constant.  A query is drawn as
straight radial wedges spanning all rings; the reference shifts live one
per ring, so an exact match lights a complete ring.  Ring i corresponds
to shift i + 1 of the bar-pattern stack.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bars import PatternImage, build_shift_stack
from .coding import CodingScheme, DnaSequence, SlotState, encode_sequence, slot_product_grid
from .errors import DimensionMismatch, TooFewRings, TooManySlots, WindowTooLarge

DEFAULT_RASTER = 1024
DEFAULT_R0 = 64.0  # pixels at the default raster size
DEFAULT_DR0 = 16.0


def compute_radii(r0: float, dr0: float, n: int) -> list[tuple[float, float]]:
    """Inner radius and width of ``n`` equal-area rings.

    Follows the recursion dr_i = r_{i-1} dr_{i-1} / (r_{i-1} + dr_{i-1}),
    r_i = r_{i-1} + dr_{i-1}; the product r_i * dr_i is invariant.
    """
    if r0 <= 0 or dr0 <= 0 or n < 1:
        raise ValueError("r0, dr0 must be positive and n >= 1")
    radii = [(float(r0), float(dr0))]
    for _ in range(n - 1):
        r_prev, dr_prev = radii[-1]
        dr = r_prev * dr_prev / (r_prev + dr_prev)
        radii.append((r_prev + dr_prev, dr))
    return radii


@dataclass(frozen=True)
class CircularGeometry:
    """Ring radii plus the angular slot width shared by all rings."""

    r0: float
    dr0: float
    delta_theta: float
    ring_count: int
    radii: tuple[tuple[float, float], ...]

    @classmethod
    def build(cls, r0: float, dr0: float, ring_count: int, delta_theta: float) -> "CircularGeometry":
        if not 0 < delta_theta <= 2 * math.pi:
            raise ValueError("delta_theta must be in (0, 2*pi]")
        radii = tuple(compute_radii(r0, dr0, ring_count))
        return cls(r0, dr0, delta_theta, ring_count, radii)

    @property
    def r_max(self) -> float:
        r_last, dr_last = self.radii[-1]
        return r_last + dr_last

    @property
    def slots_per_turn(self) -> int:
        return int(2 * math.pi / self.delta_theta + 1e-9)

    def ring_bounds(self) -> np.ndarray:
        """Radial bin edges, length ring_count + 1."""
        return np.array([r for r, _ in self.radii] + [self.r_max])


@dataclass(frozen=True)
class PolarPattern:
    """Slot states rasterized on a square pixel grid around ``center``."""

    raster: np.ndarray
    geometry: CircularGeometry
    center: tuple[float, float]
    kind: str  # "sector" or "curved"
    scheme: CodingScheme


def _polar_fields(size: int, center: tuple[float, float], theta_offset: float):
    ys, xs = np.indices((size, size), dtype=np.float64)
    x = xs + 0.5 - center[0]
    y = ys + 0.5 - center[1]
    rho = np.hypot(x, y)
    theta = np.mod(np.arctan2(y, x) - theta_offset, 2 * math.pi)
    return rho, theta


def _ring_index(rho: np.ndarray, geom: CircularGeometry) -> np.ndarray:
    return np.searchsorted(geom.ring_bounds(), rho, side="right") - 1


def _check_capacity(n_slots: int, geom: CircularGeometry):
    if n_slots > geom.slots_per_turn:
        raise TooManySlots(
            f"{n_slots} slots exceed the {geom.slots_per_turn} angular slots per turn"
        )


def render_sector_pattern(
    seq: DnaSequence,
    geom: CircularGeometry,
    scheme: CodingScheme,
    size: int = DEFAULT_RASTER,
    center: tuple[float, float] | None = None,
    theta_offset: float = 0.0,
) -> PolarPattern:
    """Encode a sequence as straight radial wedges spanning every ring."""
    slots = encode_sequence(seq, scheme)
    _check_capacity(len(slots), geom)
    center = center or (size / 2.0, size / 2.0)
    rho, theta = _polar_fields(size, center, theta_offset)
    slot_idx = (theta / geom.delta_theta).astype(np.int64)
    ring = _ring_index(rho, geom)
    valid = (ring >= 0) & (ring < geom.ring_count) & (slot_idx < len(slots))
    raster = np.zeros((size, size), dtype=np.uint8)
    raster[valid] = slots[slot_idx[valid]]
    return PolarPattern(raster, geom, center, "sector", scheme)


def _render_ring_rows(
    rows: np.ndarray,
    geom: CircularGeometry,
    scheme: CodingScheme,
    size: int,
    center: tuple[float, float] | None,
    theta_offset: float,
) -> PolarPattern:
    n_rings, n_slots = rows.shape
    _check_capacity(n_slots, geom)
    if n_rings > geom.ring_count:
        raise TooFewRings(f"{n_rings} rows need {n_rings} rings, geometry has {geom.ring_count}")
    center = center or (size / 2.0, size / 2.0)
    rho, theta = _polar_fields(size, center, theta_offset)
    slot_idx = (theta / geom.delta_theta).astype(np.int64)
    ring = _ring_index(rho, geom)
    valid = (ring >= 0) & (ring < n_rings) & (slot_idx < n_slots)
    raster = np.zeros((size, size), dtype=np.uint8)
    raster[valid] = rows[ring[valid], slot_idx[valid]]
    return PolarPattern(raster, geom, center, "curved", scheme)


def render_curved_pattern(
    seq: DnaSequence,
    geom: CircularGeometry,
    scheme: CodingScheme,
    size: int = DEFAULT_RASTER,
    center: tuple[float, float] | None = None,
    theta_offset: float = 0.0,
) -> PolarPattern:
    """Ring i carries the sequence's word stream advanced by i words.

    The polar counterpart of the bar stack's per-row shifts; cell areas
    are equal across rings by construction of the geometry.
    """
    slots = encode_sequence(seq, scheme)
    word_len = scheme.word_length
    rows = np.stack(
        [np.roll(slots, -i * word_len) for i in range(geom.ring_count)]
    )
    return _render_ring_rows(rows, geom, scheme, size, center, theta_offset)


def render_curved_stack(
    stack: PatternImage,
    geom: CircularGeometry,
    size: int = DEFAULT_RASTER,
    center: tuple[float, float] | None = None,
    theta_offset: float = 0.0,
) -> PolarPattern:
    """Place each row of a bar shift stack on its own ring (row r -> ring r-1)."""
    return _render_ring_rows(
        stack.rows, geom, stack.scheme, size, center, theta_offset
    )


def overlap_circular(a: PolarPattern, b: PolarPattern) -> np.ndarray:
    """Per-pixel slot product of two rasters sharing geometry and center."""
    if a.raster.shape != b.raster.shape or a.center != b.center:
        raise DimensionMismatch("polar patterns differ in raster size or center")
    return slot_product_grid(a.raster, b.raster)


def ring_energy(
    raster: np.ndarray,
    geom: CircularGeometry,
    center: tuple[float, float],
) -> np.ndarray:
    """Total intensity inside each ring of a raster."""
    rho, _ = _polar_fields(raster.shape[0], center, 0.0)
    ring = _ring_index(rho, geom)
    valid = (ring >= 0) & (ring < geom.ring_count)
    return np.bincount(
        ring[valid].ravel(),
        weights=raster[valid].ravel().astype(np.float64),
        minlength=geom.ring_count,
    )


def ring_ideal_energy(pattern: PolarPattern) -> np.ndarray:
    """Per-ring lit-pixel count of a pattern if every slot matched."""
    return ring_energy(
        (pattern.raster != SlotState.DARK).astype(np.uint8),
        pattern.geometry,
        pattern.center,
    )


def detect_ring(
    raster: np.ndarray,
    geom: CircularGeometry,
    center: tuple[float, float],
    threshold: float,
    ideal: np.ndarray,
) -> list[int]:
    """0-based indices of rings whose energy reaches ``threshold`` of ideal."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    energy = ring_energy(raster, geom, center)
    with np.errstate(divide="ignore", invalid="ignore"):
        normalized = np.where(ideal > 0, energy / np.maximum(ideal, 1e-300), 0.0)
    return [i for i in range(geom.ring_count) if normalized[i] >= threshold]


@dataclass(frozen=True)
class CircularOutcome:
    """Rasters and detections of the circular pipeline."""

    geometry: CircularGeometry
    sector: PolarPattern
    curved: PolarPattern
    overlap: np.ndarray
    ring_energy: np.ndarray  # normalized by the ideal per-ring energy
    matched_rings: tuple[int, ...]
    exact_match_offsets: tuple[int, ...]


def circular_align(
    reference: DnaSequence,
    query: DnaSequence,
    scheme: CodingScheme,
    size: int = DEFAULT_RASTER,
    r0: float | None = None,
    dr0: float | None = None,
    threshold: float = 0.9,
    theta_offset: float = 0.0,
) -> CircularOutcome:
    """Circular counterpart of the bar pipeline.

    The query becomes the sector pattern, the reference's shift stack the
    curved pattern, and a matched ring index i reports shift i + 1.
    """
    window = len(query)
    shifts = len(reference) - window + 1
    if shifts < 1:
        raise WindowTooLarge("query longer than reference")
    stack = build_shift_stack(reference, window, scheme, shifts)

    scale = size / DEFAULT_RASTER
    r0 = DEFAULT_R0 * scale if r0 is None else r0
    dr0 = DEFAULT_DR0 * scale if dr0 is None else dr0
    n_slots = stack.rows.shape[1]
    geom = CircularGeometry.build(r0, dr0, shifts, 2 * math.pi / n_slots)
    if geom.r_max > size / 2.0:
        raise TooFewRings(
            f"{shifts} rings reach radius {geom.r_max:.1f}, beyond the {size}px raster"
        )

    sector = render_sector_pattern(query, geom, scheme, size, theta_offset=theta_offset)
    curved = render_curved_stack(stack, geom, size, theta_offset=theta_offset)
    lit = overlap_circular(curved, sector)
    ideal = ring_ideal_energy(sector)
    energy = ring_energy(lit, geom, sector.center)
    with np.errstate(divide="ignore", invalid="ignore"):
        normalized = np.where(ideal > 0, energy / np.maximum(ideal, 1e-300), 0.0)
    rings = tuple(i for i in range(shifts) if normalized[i] >= threshold)
    return CircularOutcome(
        geometry=geom,
        sector=sector,
        curved=curved,
        overlap=lit,
        ring_energy=normalized,
        matched_rings=rings,
        exact_match_offsets=tuple(i + 1 for i in rings),
    )

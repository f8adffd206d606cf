"""Variable effective length: constraint masks, backbone shapes, conformity.

A tendon routed along the finger can lock any subset of folds straight;
the remaining folds bend with the shared per-connector angle phi of the
single-pressure equilibrium.  The bent finger is reconstructed as a planar
chain of n segments of equal arc length (the fold pitch): an active fold
contributes a circular arc of angle phi, a constrained fold a straight
segment.  Constrained folds are treated as perfectly rigid.

Conformity against a target contour is scored after rigidly placing the
backbone base at the contour's first point, aligned with its initial
tangent (a gripper mounted at the object edge): the backbone is resampled
at uniform arc-length stations and each station's distance to the contour
polyline is measured.  ``contact_ratio`` is the fraction of stations within
``epsilon``; ``rms_distance`` the root-mean-square station distance.

Mask optimization enumerates all 2^n masks (n capped at 24) and returns the
deterministic maximizer: highest contact ratio, then lowest RMS distance,
then fewest constrained folds, then the lexicographically smallest mask
string (proximal fold first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bending import ActuatorConfig, BendingState
from .errors import InputError

#: Exhaustive search guard: 2^24 masks is the most the optimizer will walk.
MAX_OPTIMIZER_FOLDS = 24

#: Default resampling density for conformity scoring.
DEFAULT_STATIONS = 200

#: Heading increments below this are treated as straight segments.
_STRAIGHT_EPS = 1e-15


@dataclass(frozen=True)
class SegmentMask:
    """Per-fold constraint pattern, proximal to distal.

    True = free to bend, False = tendon-constrained.  String form is '1'
    for free and '0' for constrained, proximal fold first.
    """

    active: tuple[bool, ...]

    def __post_init__(self):
        if len(self.active) == 0:
            raise InputError("mask must cover at least one fold")

    @classmethod
    def from_string(cls, bits: str) -> "SegmentMask":
        if not bits or any(c not in "01" for c in bits):
            raise InputError(
                f"mask must be a non-empty string of '0'/'1', got {bits!r}"
            )
        return cls(active=tuple(c == "1" for c in bits))

    @classmethod
    def all_active(cls, n: int) -> "SegmentMask":
        return cls(active=(True,) * n)

    @classmethod
    def all_constrained(cls, n: int) -> "SegmentMask":
        return cls(active=(False,) * n)

    def to_string(self) -> str:
        return "".join("1" if a else "0" for a in self.active)

    @property
    def n_active(self) -> int:
        return sum(self.active)

    def __len__(self) -> int:
        return len(self.active)


@dataclass(frozen=True)
class BackboneShape:
    """Planar finger curve: n+1 vertices of (x mm, y mm, heading rad).

    The base vertex sits at the origin with heading 0; consecutive vertices
    are one ``segment_pitch`` of arc length apart, and each heading
    increment is either 0 (constrained fold) or the common bend angle.
    """

    vertices: tuple[tuple[float, float, float], ...]
    segment_pitch: float

    @property
    def n_folds(self) -> int:
        return len(self.vertices) - 1

    @property
    def total_length(self) -> float:
        return self.n_folds * self.segment_pitch

    def heading_increments(self) -> tuple[float, ...]:
        return tuple(
            self.vertices[i + 1][2] - self.vertices[i][2]
            for i in range(self.n_folds)
        )


@dataclass(frozen=True)
class ContourProfile:
    """Ordered planar target contour, mm."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise InputError(f"contour needs at least 2 points, got {len(self.points)}")
        total = 0.0
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            seg = math.hypot(x1 - x0, y1 - y0)
            if seg == 0.0:
                raise InputError("contour has consecutive duplicate points")
            total += seg
        if total <= 0.0:
            raise InputError("contour arc length must be positive")


@dataclass(frozen=True)
class ConformityScore:
    contact_ratio: float    # fraction of stations within epsilon, in [0, 1]
    rms_distance: float     # mm


def _advance(x: float, y: float, heading: float, delta: float, pitch: float):
    """Advance one segment of arc length ``pitch`` turning by ``delta``."""
    if abs(delta) < _STRAIGHT_EPS:
        return x + pitch * math.cos(heading), y + pitch * math.sin(heading), heading
    radius = pitch / delta
    chord = 2.0 * radius * math.sin(delta / 2.0)
    direction = heading + delta / 2.0
    return (
        x + chord * math.cos(direction),
        y + chord * math.sin(direction),
        heading + delta,
    )


def backbone_shape(
    config: ActuatorConfig,
    state: BendingState,
    mask: SegmentMask,
    pitch: float,
) -> BackboneShape:
    """Chain the folds into the planar backbone curve.

    Every fold occupies ``pitch`` mm of arc length; active folds bend by
    the equilibrium per-connector angle, constrained folds stay straight.
    """
    if len(mask) != config.n_folds:
        raise InputError(
            f"mask length {len(mask)} does not match n_folds={config.n_folds}"
        )
    if not (math.isfinite(pitch) and pitch > 0.0):
        raise InputError(f"pitch must be > 0 mm, got {pitch!r}")

    x, y, heading = 0.0, 0.0, 0.0
    vertices = [(x, y, heading)]
    for free in mask.active:
        delta = state.phi if free else 0.0
        x, y, heading = _advance(x, y, heading, delta, pitch)
        vertices.append((x, y, heading))
    return BackboneShape(vertices=tuple(vertices), segment_pitch=pitch)


def resample_backbone(shape: BackboneShape, n_stations: int = DEFAULT_STATIONS) -> np.ndarray:
    """Sample the backbone curve at uniform arc-length stations.

    Returns an (n_stations, 2) array from base (s = 0) to tip (s = L),
    following the exact arc geometry inside each fold.
    """
    if n_stations < 2:
        raise InputError(f"need at least 2 stations, got {n_stations}")
    pitch = shape.segment_pitch
    n = shape.n_folds
    starts = np.array([(v[0], v[1]) for v in shape.vertices[:-1]], dtype=float)
    headings = np.array([v[2] for v in shape.vertices[:-1]], dtype=float)
    deltas = np.array(shape.heading_increments(), dtype=float)

    s = np.linspace(0.0, shape.total_length, n_stations)
    idx = np.minimum((s / pitch).astype(int), n - 1)
    t = s - idx * pitch

    h = headings[idx]
    d = deltas[idx]
    straight = np.abs(d) < _STRAIGHT_EPS
    beta = np.where(straight, 0.0, d * t / pitch)
    # Chord length from the fold start to the station; reduces to t when
    # the fold is straight.
    radius = pitch / np.where(straight, 1.0, d)
    chord = np.where(straight, t, 2.0 * radius * np.sin(beta / 2.0))
    direction = h + beta / 2.0
    out = np.empty((n_stations, 2), dtype=float)
    out[:, 0] = starts[idx, 0] + chord * np.cos(direction)
    out[:, 1] = starts[idx, 1] + chord * np.sin(direction)
    return out


def _contour_segments(contour: ContourProfile) -> tuple[np.ndarray, np.ndarray]:
    pts = np.array(contour.points, dtype=float)
    return pts[:-1], pts[1:]


def _points_to_polyline_distance(
    points: np.ndarray, seg_a: np.ndarray, seg_b: np.ndarray
) -> np.ndarray:
    """Min distance from each point to the polyline given as segment ends."""
    ab = seg_b - seg_a                              # (M, 2)
    ap = points[:, None, :] - seg_a[None, :, :]     # (K, M, 2)
    denom = np.einsum("md,md->m", ab, ab)           # (M,)
    proj = np.einsum("kmd,md->km", ap, ab) / denom
    proj = np.clip(proj, 0.0, 1.0)
    closest = seg_a[None, :, :] + proj[:, :, None] * ab[None, :, :]
    diff = points[:, None, :] - closest
    dist = np.sqrt(np.einsum("kmd,kmd->km", diff, diff))
    return dist.min(axis=1)


def _align_to_contour(stations: np.ndarray, contour: ContourProfile) -> np.ndarray:
    """Rotate/translate canonical-frame stations onto the contour start pose."""
    (x0, y0), (x1, y1) = contour.points[0], contour.points[1]
    angle = math.atan2(y1 - y0, x1 - x0)
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return stations @ rot.T + np.array([x0, y0])


def conformity_score(
    shape: BackboneShape,
    contour: ContourProfile,
    epsilon: float,
    n_stations: int = DEFAULT_STATIONS,
) -> ConformityScore:
    """Score how well the bent backbone hugs the target contour.

    The base pose is first matched to the contour's first point and initial
    tangent, so the score depends only on the two curves' intrinsic shapes.
    """
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise InputError(f"epsilon must be > 0 mm, got {epsilon!r}")
    stations = _align_to_contour(resample_backbone(shape, n_stations), contour)
    seg_a, seg_b = _contour_segments(contour)
    dist = _points_to_polyline_distance(stations, seg_a, seg_b)
    return ConformityScore(
        contact_ratio=float(np.count_nonzero(dist <= epsilon)) / len(dist),
        rms_distance=float(np.sqrt(np.mean(dist * dist))),
    )


def optimize_mask(
    config: ActuatorConfig,
    state: BendingState,
    contour: ContourProfile,
    pitch: float,
    epsilon: float,
    n_stations: int = DEFAULT_STATIONS,
) -> tuple[SegmentMask, ConformityScore]:
    """Exhaustively search all constraint patterns for the best conformity.

    Deterministic: masks are walked in lexicographic string order and a
    candidate must be strictly better under the full tie order (contact
    ratio, RMS, active-fold count, string order) to displace the incumbent.
    """
    n = config.n_folds
    if n > MAX_OPTIMIZER_FOLDS:
        raise InputError(
            f"exhaustive search covers at most {MAX_OPTIMIZER_FOLDS} folds, "
            f"got {n}; score candidate masks individually instead"
        )
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise InputError(f"epsilon must be > 0 mm, got {epsilon!r}")

    seg_a, seg_b = _contour_segments(contour)
    best: tuple[float, float, int] | None = None
    best_mask: SegmentMask | None = None
    best_score: ConformityScore | None = None
    for code in range(2 ** n):
        mask = SegmentMask.from_string(format(code, f"0{n}b"))
        shape = backbone_shape(config, state, mask, pitch)
        stations = _align_to_contour(resample_backbone(shape, n_stations), contour)
        dist = _points_to_polyline_distance(stations, seg_a, seg_b)
        score = ConformityScore(
            contact_ratio=float(np.count_nonzero(dist <= epsilon)) / len(dist),
            rms_distance=float(np.sqrt(np.mean(dist * dist))),
        )
        key = (score.contact_ratio, -score.rms_distance, mask.n_active)
        if best is None or key > best:
            best = key
            best_mask = mask
            best_score = score
    assert best_mask is not None and best_score is not None
    return best_mask, best_score

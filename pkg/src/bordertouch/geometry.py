"""Deformation model of a stretched fabric under a single indent.

The fabric is clamped to a rectangular frame. An indent at depth d pulls the
apex down to z = -d while the border stays at z = 0, and z varies linearly
along every ray from the apex to the border (a tent/cone surface). Planar
coordinates of material points are kept fixed; only z changes.

All lengths are millimeters unless noted. Functions are pure and safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AllMasked, DegenerateRay, InvalidParams, OutsideFrame, ShapeMismatch

# Geometric predicates (coincidence, degeneracy) are resolved at this scale.
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, corners (x0, y0) and (x1, y1)."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise InvalidParams(f"degenerate rectangle {self}")

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def contains(self, x, y) -> bool:
        return bool(self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1)


def _default_touch_area(width: float, height: float) -> Rect:
    # 80/125 of each side, centered: reproduces the 80x80 area inside the
    # 125x125 frame and scales sensibly for other frame sizes.
    mx = width * (1 - 0.64) / 2
    my = height * (1 - 0.64) / 2
    return Rect(mx, my, width - mx, height - my)


@dataclass(frozen=True)
class FrameSpec:
    """Rectangular sensing frame [0, width] x [0, height] with an inner touch area.

    Parameters
    ----------
    width, height : float
        Frame side lengths in mm.
    touch_area : Rect, optional
        Region where indents may occur; must lie strictly inside the frame.
        Defaults to a centered rectangle covering 64% of each side (80x80 mm
        for the 125x125 mm frame).
    depth_max : float
        Largest admissible indent depth in mm.
    """

    width: float = 125.0
    height: float = 125.0
    touch_area: Rect = None  # type: ignore[assignment]
    depth_max: float = 25.0

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise InvalidParams(f"frame sides must be positive, got {self.width}x{self.height}")
        if self.touch_area is None:
            object.__setattr__(self, "touch_area", _default_touch_area(self.width, self.height))
        ta = self.touch_area
        if not (ta.x0 > 0 and ta.y0 > 0 and ta.x1 < self.width and ta.y1 < self.height):
            raise InvalidParams(f"touch_area {ta} must lie strictly inside the {self.width}x{self.height} frame")
        if self.depth_max < 0:
            raise InvalidParams("depth_max must be non-negative")

    def contains(self, x, y) -> bool:
        """True when (x, y) is inside the frame or on its boundary."""
        return bool(0.0 <= x <= self.width and 0.0 <= y <= self.height)

    def contains_strict(self, x, y) -> bool:
        return bool(0.0 < x < self.width and 0.0 < y < self.height)

    def require_touch(self, touch: "TouchEvent") -> None:
        """Raise InvalidParams unless the touch lies in the touch area at an admissible depth."""
        if not self.touch_area.contains(touch.x, touch.y):
            raise InvalidParams(f"touch ({touch.x}, {touch.y}) outside touch area {self.touch_area}")
        if touch.depth > self.depth_max:
            raise InvalidParams(f"depth {touch.depth} exceeds depth_max {self.depth_max}")


@dataclass(frozen=True)
class TouchEvent:
    """A single indentation: planar position plus depth (all mm, depth >= 0)."""

    x: float
    y: float
    depth: float

    def __post_init__(self):
        if not np.isfinite([self.x, self.y, self.depth]).all():
            raise InvalidParams(f"non-finite touch event {self}")
        if self.depth < 0:
            raise InvalidParams(f"depth must be non-negative, got {self.depth}")


@dataclass(eq=False)
class MarkerGrid:
    """One tracked frame of a rows x cols marker lattice.

    positions has shape (rows, cols, 3); entries where mask is False are NaN
    (missing optical tracking). Units are whatever the producer used: mm for
    raw capture data, unit-range coordinates after normalization.
    """

    rows: int
    cols: int
    positions: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.positions.shape != (self.rows, self.cols, 3):
            raise ShapeMismatch(
                f"positions shape {self.positions.shape} != ({self.rows}, {self.cols}, 3)")
        if self.mask.shape != (self.rows, self.cols):
            raise ShapeMismatch(f"mask shape {self.mask.shape} != ({self.rows}, {self.cols})")
        self.positions = self.positions.copy()
        self.positions[~self.mask] = np.nan

    @property
    def n_valid(self) -> int:
        return int(self.mask.sum())


def _exit_scale(frame: FrameSpec, ox, oy, dx, dy):
    """Smallest s > 0 with (ox, oy) + s * (dx, dy) on the frame boundary.

    Broadcasts over array inputs. The origin must be strictly inside the
    frame, so exactly one forward boundary crossing exists.
    """
    dx_safe = np.where(dx == 0, 1.0, dx)
    dy_safe = np.where(dy == 0, 1.0, dy)
    sx = np.where(dx > 0, (frame.width - ox) / dx_safe,
                  np.where(dx < 0, (0.0 - ox) / dx_safe, np.inf))
    sy = np.where(dy > 0, (frame.height - oy) / dy_safe,
                  np.where(dy < 0, (0.0 - oy) / dy_safe, np.inf))
    return np.minimum(sx, sy), sx, sy


def ray_border_intersection(frame: FrameSpec, origin, through):
    """Intersection of the ray origin -> through with the frame boundary.

    Parameters
    ----------
    frame : FrameSpec
    origin : (x, y) strictly inside the frame.
    through : (x, y) distinct from origin; fixes the ray direction.

    Returns
    -------
    (x, y) tuple on the frame boundary. The coordinate that defines the hit
    edge is returned exactly (0, width, 0 or height).

    Raises
    ------
    DegenerateRay if |through - origin| < 1e-9 mm.
    InvalidParams if origin is not strictly inside the frame.
    """
    ox, oy = float(origin[0]), float(origin[1])
    tx, ty = float(through[0]), float(through[1])
    if not frame.contains_strict(ox, oy):
        raise InvalidParams(f"ray origin ({ox}, {oy}) must be strictly inside the frame")
    dx, dy = tx - ox, ty - oy
    if np.hypot(dx, dy) < GEOM_TOL:
        raise DegenerateRay(f"|through - origin| below {GEOM_TOL} mm")
    s, sx, sy = _exit_scale(frame, ox, oy, dx, dy)
    s, sx, sy = float(s), float(sx), float(sy)
    if sx <= sy:
        bx = frame.width if dx > 0 else 0.0
        by = min(max(oy + s * dy, 0.0), frame.height)
    else:
        by = frame.height if dy > 0 else 0.0
        bx = min(max(ox + s * dx, 0.0), frame.width)
    return (bx, by)


def tent_z(frame: FrameSpec, tx, ty, depth, px, py) -> np.ndarray:
    """Tent-surface height, broadcasting over apex and query-point arrays.

    z = -depth * (1 - r/R) with r the apex distance and R the distance from
    the apex to the border along the same ray. Since the query point sits at
    parameter 1 on the ray apex -> point, r/R equals 1/s for the boundary
    exit scale s, which avoids square roots and is exact on the border.
    """
    tx, ty = np.asarray(tx, dtype=float), np.asarray(ty, dtype=float)
    depth = np.asarray(depth, dtype=float)
    px, py = np.asarray(px, dtype=float), np.asarray(py, dtype=float)
    dx = px - tx
    dy = py - ty
    s, _, _ = _exit_scale(frame, tx, ty, dx, dy)
    near_apex = np.hypot(dx, dy) <= GEOM_TOL
    with np.errstate(invalid="ignore"):
        z = -depth * (1.0 - 1.0 / np.where(near_apex, np.inf, s))
    z = np.where(near_apex, -depth, z)
    return np.clip(z, -depth, 0.0) + 0.0  # normalizes -0.0 on the border


def deform_z(frame: FrameSpec, touch: TouchEvent, p) -> float:
    """Vertical displacement of the fabric at planar point p under a touch.

    Returns z in [-depth, 0]: -depth at the apex, 0 on the frame boundary,
    linear along every apex-to-border ray.

    Raises OutsideFrame when p lies outside the frame, InvalidParams when the
    touch position is not strictly inside it.
    """
    px, py = float(p[0]), float(p[1])
    if not frame.contains(px, py):
        raise OutsideFrame(f"point ({px}, {py}) outside {frame.width}x{frame.height} frame")
    if not frame.contains_strict(touch.x, touch.y):
        raise InvalidParams(f"touch ({touch.x}, {touch.y}) must be strictly inside the frame")
    return float(_tent_z(frame, touch, px, py))


def deform_z_many(frame: FrameSpec, touch: TouchEvent, pts: np.ndarray) -> np.ndarray:
    """deform_z applied to an (..., 2) array of planar points."""
    pts = np.asarray(pts, dtype=float)
    px, py = pts[..., 0], pts[..., 1]
    if np.any(px < 0) or np.any(px > frame.width) or np.any(py < 0) or np.any(py > frame.height):
        raise OutsideFrame("at least one query point lies outside the frame")
    if not frame.contains_strict(touch.x, touch.y):
        raise InvalidParams(f"touch ({touch.x}, {touch.y}) must be strictly inside the frame")
    return _tent_z(frame, touch, px, py)


def deform_point(frame: FrameSpec, touch: TouchEvent, p):
    """Deformed 3D position of the material point at planar p: (x, y, deform_z)."""
    z = deform_z(frame, touch, p)
    return (float(p[0]), float(p[1]), z)


@dataclass
class SurfaceRms:
    """Per-marker and overall RMS disagreement between two surface records.

    Values are fractions of the normalized unit range; multiply by 100 for
    percent. per_point_rms is NaN where a marker had no valid observation.
    """

    per_point_rms: np.ndarray
    overall_rms: float
    n_valid: int = 0


def surface_rms(model_z, measured_z, mask) -> SurfaceRms:
    """RMS error between modeled and measured z grids over tracked frames.

    Parameters
    ----------
    model_z, measured_z : array, shape (rows, cols) or (n_frames, rows, cols)
        z values in normalized (zero-to-one) units.
    mask : bool array, shape (rows, cols) or (n_frames, rows, cols)
        Validity of each marker (per frame when three-dimensional).

    Returns
    -------
    SurfaceRms with per_point_rms (rows, cols) frame-averaged at each marker
    and overall_rms over all valid (marker, frame) pairs.
    """
    model_z = _as_frames(model_z)
    measured_z = _as_frames(measured_z)
    if model_z.shape != measured_z.shape:
        raise ShapeMismatch(f"model {model_z.shape} vs measured {measured_z.shape}")
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim == 2:
        mask = np.broadcast_to(mask, model_z.shape)
    if mask.shape != model_z.shape:
        raise ShapeMismatch(f"mask {mask.shape} incompatible with grids {model_z.shape}")
    if not mask.any():
        raise AllMasked("no valid (marker, frame) pairs")

    sq = np.where(mask, (model_z - measured_z) ** 2, 0.0)
    counts = mask.sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        per_point = np.sqrt(sq.sum(axis=0) / counts)
    per_point = np.where(counts > 0, per_point, np.nan)
    overall = float(np.sqrt(sq.sum() / mask.sum()))
    return SurfaceRms(per_point_rms=per_point, overall_rms=overall, n_valid=int(mask.sum()))


def _as_frames(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim == 2:
        a = a[np.newaxis]
    if a.ndim != 3:
        raise ShapeMismatch(f"expected 2D or 3D grid, got shape {a.shape}")
    return a

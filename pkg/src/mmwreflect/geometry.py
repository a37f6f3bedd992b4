"""Planar geometry for an L-shaped corridor with a corner reflector panel.

Everything lives in a first-quadrant x/y frame measured in meters.  The
receiver arm of the corridor (length ``L_R``, width ``l_R``) runs along the
x axis and the transmitter arm (width ``l_T``, extending ``L_T`` beyond the
junction) runs up the y axis.  A flat reflector panel of width ``a`` leans
across the inner corner, one end resting on each axis wall, tilted by an
angle ``alpha`` from the x axis.

The tilt that aims the panel's specular bounce from the far transmitter
stop onto the receiver satisfies a single transcendental equation in
``alpha``; :func:`solve_reflector_orientation` finds its root by a coarse
bracketing scan refined with bisection and Newton steps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path


class GeometryError(ValueError):
    """A layout or panel parameter makes the requested construction meaningless."""


class NoRootError(GeometryError):
    """The orientation equation has no root in the scanned interval."""


class AmbiguousRootError(GeometryError):
    """The orientation equation has more than one root in the scanned interval."""

    def __init__(self, roots: list[float]) -> None:
        super().__init__(
            "orientation equation has %d roots in (0, 90) deg: %s"
            % (len(roots), ", ".join("%.6f deg" % math.degrees(r) for r in roots))
        )
        self.roots = tuple(roots)


@dataclass(frozen=True)
class Point2:
    """A point (or free vector) in the corridor plane, meters."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite, got (%r, %r)" % (self.x, self.y))

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def _sub(p: Point2, q: Point2) -> tuple[float, float]:
    return (p.x - q.x, p.y - q.y)


def _cross(u: tuple[float, float], v: tuple[float, float]) -> float:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u: tuple[float, float], v: tuple[float, float]) -> float:
    return u[0] * v[0] + u[1] * v[1]


@dataclass(frozen=True)
class WallSegment:
    """A straight reflecting wall section with a material identifier."""

    a: Point2
    b: Point2
    material: str = "plasterboard"
    name: str = ""

    def __post_init__(self) -> None:
        if self.a.distance_to(self.b) <= 0.0:
            raise ValueError("wall segment endpoints coincide at %r" % (self.a,))

    @property
    def length(self) -> float:
        return self.a.distance_to(self.b)


# Wall names generated for the standard L-shape, also the identifiers
# accepted by the layout JSON "wall_materials" table.
WALL_NAMES = ("bottom", "left", "rx_end", "tx_end", "inner_x", "inner_y")


@dataclass(frozen=True)
class CorridorLayout:
    """The L-shaped corridor footprint and its bounding walls.

    ``L_R``/``l_R`` are the length and width of the receiver arm along the
    x axis, ``L_T``/``l_T`` the extra length and the width of the
    transmitter arm up the y axis.  The footprint is the union of the two
    closed rectangles [0, L_R] x [0, l_R] and [0, l_T] x [0, L_T + l_R].
    """

    L_T: float
    L_R: float
    l_T: float
    l_R: float
    walls: tuple[WallSegment, ...]

    def __post_init__(self) -> None:
        for label, value in (("L_T", self.L_T), ("L_R", self.L_R),
                             ("l_T", self.l_T), ("l_R", self.l_R)):
            if not (math.isfinite(value) and value > 0.0):
                raise GeometryError("corridor dimension %s must be positive, got %r" % (label, value))
        if self.l_T > self.L_R:
            raise GeometryError("transmitter arm width l_T cannot exceed receiver arm length L_R")
        if not self.walls:
            raise GeometryError("layout needs at least one wall")

    @classmethod
    def from_dimensions(
        cls,
        L_T: float,
        L_R: float,
        l_T: float,
        l_R: float,
        wall_materials: dict[str, str] | None = None,
    ) -> "CorridorLayout":
        """Build the six-wall L-shape from the four arm dimensions.

        ``wall_materials`` optionally reassigns materials by wall name
        (see ``WALL_NAMES``); every wall defaults to plasterboard.
        """
        mats = {name: "plasterboard" for name in WALL_NAMES}
        if wall_materials:
            unknown = set(wall_materials) - set(WALL_NAMES)
            if unknown:
                raise GeometryError("unknown wall names: %s" % ", ".join(sorted(unknown)))
            mats.update(wall_materials)
        top = L_T + l_R
        walls = (
            WallSegment(Point2(0.0, 0.0), Point2(L_R, 0.0), mats["bottom"], "bottom"),
            WallSegment(Point2(0.0, 0.0), Point2(0.0, top), mats["left"], "left"),
            WallSegment(Point2(L_R, 0.0), Point2(L_R, l_R), mats["rx_end"], "rx_end"),
            WallSegment(Point2(0.0, top), Point2(l_T, top), mats["tx_end"], "tx_end"),
            WallSegment(Point2(l_T, l_R), Point2(l_T, top), mats["inner_x"], "inner_x"),
            WallSegment(Point2(l_T, l_R), Point2(L_R, l_R), mats["inner_y"], "inner_y"),
        )
        return cls(L_T=L_T, L_R=L_R, l_T=l_T, l_R=l_R, walls=walls)

    @classmethod
    def default(cls, wall_materials: dict[str, str] | None = None) -> "CorridorLayout":
        """The measured corridor all defaults and docs refer to."""
        return cls.from_dimensions(L_T=2.75, L_R=3.69, l_T=1.62, l_R=2.0,
                                   wall_materials=wall_materials)

    def contains(self, p: Point2, tol: float = 1e-9) -> bool:
        """True if ``p`` lies in the closed footprint, with ``tol`` slack."""
        in_rx_arm = -tol <= p.x <= self.L_R + tol and -tol <= p.y <= self.l_R + tol
        in_tx_arm = -tol <= p.x <= self.l_T + tol and -tol <= p.y <= self.L_T + self.l_R + tol
        return in_rx_arm or in_tx_arm

    def to_dict(self) -> dict:
        d: dict = {"L_T": self.L_T, "L_R": self.L_R, "l_T": self.l_T, "l_R": self.l_R}
        mats = {w.name: w.material for w in self.walls if w.name in WALL_NAMES}
        if any(m != "plasterboard" for m in mats.values()):
            d["wall_materials"] = {k: v for k, v in mats.items() if v != "plasterboard"}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CorridorLayout":
        try:
            dims = {k: float(d[k]) for k in ("L_T", "L_R", "l_T", "l_R")}
        except KeyError as exc:
            raise GeometryError("layout JSON is missing dimension %s" % exc) from None
        mats = d.get("wall_materials")
        if mats is not None and not isinstance(mats, dict):
            raise GeometryError("wall_materials must be a name-to-material table")
        return cls.from_dimensions(wall_materials=mats, **dims)


def load_layout(path: str | Path) -> CorridorLayout:
    """Read a corridor layout from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return CorridorLayout.from_dict(json.load(fh))


@dataclass(frozen=True)
class ReflectorPanel:
    """The corner panel as a reflecting segment from A on the x wall to B on the y wall."""

    width_a: float
    end_on_x: Point2
    end_on_y: Point2
    center: Point2
    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < math.pi / 2:
            raise GeometryError("panel tilt must lie in (0, pi/2) rad, got %r" % self.alpha)
        if abs(self.end_on_x.y) > 1e-12 or abs(self.end_on_y.x) > 1e-12:
            raise GeometryError("panel ends must rest on the axis walls")
        span = self.end_on_x.distance_to(self.end_on_y)
        if not math.isclose(span, self.width_a, rel_tol=1e-9, abs_tol=1e-12):
            raise GeometryError("panel endpoints are %.12f m apart, expected width %.12f m"
                                % (span, self.width_a))
        mid = Point2((self.end_on_x.x + self.end_on_y.x) / 2.0,
                     (self.end_on_x.y + self.end_on_y.y) / 2.0)
        if mid.distance_to(self.center) > 1e-9:
            raise GeometryError("panel center must be the chord midpoint")

    @property
    def front_normal(self) -> tuple[float, float]:
        """Unit normal of the reflecting face, pointing into the corridor."""
        return (math.sin(self.alpha), math.cos(self.alpha))


def panel_from_alpha(alpha: float, width_a: float) -> ReflectorPanel:
    """Place a panel of width ``width_a`` tilted ``alpha`` rad from the x axis.

    The end A = (a cos(alpha), 0) rests on the x wall, the end
    B = (0, a sin(alpha)) on the y wall.
    """
    if not 0.0 < alpha < math.pi / 2:
        raise GeometryError("panel tilt must lie in (0, pi/2) rad, got %r" % alpha)
    if not (math.isfinite(width_a) and width_a > 0.0):
        raise GeometryError("panel width must be positive, got %r" % width_a)
    end_x = Point2(width_a * math.cos(alpha), 0.0)
    end_y = Point2(0.0, width_a * math.sin(alpha))
    center = Point2(end_x.x / 2.0, end_y.y / 2.0)
    return ReflectorPanel(width_a=width_a, end_on_x=end_x, end_on_y=end_y,
                          center=center, alpha=alpha)


@dataclass(frozen=True)
class AngleSolution:
    """The solved panel tilt and the two aim angles it induces.

    ``alpha`` is the panel tilt from the x axis.  ``beta`` is the angle at
    the receiver between the corridor axis and the line to the panel
    center; ``gamma`` is the matching angle at the far transmitter stop.
    All radians.  ``residual`` is the orientation equation residual at the
    returned root.
    """

    alpha: float
    beta: float
    gamma: float
    panel: ReflectorPanel
    residual: float


def _aim_angles(alpha: float, layout: CorridorLayout, width_a: float) -> tuple[float, float]:
    """Receiver and transmitter aim angles toward the panel center at tilt ``alpha``."""
    half = width_a / 2.0
    den_beta = layout.L_R - half * math.cos(alpha)
    den_gamma = layout.L_T + layout.l_R - half * math.sin(alpha)
    if den_beta <= 1e-12 or den_gamma <= 1e-12:
        raise GeometryError(
            "panel center sits at or beyond an antenna plane (width %.3f m too large "
            "for this layout)" % width_a)
    beta = math.atan2(layout.l_R / 2.0 - half * math.sin(alpha), den_beta)
    gamma = math.atan2(layout.l_T / 2.0 - half * math.cos(alpha), den_gamma)
    return beta, gamma


def orientation_residual(alpha: float, layout: CorridorLayout, width_a: float) -> float:
    """How far tilt ``alpha`` is from aiming the panel correctly, in radians.

    The specular-aim condition ties the tilt to the two aim angles as
    2*alpha + beta - gamma = pi/2; the residual is the left side minus
    pi/2, negative when the panel is under-rotated.
    """
    if not 0.0 <= alpha <= math.pi / 2:
        raise GeometryError("tilt %r rad outside [0, pi/2]" % alpha)
    if width_a < 0.0:
        raise GeometryError("panel width must be nonnegative, got %r" % width_a)
    beta, gamma = _aim_angles(alpha, layout, width_a)
    return 2.0 * alpha + beta - gamma - math.pi / 2.0


_SCAN_STEP_DEG = 1.0
_ROOT_TOL = 1e-10


def _refine_root(f, lo: float, hi: float, f_lo: float, f_hi: float) -> float:
    """Polish one bracketed sign change: bisection first, Newton to finish."""
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo < 1e-6:
            break
    x = 0.5 * (lo + hi)
    h = 1e-7
    for _ in range(25):
        fx = f(x)
        dfx = (f(x + h) - f(x - h)) / (2.0 * h)
        if dfx == 0.0:
            break
        step = fx / dfx
        nxt = x - step
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) < 1e-15:
            x = nxt
            break
        x = nxt
    return x


def solve_reflector_orientation(layout: CorridorLayout, width_a: float) -> AngleSolution:
    """Solve the orientation equation for the panel tilt in (0, 90) degrees.

    Scans a one-degree grid for sign changes of the residual, refines each
    bracket, and insists on exactly one root.  The returned residual is
    below 1e-10 rad in magnitude.
    """
    if not (math.isfinite(width_a) and width_a > 0.0):
        raise GeometryError("panel width must be positive, got %r" % width_a)

    def f(alpha: float) -> float:
        return orientation_residual(alpha, layout, width_a)

    grid = [math.radians(1e-6)]
    grid += [math.radians(d) for d in range(1, 90)]
    grid += [math.pi / 2.0 - math.radians(1e-6)]

    roots: list[float] = []
    prev_a = grid[0]
    prev_f = f(prev_a)
    if prev_f == 0.0:
        roots.append(prev_a)
    for a in grid[1:]:
        fa = f(a)
        if fa == 0.0:
            roots.append(a)
        elif (fa < 0.0) != (prev_f < 0.0):
            roots.append(_refine_root(f, prev_a, a, prev_f, fa))
        prev_a, prev_f = a, fa

    # Collapse refinements that landed on the same root.
    unique: list[float] = []
    for r in sorted(roots):
        if not unique or abs(r - unique[-1]) > 1e-9:
            unique.append(r)

    if not unique:
        raise NoRootError("orientation equation has no root in (0, 90) deg for this layout")
    if len(unique) > 1:
        raise AmbiguousRootError(unique)

    alpha = unique[0]
    residual = f(alpha)
    if abs(residual) > _ROOT_TOL:
        raise GeometryError("root refinement stalled, residual %.3e rad" % residual)
    beta, gamma = _aim_angles(alpha, layout, width_a)
    return AngleSolution(alpha=alpha, beta=beta, gamma=gamma,
                         panel=panel_from_alpha(alpha, width_a), residual=residual)


def mirror_point(p: Point2, seg: WallSegment) -> Point2:
    """Reflect ``p`` across the infinite line supporting ``seg``."""
    dx, dy = _sub(seg.b, seg.a)
    norm2 = dx * dx + dy * dy
    px, py = _sub(p, seg.a)
    t = (px * dx + py * dy) / norm2
    foot = (seg.a.x + t * dx, seg.a.y + t * dy)
    return Point2(2.0 * foot[0] - p.x, 2.0 * foot[1] - p.y)


@dataclass(frozen=True)
class SegmentCrossing:
    """Outcome of intersecting two closed segments.

    ``kind`` is "none", "point" or "overlap"; ``point`` is set only for
    the "point" kind.  Collinear segments sharing more than a single point
    report "overlap" and no representative point.
    """

    kind: str
    point: Point2 | None = None


_EPS = 1e-12


def segment_intersection(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> SegmentCrossing:
    """Intersect closed segments a0-a1 and b0-b1, flagging collinear overlap."""
    r = _sub(a1, a0)
    s = _sub(b1, b0)
    qp = _sub(b0, a0)
    denom = _cross(r, s)
    scale = max(abs(r[0]), abs(r[1]), abs(s[0]), abs(s[1]), 1.0)
    if abs(denom) <= _EPS * scale * scale:
        if abs(_cross(qp, r)) > _EPS * scale * scale:
            return SegmentCrossing("none")
        # Collinear: compare parameter intervals along a0-a1.
        rr = _dot(r, r)
        if rr <= _EPS:
            return SegmentCrossing("none")
        t0 = _dot(qp, r) / rr
        t1 = _dot(_sub(b1, a0), r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        lo, hi = max(lo, 0.0), min(hi, 1.0)
        if lo > hi + _EPS:
            return SegmentCrossing("none")
        if hi - lo <= _EPS:
            t = 0.5 * (lo + hi)
            return SegmentCrossing("point", Point2(a0.x + t * r[0], a0.y + t * r[1]))
        return SegmentCrossing("overlap")
    t = _cross(qp, s) / denom
    u = _cross(qp, r) / denom
    if -_EPS <= t <= 1.0 + _EPS and -_EPS <= u <= 1.0 + _EPS:
        t = min(max(t, 0.0), 1.0)
        return SegmentCrossing("point", Point2(a0.x + t * r[0], a0.y + t * r[1]))
    return SegmentCrossing("none")


def panel_as_wall(panel: ReflectorPanel, material: str = "metal") -> WallSegment:
    """The panel viewed as a reflecting segment for ray construction."""
    return WallSegment(panel.end_on_x, panel.end_on_y, material, "panel")


def rotate_panel(panel: ReflectorPanel, alpha: float) -> ReflectorPanel:
    """Same panel width at a different tilt."""
    return panel_from_alpha(alpha, panel.width_a)


__all__ = [
    "AmbiguousRootError",
    "AngleSolution",
    "CorridorLayout",
    "GeometryError",
    "NoRootError",
    "Point2",
    "ReflectorPanel",
    "SegmentCrossing",
    "WALL_NAMES",
    "WallSegment",
    "load_layout",
    "mirror_point",
    "orientation_residual",
    "panel_as_wall",
    "panel_from_alpha",
    "rotate_panel",
    "segment_intersection",
    "solve_reflector_orientation",
]

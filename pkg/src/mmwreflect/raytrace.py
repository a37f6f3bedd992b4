"""Specular ray construction in the corridor by the method of images.

A candidate bounce sequence is turned into a path by mirroring the
transmitter through each reflecting segment in turn, walking back from the
receiver through the image chain, and keeping the result only when every
bounce lands strictly inside its segment and every leg clears the walls.
Orders up to three bounces are supported; the corridor geometry makes
higher orders irrelevant at these path losses.

The reflector panel is one-sided: only rays hitting the face that looks
into the corridor reflect.  The panel never blocks wall paths, so adding
it strictly extends the path set of the bare corridor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .geometry import (
    CorridorLayout,
    Point2,
    ReflectorPanel,
    WallSegment,
    mirror_point,
    panel_as_wall,
    segment_intersection,
)

# Wavelength-scale slack: bounce points must clear segment endpoints and
# legs must clear walls by more than this, in meters.
_ENDPOINT_TOL = 1e-9

SPEED_OF_LIGHT = 299_792_458.0
"""Vacuum speed of light, m/s (exact by definition)."""


class OutsideCorridorError(ValueError):
    """An antenna position falls outside the corridor footprint."""


@dataclass(frozen=True)
class Environment:
    """A corridor layout plus an optional reflector panel to trace against."""

    layout: CorridorLayout
    panel: ReflectorPanel | None = None
    panel_material: str = "metal"

    def __post_init__(self) -> None:
        if self.panel is not None:
            for end in (self.panel.end_on_x, self.panel.end_on_y):
                if not self.layout.contains(end):
                    raise ValueError("panel endpoint %r lies outside the corridor" % (end,))


@dataclass(frozen=True)
class RayPath:
    """One specular path from transmitter to receiver.

    ``vertices`` runs tx, bounce points, rx; ``bounce_walls`` and
    ``bounce_materials`` describe the reflecting segments in bounce order.
    """

    vertices: tuple[Point2, ...]
    bounce_walls: tuple[str, ...]
    bounce_materials: tuple[str, ...]
    total_length: float
    delay: float

    @property
    def order(self) -> int:
        return len(self.bounce_walls)

    def to_dict(self) -> dict:
        return {
            "vertices": [[v.x, v.y] for v in self.vertices],
            "walls": list(self.bounce_walls),
            "materials": list(self.bounce_materials),
            "length_m": self.total_length,
            "delay_ns": self.delay * 1e9,
        }


def _make_path(vertices: list[Point2], surfaces: list[WallSegment]) -> RayPath:
    length = sum(vertices[i].distance_to(vertices[i + 1]) for i in range(len(vertices) - 1))
    return RayPath(
        vertices=tuple(vertices),
        bounce_walls=tuple(s.name for s in surfaces),
        bounce_materials=tuple(s.material for s in surfaces),
        total_length=length,
        delay=length / SPEED_OF_LIGHT,
    )


def _leg_clear(p: Point2, q: Point2, walls: tuple[WallSegment, ...]) -> bool:
    """True when segment p-q meets no wall except at its own endpoints.

    Collinear overlap with a wall counts as blocked: a ray grazing along a
    surface is treated conservatively as absorbed.
    """
    for wall in walls:
        hit = segment_intersection(p, q, wall.a, wall.b)
        if hit.kind == "overlap":
            return False
        if hit.kind == "point":
            assert hit.point is not None
            if (hit.point.distance_to(p) > _ENDPOINT_TOL
                    and hit.point.distance_to(q) > _ENDPOINT_TOL):
                return False
    return True


def _require_inside(layout: CorridorLayout, label: str, p: Point2) -> None:
    if not layout.contains(p):
        raise OutsideCorridorError("%s position (%g, %g) is outside the corridor" % (label, p.x, p.y))


def los_blocked(tx: Point2, rx: Point2, env: Environment) -> bool:
    """Whether any wall cuts the straight transmitter-receiver segment.

    The panel is ignored here: line of sight describes the bare corridor.
    An antenna may sit flush against a wall, so crossings at the segment
    endpoints do not count.
    """
    _require_inside(env.layout, "tx", tx)
    _require_inside(env.layout, "rx", rx)
    if tx.distance_to(rx) <= _ENDPOINT_TOL:
        return False
    return not _leg_clear(tx, rx, env.layout.walls)


def _signed_distance(p: Point2, seg: WallSegment, normal: tuple[float, float]) -> float:
    return (p.x - seg.a.x) * normal[0] + (p.y - seg.a.y) * normal[1]


def _trace_sequence(
    tx: Point2,
    rx: Point2,
    sequence: tuple[WallSegment, ...],
    walls: tuple[WallSegment, ...],
    panel_normal: tuple[float, float] | None,
    panel_name: str,
) -> RayPath | None:
    """Build the specular path bouncing off ``sequence`` in order, or None."""
    images = [tx]
    for seg in sequence:
        images.append(mirror_point(images[-1], seg))

    # Walk back from the receiver: each bounce is where the segment from
    # the matching image to the next known vertex crosses the reflector.
    target = rx
    bounces: list[Point2] = []
    for idx in range(len(sequence) - 1, -1, -1):
        seg = sequence[idx]
        image = images[idx + 1]
        dx, dy = seg.b.x - seg.a.x, seg.b.y - seg.a.y
        seg_len = math.hypot(dx, dy)
        nx, ny = -dy / seg_len, dx / seg_len
        d_img = _signed_distance(image, seg, (nx, ny))
        d_tgt = _signed_distance(target, seg, (nx, ny))
        if d_img * d_tgt >= 0.0:
            return None  # image and target on the same side: no crossing
        t = d_img / (d_img - d_tgt)
        bounce = Point2(image.x + t * (target.x - image.x),
                        image.y + t * (target.y - image.y))
        s = ((bounce.x - seg.a.x) * dx + (bounce.y - seg.a.y) * dy) / seg_len
        if not _ENDPOINT_TOL <= s <= seg_len - _ENDPOINT_TOL:
            return None  # bounce misses the segment interior
        bounces.append(bounce)
        target = bounce
    bounces.reverse()

    vertices = [tx, *bounces, rx]
    for i in range(len(vertices) - 1):
        if vertices[i].distance_to(vertices[i + 1]) < _ENDPOINT_TOL:
            return None
        if not _leg_clear(vertices[i], vertices[i + 1], walls):
            return None
    if panel_normal is not None:
        for i, seg in enumerate(sequence):
            if seg.name != panel_name:
                continue
            before = _signed_distance(vertices[i], seg, panel_normal)
            after = _signed_distance(vertices[i + 2], seg, panel_normal)
            if before <= 0.0 or after <= 0.0:
                return None  # arrived at the panel's dead back face
    return _make_path(vertices, list(sequence))


def enumerate_paths(tx: Point2, rx: Point2, env: Environment, max_order: int = 2) -> list[RayPath]:
    """All specular paths up to ``max_order`` bounces, sorted by delay.

    Paths are keyed by their reflecting-segment name sequence, so each
    geometric path appears once.  max_order 0 yields at most the direct
    path.
    """
    if not isinstance(max_order, int) or not 0 <= max_order <= 3:
        raise ValueError("max_order must be an integer in [0, 3], got %r" % (max_order,))
    _require_inside(env.layout, "tx", tx)
    _require_inside(env.layout, "rx", rx)

    walls = env.layout.walls
    surfaces = list(walls)
    panel_normal = None
    panel_name = "panel"
    if env.panel is not None:
        surfaces.append(panel_as_wall(env.panel, env.panel_material))
        panel_normal = env.panel.front_normal

    found: dict[tuple[str, ...], RayPath] = {}
    if tx.distance_to(rx) > _ENDPOINT_TOL and _leg_clear(tx, rx, walls):
        found[()] = _make_path([tx, rx], [])

    for order in range(1, max_order + 1):
        for sequence in itertools.product(surfaces, repeat=order):
            if any(sequence[i] is sequence[i + 1] for i in range(order - 1)):
                continue  # consecutive repeats cannot produce a new bounce
            key = tuple(s.name for s in sequence)
            if key in found:
                continue
            path = _trace_sequence(tx, rx, sequence, walls, panel_normal, panel_name)
            if path is not None:
                found[key] = path

    return sorted(found.values(), key=lambda p: (p.delay, p.bounce_walls))


def panel_path(tx: Point2, rx: Point2, env: Environment) -> RayPath | None:
    """The single-bounce path off the panel, or None when geometry forbids it.

    None covers a missing panel, a specular point off the panel extent, a
    back-face arrival, and a leg blocked by a wall.
    """
    if env.panel is None:
        return None
    _require_inside(env.layout, "tx", tx)
    _require_inside(env.layout, "rx", rx)
    seg = panel_as_wall(env.panel, env.panel_material)
    return _trace_sequence(tx, rx, (seg,), env.layout.walls,
                           env.panel.front_normal, "panel")


def grazing_angle(direction: tuple[float, float], panel: ReflectorPanel) -> float:
    """Angle between a ray direction and the panel surface, radians in [0, pi/2].

    This is the surface-referenced incidence convention: 90 degrees means
    normal incidence.
    """
    dx = panel.end_on_y.x - panel.end_on_x.x
    dy = panel.end_on_y.y - panel.end_on_x.y
    seg_len = math.hypot(dx, dy)
    mag = math.hypot(direction[0], direction[1])
    if mag <= 0.0 or seg_len <= 0.0:
        raise ValueError("zero-length direction or panel")
    sinang = abs(direction[0] * dy - direction[1] * dx) / (mag * seg_len)
    return math.asin(min(sinang, 1.0))


__all__ = [
    "Environment",
    "OutsideCorridorError",
    "RayPath",
    "SPEED_OF_LIGHT",
    "enumerate_paths",
    "grazing_angle",
    "los_blocked",
    "panel_path",
]

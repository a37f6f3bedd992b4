"""Narrowband path physics: spreading loss, wall reflectivity, antenna gain.

Reflections are scalar per-material amplitude factors; at these desk
scales the grazing-angle dependence is folded into the per-material
number.  Antenna patterns are azimuth-only, matching a 2D floor-plan
model: an omni is flat, a horn rolls off parabolically in dB and bottoms
out at a fixed backlobe level.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from importlib import resources
from typing import TYPE_CHECKING, Mapping

from .raytrace import SPEED_OF_LIGHT

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .geometry import Point2
    from .raytrace import RayPath

_FOUR_PI = 4.0 * math.pi

# A horn's gain never drops more than this below its peak, whatever the
# azimuth: crude backlobe model.
BACKLOBE_DB = 20.0


class UnknownMaterialError(KeyError):
    """Lookup of a material id that is not in the registry."""


@dataclass(frozen=True)
class Material:
    """A reflecting surface type with a scalar reflection amplitude."""

    id: str
    name: str
    reflection_amplitude: float
    source: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("material id must be non-empty")
        if not 0.0 <= self.reflection_amplitude <= 1.0:
            raise ValueError("reflection amplitude must lie in [0, 1], got %r"
                             % (self.reflection_amplitude,))


MaterialRegistry = Mapping[str, Material]


@lru_cache(maxsize=1)
def default_materials() -> dict[str, Material]:
    """The built-in material table, loaded from the packaged data file."""
    raw = resources.files("mmwreflect.data").joinpath("materials.json").read_text("utf-8")
    table = {}
    for entry in json.loads(raw)["materials"]:
        mat = Material(**entry)
        table[mat.id] = mat
    return table


def reflection_amplitude(material_id: str, registry: MaterialRegistry | None = None) -> float:
    """Scalar amplitude kept by one bounce off the named material."""
    table = default_materials() if registry is None else registry
    try:
        return table[material_id].reflection_amplitude
    except KeyError:
        raise UnknownMaterialError("material %r is not registered" % (material_id,)) from None


@dataclass(frozen=True)
class AntennaPattern:
    """An azimuth gain pattern, either omnidirectional or a horn.

    ``boresight`` is a unit vector in the corridor plane; it is irrelevant
    for an omni but kept so patterns can be re-aimed uniformly.
    """

    kind: str
    peak_gain_dbi: float
    azimuth_hpbw_deg: float | None
    boresight: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self) -> None:
        if self.kind not in ("omni", "horn"):
            raise ValueError("antenna kind must be 'omni' or 'horn', got %r" % (self.kind,))
        if self.kind == "horn":
            if self.azimuth_hpbw_deg is None or self.azimuth_hpbw_deg <= 0.0:
                raise ValueError("a horn needs a positive azimuth beamwidth")
        mag = math.hypot(*self.boresight)
        if not math.isclose(mag, 1.0, rel_tol=1e-9):
            if mag <= 0.0:
                raise ValueError("boresight vector must be non-zero")
            object.__setattr__(self, "boresight",
                               (self.boresight[0] / mag, self.boresight[1] / mag))

    @classmethod
    def omni(cls, peak_gain_dbi: float) -> "AntennaPattern":
        return cls("omni", peak_gain_dbi, None)

    @classmethod
    def horn(cls, peak_gain_dbi: float, azimuth_hpbw_deg: float,
             boresight: tuple[float, float] = (1.0, 0.0)) -> "AntennaPattern":
        return cls("horn", peak_gain_dbi, azimuth_hpbw_deg, boresight)

    def aimed_at(self, origin: "Point2", target: "Point2") -> "AntennaPattern":
        """The same pattern with boresight turned from ``origin`` toward ``target``."""
        dx, dy = target.x - origin.x, target.y - origin.y
        mag = math.hypot(dx, dy)
        if mag <= 0.0:
            raise ValueError("cannot aim at the antenna's own position")
        return replace(self, boresight=(dx / mag, dy / mag))


def antenna_gain_dbi(pattern: AntennaPattern, direction: tuple[float, float]) -> float:
    """Gain toward ``direction`` (a vector away from the antenna), in dBi.

    The horn model is peak - 3*(theta / (hpbw/2))^2 with theta the azimuth
    offset from boresight in degrees, floored BACKLOBE_DB below peak so
    the backlobe never vanishes entirely.
    """
    mag = math.hypot(direction[0], direction[1])
    if mag <= 0.0:
        raise ValueError("direction vector must be non-zero")
    if pattern.kind == "omni":
        return pattern.peak_gain_dbi
    bx, by = pattern.boresight
    cosang = (direction[0] * bx + direction[1] * by) / mag
    sinang = (direction[0] * by - direction[1] * bx) / mag
    theta = math.degrees(math.atan2(abs(sinang), cosang))
    assert pattern.azimuth_hpbw_deg is not None
    rolloff = 3.0 * (theta / (pattern.azimuth_hpbw_deg / 2.0)) ** 2
    return pattern.peak_gain_dbi - min(rolloff, BACKLOBE_DB)


def fspl_db(distance_m: float, frequency_hz: float) -> float:
    """Free-space path loss 20*log10(4*pi*d*f/c) in dB."""
    if distance_m <= 0.0:
        raise ValueError("distance must be positive, got %r" % (distance_m,))
    if frequency_hz <= 0.0:
        raise ValueError("frequency must be positive, got %r" % (frequency_hz,))
    return 20.0 * math.log10(_FOUR_PI * distance_m * frequency_hz / SPEED_OF_LIGHT)


def path_amplitude(
    path: "RayPath",
    frequency_hz: float,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    materials: MaterialRegistry | None = None,
) -> complex:
    """Complex baseband amplitude of one path at one frequency.

    Combines spreading loss, per-bounce reflection amplitudes, both
    antenna gains toward the path's local directions, and the carrier
    phase exp(-j*2*pi*f*delay).
    """
    if frequency_hz <= 0.0:
        raise ValueError("frequency must be positive, got %r" % (frequency_hz,))
    spread = SPEED_OF_LIGHT / (_FOUR_PI * path.total_length * frequency_hz)
    gamma = 1.0
    for mat in path.bounce_materials:
        gamma *= reflection_amplitude(mat, materials)
    v = path.vertices
    departure = (v[1].x - v[0].x, v[1].y - v[0].y)
    arrival = (v[-2].x - v[-1].x, v[-2].y - v[-1].y)
    gains_db = (antenna_gain_dbi(tx_pattern, departure)
                + antenna_gain_dbi(rx_pattern, arrival))
    phase = -2.0 * math.pi * frequency_hz * path.delay
    return (spread * gamma * 10.0 ** (gains_db / 20.0)
            * complex(math.cos(phase), math.sin(phase)))


__all__ = [
    "AntennaPattern",
    "BACKLOBE_DB",
    "Material",
    "MaterialRegistry",
    "SPEED_OF_LIGHT",
    "UnknownMaterialError",
    "antenna_gain_dbi",
    "default_materials",
    "fspl_db",
    "path_amplitude",
    "reflection_amplitude",
]

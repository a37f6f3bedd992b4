"""Frequency sweeps, channel transfer functions, and delay-domain views.

A sweep mimics a VNA trace: ``n_points`` complex samples evenly spaced
across a bandwidth around a center frequency.  The channel response is
the coherent sum of the per-path amplitudes at every sweep point, so
multipath shows up as the familiar ripple whose null spacing is the
reciprocal of the excess delay.

Band-averaged path loss is -10*log10(mean |H|^2); an optional noise floor
clamps readings the instrument could not distinguish from noise.  The
power delay profile is the inverse DFT of the (optionally windowed)
trace, normalized so a lone path peaks at its own dB gain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .propagation import (
    AntennaPattern,
    MaterialRegistry,
    antenna_gain_dbi,
    reflection_amplitude,
)
from .raytrace import RayPath, SPEED_OF_LIGHT


class GridMismatchError(ValueError):
    """Two traces that must share a sweep grid do not."""


@dataclass(frozen=True)
class SweepGrid:
    """An inclusive, evenly spaced frequency grid centered on a carrier."""

    center_hz: float
    bandwidth_hz: float
    n_points: int

    def __post_init__(self) -> None:
        if self.n_points < 2:
            raise ValueError("a sweep needs at least 2 points, got %r" % (self.n_points,))
        if self.bandwidth_hz <= 0.0:
            raise ValueError("bandwidth must be positive, got %r" % (self.bandwidth_hz,))
        if self.center_hz - self.bandwidth_hz / 2.0 <= 0.0:
            raise ValueError("sweep extends to nonpositive frequencies")

    @classmethod
    def default(cls) -> "SweepGrid":
        """The 59-61 GHz, 401-point grid used by the reference campaign."""
        return cls(center_hz=60e9, bandwidth_hz=2e9, n_points=401)

    @property
    def step_hz(self) -> float:
        return self.bandwidth_hz / (self.n_points - 1)

    def frequencies(self) -> np.ndarray:
        half = self.bandwidth_hz / 2.0
        return np.linspace(self.center_hz - half, self.center_hz + half, self.n_points)


@dataclass(frozen=True, eq=False)
class ComplexTrace:
    """Complex frequency-response samples on a sweep grid."""

    grid: SweepGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.shape != (self.grid.n_points,):
            raise ValueError("trace has %r samples for a %d-point grid"
                             % (arr.shape, self.grid.n_points))
        if not np.all(np.isfinite(arr)):
            raise ValueError("trace contains non-finite samples")
        object.__setattr__(self, "values", arr)


def require_same_grid(*traces: ComplexTrace) -> SweepGrid:
    grid = traces[0].grid
    for t in traces[1:]:
        if t.grid != grid:
            raise GridMismatchError("sweep grids differ: %r vs %r" % (grid, t.grid))
    return grid


def synthesize_frequency_response(
    paths: list[RayPath],
    grid: SweepGrid,
    tx_pattern: AntennaPattern,
    rx_pattern: AntennaPattern,
    materials: MaterialRegistry | None = None,
) -> ComplexTrace:
    """Sum the per-path complex amplitudes over the whole sweep.

    Matches path_amplitude sample for sample; an empty path list gives an
    all-zero trace.
    """
    freqs = grid.frequencies()
    total = np.zeros(grid.n_points, dtype=np.complex128)
    for path in paths:
        # Frequency-independent factors once per path, then vectorized
        # spreading and phase across the grid.
        gamma = 1.0
        for mat in path.bounce_materials:
            gamma *= reflection_amplitude(mat, materials)
        v = path.vertices
        departure = (v[1].x - v[0].x, v[1].y - v[0].y)
        arrival = (v[-2].x - v[-1].x, v[-2].y - v[-1].y)
        gains = 10.0 ** ((antenna_gain_dbi(tx_pattern, departure)
                          + antenna_gain_dbi(rx_pattern, arrival)) / 20.0)
        spread = SPEED_OF_LIGHT / (4.0 * math.pi * path.total_length * freqs)
        total = total + spread * gamma * gains * np.exp(-2j * math.pi * freqs * path.delay)
    return ComplexTrace(grid, total)


def path_loss_db(trace: ComplexTrace, noise_floor_db: float | None = None) -> float:
    """Band-averaged path loss of a trace, optionally clamped at a floor.

    An all-zero trace is bottomless loss: +inf without a floor, the floor
    itself with one.
    """
    mean_power = float(np.mean(np.abs(trace.values) ** 2))
    loss = math.inf if mean_power == 0.0 else -10.0 * math.log10(mean_power)
    if noise_floor_db is not None:
        loss = min(loss, noise_floor_db)
    return loss


_WINDOWS = ("rectangular", "hann")


@dataclass(frozen=True, eq=False)
class PowerDelayProfile:
    """Delay bins and per-bin power for one trace.

    Bin spacing is the reciprocal sweep bandwidth, so the default grid
    resolves 0.5 ns.  Empty bins are -inf dB.
    """

    delays_s: np.ndarray
    powers_db: np.ndarray
    window: str

    def peak_bin(self) -> int:
        return int(np.argmax(self.powers_db))


def power_delay_profile(trace: ComplexTrace, window: str = "rectangular") -> PowerDelayProfile:
    """Inverse-transform a trace into the delay domain.

    The window, when not rectangular, is scaled to unit coherent gain so
    a single path still peaks at its own gain.
    """
    if window not in _WINDOWS:
        raise ValueError("window must be one of %s, got %r" % (", ".join(_WINDOWS), window))
    n = trace.grid.n_points
    if window == "hann":
        w = np.hanning(n)
        w = w * (n / np.sum(w))
    else:
        w = np.ones(n)
    bins = np.fft.ifft(trace.values * w)
    with np.errstate(divide="ignore"):
        powers = 20.0 * np.log10(np.abs(bins))
    delays = np.arange(n) / trace.grid.bandwidth_hz
    return PowerDelayProfile(delays_s=delays, powers_db=powers, window=window)


__all__ = [
    "ComplexTrace",
    "GridMismatchError",
    "PowerDelayProfile",
    "SweepGrid",
    "path_loss_db",
    "power_delay_profile",
    "require_same_grid",
    "synthesize_frequency_response",
]

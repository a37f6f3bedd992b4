"""De-embedding of the measurement rig from swept channel responses.

A full sweep through the rig is modeled as the sample-wise product

    H_M = H_Tx * G_Tx * H_C * G_Rx * H_Rx

where H_Tx/H_Rx are the up/down converter chains, G_Tx/G_Rx flat antenna
gains, and H_C the over-the-air channel.  A back-to-back record replaces
the air link with a known flat attenuator:

    H_BB = H_Tx * H_A * H_Rx,   H_A = 10^(-attenuator_db / 20).

Dividing the two and restoring H_A isolates the channel:

    H_C = H_M * H_A / (H_BB * G_Tx * G_Rx)

which is exact whenever H_BB never vanishes, so composing a synthetic rig
and de-embedding round-trips to numerical precision.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import ComplexTrace, SweepGrid, require_same_grid


class SweepFormatError(ValueError):
    """A sweep CSV file does not match the documented format."""


class DeembedError(ValueError):
    """De-embedding would divide by a vanishing back-to-back sample."""


@dataclass(frozen=True)
class RigSignature:
    """Everything the rig imprints on a sweep besides the channel itself."""

    h_tx: ComplexTrace
    h_rx: ComplexTrace
    g_tx_dbi: float
    g_rx_dbi: float
    attenuator_db: float

    def __post_init__(self) -> None:
        require_same_grid(self.h_tx, self.h_rx)
        if self.attenuator_db < 0.0:
            raise ValueError("attenuator setting must be nonnegative dB")


def _gain_lin(dbi: float) -> float:
    return 10.0 ** (dbi / 20.0)


def compose_measured(h_channel: ComplexTrace, rig: RigSignature) -> ComplexTrace:
    """What the instrument records when the rig looks through ``h_channel``."""
    require_same_grid(h_channel, rig.h_tx)
    values = (rig.h_tx.values * _gain_lin(rig.g_tx_dbi) * h_channel.values
              * _gain_lin(rig.g_rx_dbi) * rig.h_rx.values)
    return ComplexTrace(h_channel.grid, values)


def compose_back_to_back(rig: RigSignature) -> ComplexTrace:
    """The rig's record with the antennas replaced by its flat attenuator."""
    h_a = 10.0 ** (-rig.attenuator_db / 20.0)
    return ComplexTrace(rig.h_tx.grid, rig.h_tx.values * h_a * rig.h_rx.values)


def deembed_channel(
    h_measured: ComplexTrace,
    h_back_to_back: ComplexTrace,
    attenuator_db: float,
    g_tx_dbi: float,
    g_rx_dbi: float,
) -> ComplexTrace:
    """Recover the over-the-air channel from the two recorded sweeps."""
    grid = require_same_grid(h_measured, h_back_to_back)
    bb = h_back_to_back.values
    tiny = np.abs(bb) < 1e-15
    if np.any(tiny):
        idx = int(np.argmax(tiny))
        raise DeembedError("back-to-back trace vanishes at sample %d; cannot divide" % idx)
    h_a = 10.0 ** (-attenuator_db / 20.0)
    values = h_measured.values * h_a / (bb * _gain_lin(g_tx_dbi) * _gain_lin(g_rx_dbi))
    return ComplexTrace(grid, values)


_HEADER_COLUMNS = "# freq_hz,re,im"
_HEADER_META = re.compile(
    r"^# center_hz=(?P<center>\S+) bandwidth_hz=(?P<bw>\S+) n_points=(?P<n>\d+)$")


def write_sweep(trace: ComplexTrace, path: str | Path) -> None:
    """Write a trace as CSV, atomically, with full float precision.

    Two comment lines lead: the column names, then the grid metadata.
    Every float is rendered with repr so a read-back is bit-identical.
    """
    path = Path(path)
    grid = trace.grid
    lines = [_HEADER_COLUMNS,
             "# center_hz=%r bandwidth_hz=%r n_points=%d"
             % (grid.center_hz, grid.bandwidth_hz, grid.n_points)]
    for f, v in zip(grid.frequencies(), trace.values):
        lines.append("%r,%r,%r" % (float(f), float(v.real), float(v.imag)))
    payload = "\n".join(lines) + "\n"
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def read_sweep(path: str | Path) -> ComplexTrace:
    """Read a sweep CSV written by :func:`write_sweep`."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if len(lines) < 2 or lines[0].strip() != _HEADER_COLUMNS:
        raise SweepFormatError("missing '%s' header line" % _HEADER_COLUMNS)
    meta = _HEADER_META.match(lines[1].strip())
    if meta is None:
        raise SweepFormatError("malformed metadata line: %r" % (lines[1],))
    grid = SweepGrid(center_hz=float(meta["center"]),
                     bandwidth_hz=float(meta["bw"]),
                     n_points=int(meta["n"]))
    rows = [ln for ln in lines[2:] if ln.strip()]
    if len(rows) != grid.n_points:
        raise SweepFormatError("declared n_points=%d but found %d rows"
                               % (grid.n_points, len(rows)))
    freqs = np.empty(grid.n_points)
    values = np.empty(grid.n_points, dtype=np.complex128)
    for i, row in enumerate(rows):
        parts = row.split(",")
        if len(parts) != 3:
            raise SweepFormatError("row %d has %d fields, expected 3" % (i, len(parts)))
        try:
            freqs[i] = float(parts[0])
            values[i] = complex(float(parts[1]), float(parts[2]))
        except ValueError:
            raise SweepFormatError("row %d is not numeric: %r" % (i, row)) from None
    if np.any(np.diff(freqs) <= 0.0):
        raise SweepFormatError("frequencies must increase strictly")
    return ComplexTrace(grid, values)


__all__ = [
    "DeembedError",
    "RigSignature",
    "SweepFormatError",
    "compose_back_to_back",
    "compose_measured",
    "deembed_channel",
    "read_sweep",
    "write_sweep",
]

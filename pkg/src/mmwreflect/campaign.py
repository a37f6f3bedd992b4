"""Scenario configuration and the 16-position coverage comparison.

A campaign walks the transmitter down the corridor axis in fixed steps,
anchored so the last index sits at the far stop the panel is aimed at,
and simulates each position twice: once with the corner panel installed
and once without.  The per-position difference of the two band-averaged
path losses is the improvement the panel buys.

Both arms share the same receiver aim by default (boresight on the panel
center), so a panel whose material reflects nothing changes strictly
nothing and the improvement collapses to exactly zero; aiming the bare
corridor's horn at the corner instead is available as a config option.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .channel import SweepGrid, path_loss_db, synthesize_frequency_response
from .geometry import (
    AngleSolution,
    CorridorLayout,
    Point2,
    panel_from_alpha,
    solve_reflector_orientation,
)
from .propagation import AntennaPattern, Material, default_materials, path_amplitude
from .raytrace import Environment, RayPath, enumerate_paths, los_blocked

CONFIG_SCHEMA = 1


def _default_tx_pattern() -> AntennaPattern:
    return AntennaPattern.omni(2.0)


def _default_rx_pattern() -> AntennaPattern:
    return AntennaPattern.horn(22.5, 13.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully specified measurement scenario.

    ``panel_length_m`` and ``antenna_height_m`` are bookkeeping only: the
    model is a 2D floor plan at antenna height, and the panel's vertical
    extent never enters the math.
    """

    layout: CorridorLayout = field(default_factory=CorridorLayout.default)
    panel_width_m: float = 0.595
    panel_length_m: float = 0.982
    panel_material: str = "metal"
    tx_count: int = 16
    tx_step_m: float = 0.25
    tx_axis_x_m: float | None = None
    rx_position: Point2 | None = None
    tx_pattern: AntennaPattern = field(default_factory=_default_tx_pattern)
    rx_pattern: AntennaPattern = field(default_factory=_default_rx_pattern)
    sweep: SweepGrid = field(default_factory=SweepGrid.default)
    noise_floor_db: float | None = 108.0
    max_order: int = 2
    antenna_height_m: float = 1.37
    no_panel_rx_aim: str = "match"
    materials: tuple[Material, ...] = ()

    def __post_init__(self) -> None:
        if self.tx_count < 1:
            raise ValueError("tx_count must be at least 1, got %r" % (self.tx_count,))
        if self.tx_step_m <= 0.0:
            raise ValueError("tx_step_m must be positive, got %r" % (self.tx_step_m,))
        if self.no_panel_rx_aim not in ("match", "corner"):
            raise ValueError("no_panel_rx_aim must be 'match' or 'corner', got %r"
                             % (self.no_panel_rx_aim,))
        if self.panel_width_m <= 0.0:
            raise ValueError("panel_width_m must be positive, got %r" % (self.panel_width_m,))

    @property
    def tx_axis_x(self) -> float:
        return self.layout.l_T / 2.0 if self.tx_axis_x_m is None else self.tx_axis_x_m

    @property
    def rx(self) -> Point2:
        if self.rx_position is not None:
            return self.rx_position
        return Point2(self.layout.L_R, self.layout.l_R / 2.0)

    def material_registry(self) -> dict[str, Material]:
        table = dict(default_materials())
        for mat in self.materials:
            table[mat.id] = mat
        return table

    def to_dict(self) -> dict:
        d: dict = {
            "schema": CONFIG_SCHEMA,
            "layout": self.layout.to_dict(),
            "panel": {
                "width_m": self.panel_width_m,
                "length_m": self.panel_length_m,
                "material": self.panel_material,
            },
            "tx": {
                "count": self.tx_count,
                "step_m": self.tx_step_m,
                "axis_x_m": self.tx_axis_x_m,
                "pattern": _pattern_to_dict(self.tx_pattern),
            },
            "rx": {
                "position": None if self.rx_position is None
                else [self.rx_position.x, self.rx_position.y],
                "pattern": _pattern_to_dict(self.rx_pattern),
                "no_panel_aim": self.no_panel_rx_aim,
            },
            "sweep": {
                "center_hz": self.sweep.center_hz,
                "bandwidth_hz": self.sweep.bandwidth_hz,
                "n_points": self.sweep.n_points,
            },
            "noise_floor_db": self.noise_floor_db,
            "max_order": self.max_order,
            "antenna_height_m": self.antenna_height_m,
        }
        if self.materials:
            d["materials"] = [
                {"id": m.id, "name": m.name,
                 "reflection_amplitude": m.reflection_amplitude, "source": m.source}
                for m in self.materials
            ]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        if not isinstance(d, dict):
            raise ValueError("scenario config must be a JSON object")
        schema = d.get("schema", CONFIG_SCHEMA)
        if schema != CONFIG_SCHEMA:
            raise ValueError("unsupported config schema %r (this build reads schema %d)"
                             % (schema, CONFIG_SCHEMA))
        base = cls()
        kwargs: dict = {}
        if "layout" in d:
            kwargs["layout"] = CorridorLayout.from_dict(d["layout"])
        panel = d.get("panel", {})
        if "width_m" in panel:
            kwargs["panel_width_m"] = float(panel["width_m"])
        if "length_m" in panel:
            kwargs["panel_length_m"] = float(panel["length_m"])
        if "material" in panel:
            kwargs["panel_material"] = str(panel["material"])
        tx = d.get("tx", {})
        if "count" in tx:
            kwargs["tx_count"] = int(tx["count"])
        if "step_m" in tx:
            kwargs["tx_step_m"] = float(tx["step_m"])
        if tx.get("axis_x_m") is not None:
            kwargs["tx_axis_x_m"] = float(tx["axis_x_m"])
        if "pattern" in tx:
            kwargs["tx_pattern"] = _pattern_from_dict(tx["pattern"])
        rx = d.get("rx", {})
        if rx.get("position") is not None:
            pos = rx["position"]
            kwargs["rx_position"] = Point2(float(pos[0]), float(pos[1]))
        if "pattern" in rx:
            kwargs["rx_pattern"] = _pattern_from_dict(rx["pattern"])
        if "no_panel_aim" in rx:
            kwargs["no_panel_rx_aim"] = str(rx["no_panel_aim"])
        if "sweep" in d:
            s = d["sweep"]
            kwargs["sweep"] = SweepGrid(center_hz=float(s["center_hz"]),
                                        bandwidth_hz=float(s["bandwidth_hz"]),
                                        n_points=int(s["n_points"]))
        if "noise_floor_db" in d:
            floor = d["noise_floor_db"]
            kwargs["noise_floor_db"] = None if floor is None else float(floor)
        if "max_order" in d:
            kwargs["max_order"] = int(d["max_order"])
        if "antenna_height_m" in d:
            kwargs["antenna_height_m"] = float(d["antenna_height_m"])
        if "materials" in d:
            kwargs["materials"] = tuple(Material(**m) for m in d["materials"])
        return replace(base, **kwargs)


def _pattern_to_dict(p: AntennaPattern) -> dict:
    d: dict = {"kind": p.kind, "peak_gain_dbi": p.peak_gain_dbi}
    if p.kind == "horn":
        d["azimuth_hpbw_deg"] = p.azimuth_hpbw_deg
    return d


def _pattern_from_dict(d: dict) -> AntennaPattern:
    kind = d.get("kind")
    if kind == "omni":
        return AntennaPattern.omni(float(d["peak_gain_dbi"]))
    if kind == "horn":
        return AntennaPattern.horn(float(d["peak_gain_dbi"]), float(d["azimuth_hpbw_deg"]))
    raise ValueError("antenna pattern kind must be 'omni' or 'horn', got %r" % (kind,))


def load_config(path: str | Path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return ScenarioConfig.from_dict(json.load(fh))


def save_config(config: ScenarioConfig, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def tx_positions(config: ScenarioConfig) -> list[Point2]:
    """Transmitter stops 1..tx_count, anchored so the last sits farthest out.

    Position k is (axis_x, y_far - (tx_count - k) * step), so successive
    indices walk away from the corner toward the far stop.
    """
    x = config.tx_axis_x
    y_far = config.layout.L_T + config.layout.l_R
    out: list[Point2] = []
    for k in range(1, config.tx_count + 1):
        p = Point2(x, y_far - (config.tx_count - k) * config.tx_step_m)
        if not config.layout.contains(p):
            raise ValueError("tx position %d at (%g, %g) falls outside the corridor"
                             % (k, p.x, p.y))
        out.append(p)
    return out


@dataclass(frozen=True)
class PositionResult:
    """Both arms of the comparison at one transmitter stop."""

    index: int
    tx: Point2
    los: bool
    pl_without_db: float
    pl_with_db: float
    improvement_db: float
    paths_without: tuple[RayPath, ...]
    paths_with: tuple[RayPath, ...]


@dataclass(frozen=True)
class CampaignResult:
    config: ScenarioConfig
    angles: AngleSolution
    records: tuple[PositionResult, ...]


@dataclass(frozen=True)
class ImprovementCurve:
    """Per-position improvement plus where it peaks."""

    points: tuple[tuple[int, float], ...]
    argmax_index: int
    max_improvement_db: float


def run_campaign(config: ScenarioConfig) -> CampaignResult:
    """Simulate every transmitter stop with and without the panel."""
    solution = solve_reflector_orientation(config.layout, config.panel_width_m)
    env_with = Environment(config.layout, solution.panel, config.panel_material)
    env_without = Environment(config.layout, None)
    registry = config.material_registry()
    rx = config.rx

    rx_with = config.rx_pattern.aimed_at(rx, solution.panel.center)
    if config.no_panel_rx_aim == "match":
        rx_without = rx_with
    else:
        rx_without = config.rx_pattern.aimed_at(rx, Point2(0.0, 0.0))

    records: list[PositionResult] = []
    for index, tx in enumerate(tx_positions(config), start=1):
        paths_with = enumerate_paths(tx, rx, env_with, config.max_order)
        paths_without = enumerate_paths(tx, rx, env_without, config.max_order)
        trace_with = synthesize_frequency_response(
            paths_with, config.sweep, config.tx_pattern, rx_with, registry)
        trace_without = synthesize_frequency_response(
            paths_without, config.sweep, config.tx_pattern, rx_without, registry)
        pl_with = path_loss_db(trace_with, config.noise_floor_db)
        pl_without = path_loss_db(trace_without, config.noise_floor_db)
        records.append(PositionResult(
            index=index,
            tx=tx,
            los=not los_blocked(tx, rx, env_without),
            pl_without_db=pl_without,
            pl_with_db=pl_with,
            improvement_db=pl_without - pl_with,
            paths_without=tuple(paths_without),
            paths_with=tuple(paths_with),
        ))
    return CampaignResult(config=config, angles=solution, records=tuple(records))


def simulate_position(
    config: ScenarioConfig,
    tx: Point2 | None = None,
    tx_index: int | None = None,
    panel_enabled: bool = True,
    alpha_rad: float | None = None,
) -> dict:
    """Single-position simulation report, shared by the CLI and the HTTP API.

    The transmitter comes either from an explicit point or a 1-based
    campaign index.  ``alpha_rad`` rotates the panel away from the solved
    tilt; the solved angles are always reported alongside the tilt used.
    """
    if (tx is None) == (tx_index is None):
        raise ValueError("give exactly one of tx or tx_index")
    if tx_index is not None:
        positions = tx_positions(config)
        if not 1 <= tx_index <= len(positions):
            raise ValueError("tx_index %d outside 1..%d" % (tx_index, len(positions)))
        tx = positions[tx_index - 1]
    assert tx is not None

    solution = solve_reflector_orientation(config.layout, config.panel_width_m)
    alpha_used = solution.alpha if alpha_rad is None else alpha_rad
    panel = panel_from_alpha(alpha_used, config.panel_width_m)
    env = Environment(config.layout, panel if panel_enabled else None, config.panel_material)
    registry = config.material_registry()

    rx = config.rx
    if panel_enabled or config.no_panel_rx_aim == "match":
        rx_pattern = config.rx_pattern.aimed_at(rx, panel.center)
    else:
        rx_pattern = config.rx_pattern.aimed_at(rx, Point2(0.0, 0.0))

    paths = enumerate_paths(tx, rx, env, config.max_order)
    trace = synthesize_frequency_response(paths, config.sweep, config.tx_pattern,
                                          rx_pattern, registry)
    loss = path_loss_db(trace, config.noise_floor_db)

    center = config.sweep.center_hz
    path_dicts = []
    for p in paths:
        amp = abs(path_amplitude(p, center, config.tx_pattern, rx_pattern, registry))
        d = p.to_dict()
        d["gain_db"] = None if amp == 0.0 else 20.0 * math.log10(amp)
        path_dicts.append(d)

    return {
        "schema": CONFIG_SCHEMA,
        "tx": [tx.x, tx.y],
        "rx": [rx.x, rx.y],
        "panel_enabled": panel_enabled,
        "alpha_used_deg": math.degrees(alpha_used),
        "angles": angles_to_dict(solution),
        "panel": {
            "width_m": panel.width_a,
            "end_on_x": [panel.end_on_x.x, panel.end_on_x.y],
            "end_on_y": [panel.end_on_y.x, panel.end_on_y.y],
            "center": [panel.center.x, panel.center.y],
        },
        "los": not los_blocked(tx, rx, env),
        "path_loss_db": _maybe(loss),
        "n_paths": len(paths),
        "paths": path_dicts,
        "sweep": {"center_hz": config.sweep.center_hz,
                  "bandwidth_hz": config.sweep.bandwidth_hz,
                  "n_points": config.sweep.n_points},
        "noise_floor_db": config.noise_floor_db,
    }


def improvement_curve(result: CampaignResult) -> ImprovementCurve:
    points = tuple((r.index, r.improvement_db) for r in result.records)
    best = max(result.records, key=lambda r: r.improvement_db)
    return ImprovementCurve(points=points, argmax_index=best.index,
                            max_improvement_db=best.improvement_db)


def _fmt(value: float) -> str:
    return "below_measurable" if not math.isfinite(value) else repr(value)


def campaign_to_csv(result: CampaignResult) -> str:
    """Per-position summary table, deterministic byte for byte."""
    lines = ["index,tx_x_m,tx_y_m,los,n_paths_without,n_paths_with,"
             "pl_without_db,pl_with_db,improvement_db"]
    for r in result.records:
        lines.append(",".join([
            str(r.index), repr(r.tx.x), repr(r.tx.y),
            "1" if r.los else "0",
            str(len(r.paths_without)), str(len(r.paths_with)),
            _fmt(r.pl_without_db), _fmt(r.pl_with_db), _fmt(r.improvement_db),
        ]))
    return "\n".join(lines) + "\n"


def angles_to_dict(angles: AngleSolution) -> dict:
    panel = angles.panel
    return {
        "alpha_deg": math.degrees(angles.alpha),
        "beta_deg": math.degrees(angles.beta),
        "gamma_deg": math.degrees(angles.gamma),
        "residual_rad": angles.residual,
        "panel": {
            "width_m": panel.width_a,
            "end_on_x": [panel.end_on_x.x, panel.end_on_x.y],
            "end_on_y": [panel.end_on_y.x, panel.end_on_y.y],
            "center": [panel.center.x, panel.center.y],
        },
    }


def _maybe(value: float) -> float | None:
    return None if not math.isfinite(value) else value


def campaign_to_dict(result: CampaignResult) -> dict:
    """Full campaign detail for JSON output, including per-path breakdowns."""
    curve = improvement_curve(result)
    return {
        "schema": CONFIG_SCHEMA,
        "config": result.config.to_dict(),
        "angles": angles_to_dict(result.angles),
        "rx": [result.config.rx.x, result.config.rx.y],
        "improvement_argmax": {
            "index": curve.argmax_index,
            "improvement_db": _maybe(curve.max_improvement_db),
        },
        "records": [
            {
                "index": r.index,
                "tx": [r.tx.x, r.tx.y],
                "los": r.los,
                "pl_without_db": _maybe(r.pl_without_db),
                "pl_with_db": _maybe(r.pl_with_db),
                "improvement_db": _maybe(r.improvement_db),
                "paths_without": [p.to_dict() for p in r.paths_without],
                "paths_with": [p.to_dict() for p in r.paths_with],
            }
            for r in result.records
        ],
    }


def campaign_to_json(result: CampaignResult) -> str:
    return json.dumps(campaign_to_dict(result), indent=2, sort_keys=True) + "\n"


__all__ = [
    "CONFIG_SCHEMA",
    "CampaignResult",
    "ImprovementCurve",
    "PositionResult",
    "ScenarioConfig",
    "angles_to_dict",
    "campaign_to_csv",
    "campaign_to_dict",
    "campaign_to_json",
    "improvement_curve",
    "load_config",
    "run_campaign",
    "save_config",
    "simulate_position",
    "tx_positions",
]

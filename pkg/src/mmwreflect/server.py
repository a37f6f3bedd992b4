"""JSON HTTP API over the planner, one route per CLI verb plus a coverage map.

All endpoints speak meters and degrees.  Request bodies are plain JSON
objects; a missing or partial "config" falls back to the defaults, so an
empty body reproduces the reference scenario.  Binds to loopback unless
told otherwise.
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .campaign import (
    ScenarioConfig,
    angles_to_dict,
    campaign_to_dict,
    run_campaign,
    simulate_position,
)
from .channel import path_loss_db, synthesize_frequency_response
from .geometry import (
    CorridorLayout,
    GeometryError,
    Point2,
    panel_from_alpha,
    solve_reflector_orientation,
)
from .raytrace import Environment, OutsideCorridorError, enumerate_paths


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


def _config_from(payload: dict) -> ScenarioConfig:
    raw = payload.get("config")
    if raw is None:
        return ScenarioConfig()
    return ScenarioConfig.from_dict(raw)


def _alpha_from(payload: dict) -> float | None:
    deg = payload.get("alpha_override_deg")
    return None if deg is None else math.radians(float(deg))


def create_app(default_config: ScenarioConfig | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    """Build the API application; ``ui_dir`` optionally serves a static frontend."""
    app = FastAPI(title="mmwreflect", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    base = default_config if default_config is not None else ScenarioConfig()

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "name": "mmwreflect", "version": "0.1.0"}

    @app.get("/api/default-config")
    def default_config_route() -> dict:
        return base.to_dict()

    @app.post("/api/solve-orientation")
    def solve_route(payload: dict = Body(default={})) -> dict:
        try:
            layout = (CorridorLayout.from_dict(payload["layout"])
                      if "layout" in payload else base.layout)
            width = float(payload.get("width_m", base.panel_width_m))
            solution = solve_reflector_orientation(layout, width)
        except (GeometryError, ValueError, KeyError, TypeError) as exc:
            raise _bad_request(exc) from exc
        out = angles_to_dict(solution)
        out["layout"] = layout.to_dict()
        return out

    @app.post("/api/simulate")
    def simulate_route(payload: dict = Body(default={})) -> dict:
        try:
            config = _config_from(payload)
            tx = payload.get("tx")
            tx_point = None if tx is None else Point2(float(tx[0]), float(tx[1]))
            tx_index = payload.get("tx_index")
            return simulate_position(
                config,
                tx=tx_point,
                tx_index=None if tx_index is None else int(tx_index),
                panel_enabled=bool(payload.get("panel_enabled", True)),
                alpha_rad=_alpha_from(payload),
            )
        except (ValueError, KeyError, TypeError, IndexError, OutsideCorridorError) as exc:
            raise _bad_request(exc) from exc

    @app.post("/api/campaign")
    def campaign_route(payload: dict = Body(default={})) -> dict:
        try:
            config = _config_from(payload)
            result = run_campaign(config)
        except (ValueError, KeyError, TypeError) as exc:
            raise _bad_request(exc) from exc
        out = campaign_to_dict(result)
        if not payload.get("include_paths", False):
            for record in out["records"]:
                record.pop("paths_without")
                record.pop("paths_with")
        return out

    @app.post("/api/coverage")
    def coverage_route(payload: dict = Body(default={})) -> dict:
        try:
            config = _config_from(payload)
            panel_enabled = bool(payload.get("panel_enabled", True))
            step = float(payload.get("step_m", 0.25))
            if not 0.02 <= step <= 2.0:
                raise ValueError("step_m must lie in [0.02, 2.0]")
            alpha = _alpha_from(payload)

            solution = solve_reflector_orientation(config.layout, config.panel_width_m)
            alpha_used = solution.alpha if alpha is None else alpha
            panel = panel_from_alpha(alpha_used, config.panel_width_m)
            env = Environment(config.layout,
                              panel if panel_enabled else None,
                              config.panel_material)
            registry = config.material_registry()
            rx = config.rx
            if panel_enabled or config.no_panel_rx_aim == "match":
                rx_pattern = config.rx_pattern.aimed_at(rx, panel.center)
            else:
                rx_pattern = config.rx_pattern.aimed_at(rx, Point2(0.0, 0.0))

            layout = config.layout
            nx = int(layout.L_R / step)
            ny = int((layout.L_T + layout.l_R) / step)
            xs = [(i + 0.5) * step for i in range(nx)]
            ys = [(j + 0.5) * step for j in range(ny)]
            grid: list[list[float | None]] = []
            for y in ys:
                row: list[float | None] = []
                for x in xs:
                    probe = Point2(x, y)
                    if not layout.contains(probe):
                        row.append(None)
                        continue
                    paths = enumerate_paths(probe, rx, env, config.max_order)
                    trace = synthesize_frequency_response(
                        paths, config.sweep, config.tx_pattern, rx_pattern, registry)
                    loss = path_loss_db(trace, config.noise_floor_db)
                    row.append(None if not math.isfinite(loss) else loss)
                grid.append(row)
        except (ValueError, KeyError, TypeError, OutsideCorridorError) as exc:
            raise _bad_request(exc) from exc
        return {
            "xs": xs,
            "ys": ys,
            "pl_db": grid,
            "panel_enabled": panel_enabled,
            "alpha_used_deg": math.degrees(alpha_used),
            "angles": angles_to_dict(solution),
            "rx": [rx.x, rx.y],
            "noise_floor_db": config.noise_floor_db,
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


__all__ = ["create_app"]

"""Command line front end: solve, simulate, campaign, calibrate, serve."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .calibration import deembed_channel, read_sweep, write_sweep
from .campaign import (
    ScenarioConfig,
    angles_to_dict,
    campaign_to_csv,
    campaign_to_json,
    improvement_curve,
    load_config,
    run_campaign,
    save_config,
    simulate_position,
)
from .geometry import Point2, load_layout, solve_reflector_orientation


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_scenario(path: str | None) -> ScenarioConfig:
    return ScenarioConfig() if path is None else load_config(path)


def _cmd_solve(args: argparse.Namespace) -> int:
    layout = ScenarioConfig().layout if args.layout is None else load_layout(args.layout)
    solution = solve_reflector_orientation(layout, args.width_m)
    doc = angles_to_dict(solution)
    doc["layout"] = layout.to_dict()
    _emit(doc, args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_scenario(args.config)
    tx = None
    if args.tx is not None:
        try:
            x, y = (float(v) for v in args.tx.split(","))
        except ValueError:
            raise SystemExit("--tx expects 'x,y' in meters, got %r" % args.tx)
        tx = Point2(x, y)
    doc = simulate_position(
        config,
        tx=tx,
        tx_index=args.tx_index,
        panel_enabled=not args.no_panel,
        alpha_rad=None if args.alpha_deg is None else math.radians(args.alpha_deg),
    )
    _emit(doc, args.out)
    return 0


def _cmd_campaign(args: argparse.Namespace) -> int:
    config = _load_scenario(args.config)
    result = run_campaign(config)
    if args.csv:
        Path(args.csv).write_text(campaign_to_csv(result), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(campaign_to_json(result), encoding="utf-8")
    if not args.quiet:
        curve = improvement_curve(result)
        sys.stdout.write("index   tx(m)          los  pl_without  pl_with  improvement\n")
        for r in result.records:
            sys.stdout.write(
                "%5d   (%.2f, %.2f)   %s  %10.2f  %7.2f  %11.2f\n"
                % (r.index, r.tx.x, r.tx.y, "yes" if r.los else " no",
                   r.pl_without_db, r.pl_with_db, r.improvement_db))
        sys.stdout.write("best improvement: %.2f dB at position %d\n"
                         % (curve.max_improvement_db, curve.argmax_index))
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    measured = read_sweep(args.measured)
    back_to_back = read_sweep(args.back_to_back)
    channel = deembed_channel(measured, back_to_back,
                              attenuator_db=args.attenuator_db,
                              g_tx_dbi=args.gtx_dbi,
                              g_rx_dbi=args.grx_dbi)
    write_sweep(channel, args.out)
    sys.stdout.write("wrote de-embedded channel to %s\n" % args.out)
    return 0


def _cmd_init_config(args: argparse.Namespace) -> int:
    save_config(ScenarioConfig(), args.out)
    sys.stdout.write("wrote default scenario to %s\n" % args.out)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    config = _load_scenario(args.config)
    app = create_app(config, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwreflect",
        description="Plan a passive corner reflector for 60 GHz corridor coverage.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the panel tilt for a layout")
    p.add_argument("--layout", help="layout JSON file (default: built-in corridor)")
    p.add_argument("--width-m", type=float, default=0.595, help="panel width in meters")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("simulate", help="simulate one transmitter position")
    p.add_argument("--config", help="scenario JSON file (default scenario if omitted)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tx-index", type=int, help="campaign position, 1-based")
    group.add_argument("--tx", help="explicit position as 'x,y' in meters")
    p.add_argument("--no-panel", action="store_true", help="simulate the bare corridor")
    p.add_argument("--alpha-deg", type=float, help="override the solved panel tilt")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("campaign", help="run the with/without comparison over all positions")
    p.add_argument("--config", help="scenario JSON file (default scenario if omitted)")
    p.add_argument("--csv", help="write the per-position table here")
    p.add_argument("--json", help="write the full result document here")
    p.add_argument("--quiet", action="store_true", help="suppress the stdout table")
    p.set_defaults(func=_cmd_campaign)

    p = sub.add_parser("calibrate", help="de-embed the rig from a measured sweep")
    p.add_argument("--measured", required=True, help="through-the-air sweep CSV")
    p.add_argument("--back-to-back", required=True, help="attenuator reference sweep CSV")
    p.add_argument("--attenuator-db", type=float, default=40.0)
    p.add_argument("--gtx-dbi", type=float, default=2.0)
    p.add_argument("--grx-dbi", type=float, default=22.5)
    p.add_argument("--out", required=True, help="de-embedded channel sweep CSV")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("init-config", help="write the default scenario JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_init_config)

    p = sub.add_parser("serve", help="serve the JSON API (loopback by default)")
    p.add_argument("--config", help="scenario JSON file used as the API default")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui-dir", help="serve a built frontend from this directory")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface: layout generation, replay, simulation, evaluation, serving.

Exit codes: 0 ok, 1 data error (malformed input files, replay failures),
2 usage or invariant error.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from fbt.harness import (
    DEFAULT_NUMBERS,
    HarnessError,
    LatencySpec,
    NoiseModel,
    evaluate,
    load_trace,
    save_trace,
    simulate,
    write_report,
    write_results_csv,
)
from fbt.keys import EntryMode
from fbt.layout import (
    AnchorSet,
    LayoutError,
    ScreenGeometry,
    build_layout,
    load_layout,
    mirror,
    save_layout,
    with_mode,
)

USAGE_ERROR = 2
DATA_ERROR = 1


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_config(path: str | None, known_keys: set[str]) -> dict:
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config {path}: {exc}", DATA_ERROR)
    if not isinstance(doc, dict):
        raise CliError(f"config {path} must be a JSON object", DATA_ERROR)
    unknown = set(doc) - known_keys
    if unknown:
        raise CliError(f"unknown config keys: {', '.join(sorted(unknown))}", USAGE_ERROR)
    return doc


def _effective(args: argparse.Namespace, config: dict, defaults: dict) -> dict:
    """Merge flag > config > default for every known option."""
    merged = {}
    for key, default in defaults.items():
        flag = getattr(args, key, None)
        merged[key] = flag if flag is not None else config.get(key, default)
    return merged


def _parse_mode(text: str) -> EntryMode:
    try:
        return EntryMode(text)
    except ValueError:
        raise CliError(f"mode must be 'single' or 'double', got {text!r}", USAGE_ERROR)


def _load_layout_file(path: str):
    try:
        return load_layout(path)
    except LayoutError as exc:
        raise CliError(f"{path}: {exc}", DATA_ERROR)


# --- subcommands -------------------------------------------------------------

LAYOUT_DEFAULTS = {
    "width": 480.0,
    "height": 800.0,
    "mode": "single",
    "inset": None,
    "margin": None,
    "radius": None,
    "anchor_index": 0.25,
    "anchor_middle": 0.40,
    "anchor_ring": 0.55,
    "anchor_little": 0.70,
    "anchor_thumb": 0.45,
    "mirror": False,
    "out": "layout.json",
}


def cmd_layout(args: argparse.Namespace) -> int:
    config = _load_config(args.config, set(LAYOUT_DEFAULTS))
    opt = _effective(args, config, LAYOUT_DEFAULTS)
    mode = _parse_mode(opt["mode"])
    try:
        geometry = ScreenGeometry(width=float(opt["width"]), height=float(opt["height"]))
        w, h = geometry.width, geometry.height
        anchors = AnchorSet(
            index=(w, float(opt["anchor_index"]) * h),
            middle=(w, float(opt["anchor_middle"]) * h),
            ring=(w, float(opt["anchor_ring"]) * h),
            little=(w, float(opt["anchor_little"]) * h),
            thumb=(0.0, float(opt["anchor_thumb"]) * h),
        )
        layout = build_layout(
            geometry,
            mode,
            anchors=anchors,
            inset=None if opt["inset"] is None else float(opt["inset"]),
            margin=None if opt["margin"] is None else float(opt["margin"]),
            activation_radius=None if opt["radius"] is None else float(opt["radius"]),
        )
        if opt["mirror"]:
            layout = mirror(layout)
    except (LayoutError, ValueError) as exc:
        raise CliError(str(exc), USAGE_ERROR)
    save_layout(layout, opt["out"])
    print(f"wrote {opt['out']}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    layout = _load_layout_file(args.layout)
    try:
        session = load_trace(args.trace, layout)
        write_results_csv([session], args.out)
    except HarnessError as exc:
        raise CliError(str(exc), DATA_ERROR)
    print(f"wrote {args.out}")
    return 0


SIMULATE_DEFAULTS = {
    "participants": 7,
    "trials": 8,
    "seed": 0,
    "technique": "both",
    "numbers": None,
    "tap_sigma": None,
    "tap_latency": None,
    "tap_latency_sigma": None,
    "decision_latency": None,
    "decision_latency_sigma": None,
    "out_dir": "traces",
}


def _noise_from_options(opt: dict) -> NoiseModel:
    base = NoiseModel(seed=int(opt["seed"]))
    tap_latency = LatencySpec(
        base.tap_latency.median_ms if opt["tap_latency"] is None else float(opt["tap_latency"]),
        base.tap_latency.sigma if opt["tap_latency_sigma"] is None else float(opt["tap_latency_sigma"]),
    )
    decision_latency = LatencySpec(
        base.decision_latency.median_ms if opt["decision_latency"] is None else float(opt["decision_latency"]),
        base.decision_latency.sigma if opt["decision_latency_sigma"] is None else float(opt["decision_latency_sigma"]),
    )
    return NoiseModel(
        tap_sigma=base.tap_sigma if opt["tap_sigma"] is None else float(opt["tap_sigma"]),
        tap_latency=tap_latency,
        decision_latency=decision_latency,
        seed=int(opt["seed"]),
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_config(args.config, set(SIMULATE_DEFAULTS) | {"layout"})
    opt = _effective(args, config, SIMULATE_DEFAULTS)
    layout = _load_layout_file(args.layout)
    noise = _noise_from_options(opt)
    numbers = DEFAULT_NUMBERS if opt["numbers"] is None else tuple(opt["numbers"].split(","))

    if opt["technique"] == "both":
        techniques = [EntryMode.SINGLE_DIGIT, EntryMode.DOUBLE_DIGIT]
    else:
        techniques = [_parse_mode(opt["technique"])]

    out_dir = Path(opt["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for technique in techniques:
        mode_layout = with_mode(layout, technique)
        try:
            sessions = simulate(
                participants=int(opt["participants"]),
                trials_per_participant=int(opt["trials"]),
                noise=noise,
                technique=technique,
                layout=mode_layout,
                numbers=numbers,
            )
        except ValueError as exc:
            raise CliError(str(exc), USAGE_ERROR)
        for session in sessions:
            path = out_dir / f"{session.participant_id}_{technique.value}.json"
            save_trace(session, path, layout_ref=str(args.layout))
            written.append(path)
    print(f"wrote {len(written)} trace files to {out_dir}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    layout = _load_layout_file(args.layout)
    trace_paths: list[Path] = []
    for entry in args.traces:
        p = Path(entry)
        if p.is_dir():
            trace_paths.extend(sorted(p.glob("*.json")))
        else:
            trace_paths.append(p)
    if not trace_paths:
        raise CliError("no trace files given", USAGE_ERROR)

    sessions = []
    for path in trace_paths:
        try:
            doc = json.loads(path.read_text())
            technique = EntryMode(doc.get("technique", layout.mode.value))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise CliError(f"{path}: {exc}", DATA_ERROR)
        try:
            sessions.append(load_trace(path, with_mode(layout, technique)))
        except HarnessError as exc:
            raise CliError(f"{path}: {exc}", DATA_ERROR)

    try:
        report = evaluate(sessions, include_incomplete=args.include_incomplete)
    except HarnessError as exc:
        raise CliError(str(exc), DATA_ERROR)
    write_report(report, args.report)
    print(f"wrote {args.report}")
    if args.csv:
        write_results_csv(sessions, args.csv)
        print(f"wrote {args.csv}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from fbt.service import create_app

    layout = _load_layout_file(args.layout)
    static_dir = args.static
    if static_dir is None:
        default_bundle = Path("frontend/dist")
        if default_bundle.is_dir():
            static_dir = str(default_bundle)

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}", DATA_ERROR)
    host, port = sock.getsockname()[:2]
    print(f"serving on http://{host}:{port}", flush=True)

    app = create_app(layout, static_dir=static_dir)
    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    server.run(sockets=[sock])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fbt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="derive and write a layout file")
    p.add_argument("--config")
    p.add_argument("--width", type=float)
    p.add_argument("--height", type=float)
    p.add_argument("--mode", choices=["single", "double"])
    p.add_argument("--inset", type=float)
    p.add_argument("--margin", type=float)
    p.add_argument("--radius", type=float, help="activation radius")
    for finger in ("index", "middle", "ring", "little", "thumb"):
        p.add_argument(f"--anchor-{finger}", type=float, dest=f"anchor_{finger}",
                       help=f"{finger} anchor height as a fraction of screen height")
    p.add_argument("--mirror", action="store_const", const=True, default=None,
                   help="reflect for a right-hand hold")
    p.add_argument("--out")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("replay", help="replay a trace file to a results CSV")
    p.add_argument("--trace", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_replay, config=None)

    p = sub.add_parser("simulate", help="generate synthetic sessions")
    p.add_argument("--config")
    p.add_argument("--layout", required=True)
    p.add_argument("--participants", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--technique", choices=["single", "double", "both"])
    p.add_argument("--numbers", help="comma-separated presented numbers")
    p.add_argument("--tap-sigma", type=float, dest="tap_sigma")
    p.add_argument("--tap-latency", type=float, dest="tap_latency")
    p.add_argument("--tap-latency-sigma", type=float, dest="tap_latency_sigma")
    p.add_argument("--decision-latency", type=float, dest="decision_latency")
    p.add_argument("--decision-latency-sigma", type=float, dest="decision_latency_sigma")
    p.add_argument("--out-dir", dest="out_dir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("evaluate", help="replay traces and write the evaluation report")
    p.add_argument("--layout", required=True)
    p.add_argument("--traces", nargs="+", required=True,
                   help="trace files or directories of trace files")
    p.add_argument("--report", required=True)
    p.add_argument("--csv")
    p.add_argument("--include-incomplete", action="store_true")
    p.set_defaults(func=cmd_evaluate, config=None)

    p = sub.add_parser("serve", help="serve the live-session websocket service")
    p.add_argument("--layout", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--static", help="static UI bundle directory")
    p.set_defaults(func=cmd_serve, config=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

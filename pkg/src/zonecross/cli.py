"""
Command-line interface: synth, detect, eval and export.

Exit codes: 0 success, 2 parse error, 3 invalid arguments, 4 pipeline error.
"""
import json
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from .config.logging import setup_logging
from .config.manager import ConfigManager
from .core.errors import InvalidArgumentError, TraceParseError, ZoneCrossError
from .core.geometry import Geometry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_PIPELINE = 4

console = Console(stderr=True)


def _snr(value: Optional[str]) -> Optional[float]:
    if value is None or value.lower() in ("none", "off", "inf"):
        return None
    try:
        snr = float(value)
    except ValueError as exc:
        raise click.BadParameter(f"not a number: {value}") from exc
    if not math.isfinite(snr):
        raise click.BadParameter("SNR must be finite or 'none'")
    return snr


@click.group()
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None,
              help="YAML configuration file (defaults to config/default_config.yaml).")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
@click.pass_context
def cli(ctx: click.Context, config_file: Optional[str], verbose: bool):
    """Doorway crossing detection from WiFi CSI."""
    if config_file and not Path(config_file).exists():
        raise InvalidArgumentError(f"Configuration file not found: {config_file}")
    config = ConfigManager(config_file)
    setup_logging("DEBUG" if verbose else config.get("output.log_level", "INFO"))
    ctx.obj = {"config": config}


@cli.command()
@click.option("--kind", type=click.Choice(["crossing", "turnback", "walkby"]), required=True)
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--los-distance", type=float, default=None, help="Tx-Rx distance in meters.")
@click.option("--offset", type=float, default=0.0, help="Position along the LoS from its midpoint (m).")
@click.option("--angle-deg", type=float, default=0.0, help="Direction relative to the LoS normal.")
@click.option("--nearest-approach", type=float, default=0.3, help="Turn-back closest distance (m).")
@click.option("--standoff", type=float, default=1.0, help="Walk-by distance from the LoS (m).")
@click.option("--side", type=click.Choice(["1", "-1"]), default="1", help="Walk-by side of the LoS.")
@click.option("--speed", type=float, default=None, help="Walking speed (m/s).")
@click.option("--body-len", type=float, default=None, help="Body segment length (m).")
@click.option("--lead-in", type=float, default=None, help="Parked seconds before walking.")
@click.option("--snr-db", type=str, default=None, help="Per-sample SNR in dB, or 'none'.")
@click.option("--drift", type=float, default=None, help="Common-phase step bound (rad/frame).")
@click.option("--seed", type=int, default=None)
@click.pass_context
def synth(ctx, kind, out_path, los_distance, offset, angle_deg, nearest_approach, standoff, side,
          speed, body_len, lead_in, snr_db, drift, seed):
    """Synthesize a trace for a scripted walk."""
    from .storage.tracefile import write_trace
    from .synth.config import SynthConfig
    from .synth.generator import synthesize_trace
    from .synth.trajectories import make_crossing, make_turnback, make_walkby

    config: ConfigManager = ctx.obj["config"]
    traj = config.get_section("trajectory")
    geometry = Geometry.doorway(
        los_distance if los_distance is not None else float(config.get("geometry.los_distance_m", 2.0)),
        float(config.get("geometry.carrier_hz", 5.24e9)),
        int(config.get("geometry.num_antennas", 3)),
    )
    motion = {
        "speed": speed if speed is not None else float(traj.get("speed_mps", 0.8)),
        "approach_dist": float(traj.get("approach_dist_m", 2.0)),
        "sample_rate_hz": float(config.get("synth.sample_rate_hz", 1000.0)),
        "body_len_m": body_len if body_len is not None else float(traj.get("body_len_m", 0.4)),
        "lead_in_s": lead_in if lead_in is not None else float(traj.get("lead_in_s", 1.0)),
    }
    if kind == "crossing":
        trajectory = make_crossing(geometry, offset, math.radians(angle_deg), **motion)
    elif kind == "turnback":
        trajectory = make_turnback(
            geometry,
            nearest_approach,
            approach_offset=offset,
            angle=math.radians(angle_deg),
            hesitations=int(traj.get("hesitations", 0)),
            hesitation_retreat_m=float(traj.get("hesitation_retreat_m", 0.8)),
            **motion,
        )
    else:
        trajectory = make_walkby(geometry, standoff, along_offset=offset, side=int(side), **motion)

    overrides = {}
    if snr_db is not None:
        overrides["noise_snr_db"] = _snr(snr_db)
    if drift is not None:
        overrides["phase_drift_per_frame_rad"] = drift
    if seed is not None:
        overrides["rng_seed"] = seed
    cfg = SynthConfig.from_config(config.get_section("synth"), **overrides)

    trace = synthesize_trace(
        geometry, trajectory, cfg, meta={"label": kind, "trace_id": Path(out_path).stem}
    )
    write_trace(trace, out_path)
    console.print(f"✅ Wrote {len(trace)} frames ({kind}) to {out_path}")


@cli.command(name="detect")
@click.argument("trace_path", type=click.Path(dir_okay=False))
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Detection log (JSON Lines); stdout when omitted.")
@click.pass_context
def detect_cmd(ctx, trace_path, out_path):
    """Run crossing detection on a trace file."""
    from .detect.detector import DetectorParams, detect
    from .storage.tracefile import read_trace, write_jsonl

    config: ConfigManager = ctx.obj["config"]
    trace = read_trace(_existing(trace_path))
    trace_id = trace.trace_id or Path(trace_path).stem
    detections = detect(trace, DetectorParams.from_config(config))
    records = [d.to_record(trace_id) for d in detections]

    if out_path:
        write_jsonl(records, out_path)
    else:
        for record in records:
            click.echo(json.dumps(record, sort_keys=True))

    table = Table(title=f"Detections in {trace_id}")
    for name in ("segment", "label", "maxima", "minima"):
        table.add_column(name)
    for d in detections:
        table.add_row(
            f"[{d.segment.start_idx}, {d.segment.end_idx}]",
            d.label.value,
            str(len(d.pattern.maxima)),
            str(len(d.pattern.minima)),
        )
    console.print(table)
    crossings = sum(d.binary for d in detections)
    console.print(f"📊 {len(detections)} segment(s), {crossings} crossing(s)")


@cli.command(name="eval")
@click.argument("suite_path", type=click.Path(dir_okay=False))
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None)
@click.option("--trials", "trials_path", type=click.Path(dir_okay=False), default=None)
@click.option("--workers", type=int, default=None)
@click.option("--no-frontier", is_flag=True, help="Skip the frontier sweep on missed targets.")
@click.option("--progress/--no-progress", default=True)
@click.pass_context
def eval_cmd(ctx, suite_path, report_path, trials_path, workers, no_frontier, progress):
    """Run an evaluation suite and write the report and per-trial log."""
    from .metrics.evaluator import SuiteConfig, SuiteEvaluator

    config: ConfigManager = ctx.obj["config"]
    suite = SuiteConfig.from_file(
        _existing(suite_path), defaults={"master_seed": int(config.get("eval.master_seed", 816))}
    )
    if workers is not None and workers < 1:
        raise InvalidArgumentError("--workers must be at least 1")
    evaluator = SuiteEvaluator(
        workers=workers or int(config.get("eval.workers", 1)) or None,
        progress=progress,
        console=console,
    )
    report = evaluator.evaluate(suite, with_frontier=not no_frontier)
    report.save(
        report_path or config.get("output.report_file", "eval_report.json"),
        trials_path or config.get("output.trial_log_file", "eval_trials.jsonl"),
    )
    evaluator.print_summary(report)


@cli.command(name="export")
@click.argument("source_path", type=click.Path(dir_okay=False))
@click.option("--what", required=True, help="phase_sum, agc, extrema or accuracy_by_condition.")
@click.option("-o", "--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--segment", type=int, default=0, help="Detection segment for pattern series.")
@click.option("--by", default="los_distance_m", help="Condition axis for accuracy_by_condition.")
@click.pass_context
def export_cmd(ctx, source_path, what, out_path, segment, by):
    """Export plot data from a trace or an evaluation report."""
    from .detect.detector import DetectorParams
    from .storage.export import SERIES, export_plot_data, load_report
    from .storage.tracefile import read_trace

    if what not in SERIES:
        raise InvalidArgumentError(f"Unknown series {what!r}; expected one of {', '.join(SERIES)}")
    config: ConfigManager = ctx.obj["config"]
    path = _existing(source_path)
    if what == "accuracy_by_condition":
        try:
            source = load_report(path)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise TraceParseError(f"Not an evaluation report: {exc}") from exc
    else:
        source = read_trace(path)
    export_plot_data(source, what, out_path, segment=segment, by=by,
                     params=DetectorParams.from_config(config))
    console.print(f"✅ Exported {what} to {out_path}")


def _existing(path: str) -> str:
    if not Path(path).is_file():
        raise InvalidArgumentError(f"File not found: {path}")
    return path


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and map failures to exit codes.

    Args:
        argv (Optional[List[str]]): Arguments (defaults to sys.argv[1:])

    Returns:
        int: Process exit code
    """
    load_dotenv()
    try:
        cli.main(args=argv, prog_name="zonecross", standalone_mode=False)
    except click.exceptions.Abort:
        console.print("Aborted.")
        return 1
    except click.exceptions.UsageError as exc:
        console.print(f"❌ {exc.format_message()}")
        return EXIT_INVALID
    except click.exceptions.ClickException as exc:
        console.print(f"❌ {exc.format_message()}")
        return EXIT_INVALID
    except TraceParseError as exc:
        console.print(f"❌ Parse error: {exc}")
        return EXIT_PARSE
    except InvalidArgumentError as exc:
        console.print(f"❌ Invalid argument: {exc}")
        return EXIT_INVALID
    except ZoneCrossError as exc:
        console.print(f"❌ Pipeline error: {exc}")
        return EXIT_PIPELINE
    except OSError as exc:
        console.print(f"❌ I/O error: {exc}")
        return EXIT_PIPELINE
    return EXIT_OK


def run():
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()

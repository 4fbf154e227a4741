"""
Command line surface: `volprod <polar|santalo|verify|sweep|export> [input] [flags]`.

Exit codes: 0 all checks pass, 1 a verdict failed or a solver did not
converge, 2 usage, configuration, document or I/O errors.
"""

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from config import Command, OutputFormat, RunConfig, TheoremId, load_yaml
from documents import BodyDocument, load_document, vertices_to_csv
from errors import (
    CentreNotInterior, ConfigError, DocumentError, GeometryError, NoConvergence,
    ParameterError, VerificationError,
)
from geometry_core import centroid
from polarity import CenteredBody, polar, polar_area_quadrature, volume_product
from santalo import santalo_point
from suites import run_suite, run_sweep, suite_to_csv, suite_to_json, sweep_to_csv, sweep_to_json
from templates import TemplateManager


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_FORMATS = {
    Command.POLAR: OutputFormat.JSON,
    Command.SANTALO: OutputFormat.JSON,
    Command.VERIFY: OutputFormat.CSV,
    Command.SWEEP: OutputFormat.CSV,
    Command.EXPORT: OutputFormat.SVG,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volprod",
        description="Polar bodies, volume products and stability checks for convex polygons.",
    )
    parser.add_argument("command", choices=[c.value for c in Command])
    parser.add_argument("input", nargs="?", help="body document (JSON, or vertex CSV); '-' reads stdin")
    parser.add_argument("--theorem", choices=[t.value for t in TheoremId])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--count", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--eps", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--out", help="output path; stdout when omitted")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--overlay", action="store_true", help="draw the polar body on exported figures")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--config", help="YAML configuration file (default: $VOLPROD_CONFIG)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """YAML file first, then explicit flags on top."""
    data: Dict[str, Any] = {}
    config_file = args.config or os.getenv('VOLPROD_CONFIG')
    if config_file:
        data.update(load_yaml(config_file))

    data['command'] = args.command
    for key in ('theorem', 'seed', 'count', 'n', 'eps', 'tol', 'threads', 'format'):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.out is not None:
        data['output_path'] = args.out
    if args.input is not None:
        data['input_path'] = args.input
    if args.overlay:
        data['overlay'] = True
    data.setdefault('format', DEFAULT_FORMATS[Command(args.command)].value)
    return RunConfig.from_dict(data)


def _debug(config: RunConfig, message: str):
    if config.debug:
        print(f"::debug::{message}", file=sys.stderr)


def _read_document(config: RunConfig) -> BodyDocument:
    if config.input_path in (None, "-"):
        return BodyDocument.from_json(sys.stdin.read())
    return load_document(Path(config.input_path))


def _emit(config: RunConfig, text: str):
    if config.output_path:
        Path(config.output_path).write_text(text, encoding="utf-8")
        print(f"::notice::Wrote {config.output_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def cmd_polar(config: RunConfig) -> int:
    doc = _read_document(config)
    if doc.centre is None:
        raise DocumentError("polar needs a 'centre' in the body document")
    body = CenteredBody(doc.to_polygon(config.tolerances.convexity), doc.centre)
    dual = polar(body)
    _debug(config, f"{doc.name}: {len(body.polygon)} vertices -> {len(dual)} polar vertices")

    if config.output_format is OutputFormat.CSV:
        _emit(config, vertices_to_csv(dual))
    else:
        _emit(config, BodyDocument.from_polygon(dual, [0.0, 0.0], f"{doc.name}_polar").to_json())
    return EXIT_OK


def cmd_santalo(config: RunConfig) -> int:
    doc = _read_document(config)
    K = doc.to_polygon(config.tolerances.convexity)
    result = santalo_point(K, config.tol, config.tolerances.max_iterations,
                           config.tolerances.santalo_factor)
    body = CenteredBody(K, result.point)
    _debug(config, f"{doc.name}: converged in {result.iterations} iterations")

    report = {
        'name': doc.name,
        'point': result.point.tolist(),
        'polar_area': result.polar_area_at_min,
        'volume_product': volume_product(body).product,
        'gradient_norm': result.gradient_norm,
        'tolerance': result.tolerance,
        'iterations': result.iterations,
        'centroid_of_polar_norm': float(np.linalg.norm(centroid(polar(body)))),
        'quadrature_polar_area': polar_area_quadrature(body, config.tolerances.quadrature_nodes),
    }
    _emit(config, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    if config.output_format is OutputFormat.SVG:
        raise ConfigError("verify writes csv, json or md")
    print(f"::notice::Running suite {config.theorem.value} (seed {config.seed}, count {config.count})",
          file=sys.stderr)
    report = run_suite(config)
    summary = TemplateManager().render_summary({
        'command': 'verify',
        'seed': config.seed,
        'summary': report.summary(),
        'passed': report.passed,
    })

    if config.output_format is OutputFormat.JSON:
        _emit(config, suite_to_json(report))
    elif config.output_format is OutputFormat.MARKDOWN:
        _emit(config, summary)
    else:
        _emit(config, suite_to_csv(report))

    if config.output_path and config.output_format is not OutputFormat.MARKDOWN:
        print(summary)

    passed = len(report.rows) - len(report.failures)
    print(f"::notice::{passed}/{len(report.rows)} bodies passed", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sweep(config: RunConfig) -> int:
    report = run_sweep(config)
    print(f"::notice::Max closed-form deviation {report.max_deviation:.3e}", file=sys.stderr)

    if config.output_format is OutputFormat.CSV:
        _emit(config, sweep_to_csv(report))
    elif config.output_format is OutputFormat.JSON:
        _emit(config, sweep_to_json(report))
    elif config.output_format is OutputFormat.SVG:
        _emit(config, TemplateManager().render_curve_svg(report.series(), "volume product excess and centre offset"))
    else:
        _emit(config, TemplateManager().render_summary({
            'command': 'sweep',
            'rows': report.rows,
            'skipped': report.skipped,
            'max_deviation': report.max_deviation,
            'passed': report.passed,
        }))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_export(config: RunConfig) -> int:
    doc = _read_document(config)
    K = doc.to_polygon(config.tolerances.convexity)

    if config.output_format is OutputFormat.CSV:
        _emit(config, vertices_to_csv(K))
    elif config.output_format is OutputFormat.JSON:
        _emit(config, BodyDocument.from_polygon(K, doc.centre, doc.name).to_json())
    elif config.output_format is OutputFormat.SVG:
        manager = TemplateManager()
        if config.overlay:
            centre = doc.centre if doc.centre is not None else santalo_point(K).point
            body = CenteredBody(K, centre)
            shapes = [("body", body.translated()), ("polar", polar(body))]
            svg = manager.render_body_svg(shapes, centre=(0.0, 0.0), unit_circle=True)
        else:
            svg = manager.render_body_svg([("body", K)], centre=doc.centre)
        _emit(config, svg)
    else:
        raise ConfigError("export writes svg, csv or json")
    return EXIT_OK


HANDLERS: Dict[Command, Callable[[RunConfig], int]] = {
    Command.POLAR: cmd_polar,
    Command.SANTALO: cmd_santalo,
    Command.VERIFY: cmd_verify,
    Command.SWEEP: cmd_sweep,
    Command.EXPORT: cmd_export,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch, and map errors to exit codes."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = config_from_args(args)
        _debug(config, f"Config loaded: {config.to_dict()}")
        return HANDLERS[config.command](config)

    except CentreNotInterior as e:
        print(f"::error::Centre not interior (edge {e.edge}): {e}", file=sys.stderr)
        return EXIT_USAGE

    except (ConfigError, DocumentError) as e:
        print(f"::error::{e}", file=sys.stderr)
        return EXIT_USAGE

    except (GeometryError, ParameterError) as e:
        print(f"::error::{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE

    except NoConvergence as e:
        print(f"::error::No convergence after {e.iterations} iterations: {e}", file=sys.stderr)
        return EXIT_FAILED

    except VerificationError as e:
        print(f"::error::{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED

    except OSError as e:
        print(f"::error::I/O error: {e}", file=sys.stderr)
        return EXIT_USAGE

"""
Template system for volprod.
Renders body figures, sweep curves and run summaries through Jinja2.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from jinja2 import Environment, FileSystemLoader

from documents import fmt17
from geometry_core import ConvexPolygon


PLOT_WIDTH = 640
PLOT_HEIGHT = 400
PLOT_MARGIN = 48
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


class TemplateManager:
    """Loads the built-in templates and renders SVG and markdown output."""

    def __init__(self, template_dir: Optional[str] = None):
        self.template_dir = template_dir or str(Path(__file__).parent.parent / "templates")
        self.env = self._setup_jinja_environment()

    def _setup_jinja_environment(self) -> Environment:
        env = Environment(
            loader=FileSystemLoader(self.template_dir),
            autoescape=True,
            trim_blocks=True,
            lstrip_blocks=True,
        )
        env.filters['fmt17'] = self._fmt17
        env.filters['verdict'] = self._verdict
        env.filters['svgpoints'] = self._svgpoints
        return env

    # Custom Jinja2 filters
    @staticmethod
    def _fmt17(value: Optional[float]) -> str:
        return "-" if value is None else fmt17(value)

    @staticmethod
    def _verdict(passed: bool) -> str:
        return "PASS" if passed else "FAIL"

    @staticmethod
    def _svgpoints(points: Sequence[Sequence[float]]) -> str:
        return " ".join(f"{x:.6f},{y:.6f}" for x, y in points)

    def render_body_svg(self, polygons: List[Tuple[str, ConvexPolygon]],
                        centre: Optional[Sequence[float]] = None,
                        unit_circle: bool = False) -> str:
        """Polygons in model coordinates, y pointing up, with an optional centre marker."""
        stacked = np.vstack([p.vertices for _, p in polygons])
        lo, hi = stacked.min(axis=0), stacked.max(axis=0)
        if unit_circle:
            lo, hi = np.minimum(lo, -1.0), np.maximum(hi, 1.0)
        pad = 0.05 * float(max(hi - lo))
        lo, hi = lo - pad, hi + pad
        span = hi - lo

        shapes = [
            {'role': role, 'points': p.vertices.tolist(), 'colour': PALETTE[i % len(PALETTE)]}
            for i, (role, p) in enumerate(polygons)
        ]
        template = self.env.get_template("body.svg.j2")
        return template.render(
            view_box=f"{lo[0]:.6f} {-hi[1]:.6f} {span[0]:.6f} {span[1]:.6f}",
            width=PLOT_WIDTH,
            height=int(round(PLOT_WIDTH * span[1] / span[0])),
            shapes=shapes,
            centre=None if centre is None else [float(centre[0]), float(centre[1])],
            marker=0.01 * float(max(span)),
            unit_circle=unit_circle,
        )

    def render_curve_svg(self, series: Dict[str, List[Tuple[float, float]]], title: str) -> str:
        """Log-log line plot; non-positive points are dropped."""
        clean = {
            name: [(np.log10(x), np.log10(y)) for x, y in pts if x > 0 and y > 0]
            for name, pts in series.items()
        }
        clean = {name: pts for name, pts in clean.items() if pts}
        every = [p for pts in clean.values() for p in pts] or [(0.0, 0.0)]
        xs, ys = np.array([p[0] for p in every]), np.array([p[1] for p in every])
        x_lo, x_hi = float(xs.min()), float(xs.max())
        y_lo, y_hi = float(ys.min()), float(ys.max())
        x_span = max(x_hi - x_lo, 1e-12)
        y_span = max(y_hi - y_lo, 1e-12)
        inner_w = PLOT_WIDTH - 2 * PLOT_MARGIN
        inner_h = PLOT_HEIGHT - 2 * PLOT_MARGIN

        def pixel(p: Tuple[float, float]) -> Tuple[float, float]:
            return (PLOT_MARGIN + inner_w * (p[0] - x_lo) / x_span,
                    PLOT_HEIGHT - PLOT_MARGIN - inner_h * (p[1] - y_lo) / y_span)

        lines = [
            {'name': name, 'points': [pixel(p) for p in pts], 'colour': PALETTE[i % len(PALETTE)]}
            for i, (name, pts) in enumerate(clean.items())
        ]
        template = self.env.get_template("curve.svg.j2")
        return template.render(
            title=title,
            width=PLOT_WIDTH,
            height=PLOT_HEIGHT,
            margin=PLOT_MARGIN,
            lines=lines,
            x_range=(x_lo, x_hi),
            y_range=(y_lo, y_hi),
        )

    def render_summary(self, context: Dict[str, Any]) -> str:
        template = self.env.get_template("summary.md")
        return template.render(**context)

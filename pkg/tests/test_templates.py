import xml.etree.ElementTree as ET

import pytest

from polarity import CenteredBody, polar
from templates import TemplateManager


SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def manager():
    return TemplateManager()


def test_body_svg(manager, square):
    body = CenteredBody.at_origin(square)
    svg = manager.render_body_svg([("body", square), ("polar", polar(body))],
                                  centre=(0.0, 0.0), unit_circle=True)
    root = ET.fromstring(svg.encode())
    polygons = list(root.iter(f"{SVG}polygon"))
    assert [p.get("class") for p in polygons] == ["body", "polar"]
    assert len(list(root.iter(f"{SVG}circle"))) == 1
    assert len(list(root.iter(f"{SVG}path"))) == 1


def test_body_svg_without_centre(manager, scalene):
    root = ET.fromstring(manager.render_body_svg([("body", scalene)]).encode())
    assert len(list(root.iter(f"{SVG}polygon"))) == 1
    assert not list(root.iter(f"{SVG}path"))
    assert not list(root.iter(f"{SVG}circle"))


def test_curve_svg_drops_non_positive_points(manager):
    series = {"a": [(1e-4, 1e-4), (1e-2, 1e-2)], "b": [(0.0, 1.0), (-1.0, 2.0)]}
    root = ET.fromstring(manager.render_curve_svg(series, "excess").encode())
    lines = list(root.iter(f"{SVG}polyline"))
    assert len(lines) == 1
    assert lines[0].get("class") == "series"


def test_verify_summary(manager):
    text = manager.render_summary({
        'command': 'verify',
        'seed': 7,
        'passed': False,
        'summary': {
            'theorem': 't2', 'total': 3, 'passed': 2, 'failed': 1, 'errors': 1,
            'worst_ratio': 0.5, 'worst_body': 'pentagon', 'worst_centre_ratio': None,
            'failures': [{'index': 2, 'body': 'random_9', 'error': 'DegenerateInput: flat'}],
        },
    })
    assert "`t2`, seed 7, 3 bodies" in text
    assert "| 2 | `random_9` | DegenerateInput: flat |" in text
    assert "Worst centre ratio: -" in text
    assert text.rstrip().endswith("**Overall:** FAIL")


def test_sweep_summary(manager):
    text = manager.render_summary({
        'command': 'sweep', 'rows': [], 'skipped': [(4, 2.0)], 'max_deviation': 0.0, 'passed': True,
    })
    assert "Skipped grid points: 1" in text
    assert text.rstrip().endswith("**Overall:** PASS")

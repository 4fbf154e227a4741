"""
Verification suites and parameter sweeps behind `volprod verify` and
`volprod sweep`.
"""

import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from canonical import (
    Symmetry, bump_limit, bumped_eggleston_closed_form, bumped_ngon,
    bumped_product_closed_form, canonical_model, Model, incidence_pair,
    random_between, random_body, regular_ngon,
)
from config import RunConfig, TheoremId
from documents import fmt17
from errors import InvalidParameter, VolprodError
from geometry_core import ConvexPolygon
from polarity import CenteredBody, eggleston_product, volume_product
from stability import (
    TheoremVerdict, bumped_excess_slope, example2_centre_lower, example2_exponent,
    lemma7_check, verify_theorem1, verify_theorem2, verify_theorem3,
    verify_theorem5, verify_theorem6,
)


EPS_GRID = (1e-4, 1e-3, 1e-2, 1e-1)
N_GRID = tuple(range(3, 13))
FOLDS = (3, 5, 6, 8)
INCIDENCE_STEPS = (0.25, 0.5, 0.75)
EXAMPLE2_EPS = (1e-8, 1e-7, 1e-6, 1e-5, 1e-4)
EXAMPLE2_N = (3, 4, 6)
SLOPE_BUMPS = (1e-5, 2e-5, 5e-5, 1e-4)

DEVIATION_LIMIT = 1e-9
SLOPE_TOLERANCE = 0.05
EXPONENT_RANGE = (0.45, 0.55)

BASE_COLUMNS = ["index", "seed", "body", "eps", "bm_upper", "claimed",
                "centre_distance", "centre_claimed", "pass"]
CHAIN_COLUMNS = ["chain_0", "chain_1", "chain_2", "chain_3", "chain_4"]
SWEEP_COLUMNS = ["kind", "n", "eps", "measured", "reference", "deviation", "pass"]


@dataclass(frozen=True, eq=False)
class BodyCase:
    """One body of a suite; extra carries theorem-specific inputs."""
    index: int
    seed: int
    name: str
    polygon: ConvexPolygon
    extra: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteRow:
    index: int
    seed: int
    name: str
    verdict: Optional[TheoremVerdict]
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict is not None and self.verdict.passed


@dataclass
class SuiteReport:
    theorem: TheoremId
    rows: List[SuiteRow]

    @property
    def failures(self) -> List[SuiteRow]:
        return [row for row in self.rows if not row.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> Dict[str, Any]:
        """Counts and worst margins for the markdown summary."""
        scored = [(row.verdict.bm_upper / row.verdict.claimed, row.name)
                  for row in self.rows if row.verdict is not None]
        centres = [row.verdict.centre_distance / row.verdict.centre_claimed for row in self.rows
                   if row.verdict is not None and row.verdict.centre_distance is not None
                   and row.verdict.centre_claimed]
        worst_ratio, worst_body = max(scored) if scored else (None, None)
        return {
            'theorem': self.theorem.value,
            'total': len(self.rows),
            'passed': len(self.rows) - len(self.failures),
            'failed': len(self.failures),
            'errors': sum(1 for row in self.rows if row.error),
            'worst_ratio': worst_ratio,
            'worst_body': worst_body,
            'worst_centre_ratio': max(centres) if centres else None,
            'failures': [{'index': r.index, 'body': r.name, 'error': r.error} for r in self.failures],
        }


@dataclass(frozen=True)
class SweepRow:
    kind: str
    n: int
    eps: Optional[float]
    measured: float
    reference: float
    deviation: float
    passed: bool


@dataclass
class SweepReport:
    rows: List[SweepRow]
    skipped: List[Tuple[int, float]]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def max_deviation(self) -> float:
        return max((r.deviation for r in self.rows if r.kind == "bumped"), default=0.0)

    def series(self) -> Dict[str, List[Tuple[float, float]]]:
        """Plot series: P/P(R_n) - 1 against eps per n, and example2 offsets."""
        out: Dict[str, List[Tuple[float, float]]] = {}
        for row in self.rows:
            if row.kind == "bumped":
                out.setdefault(f"bumped n={row.n}", []).append(
                    (row.eps, row.measured / (row.n ** 2 * np.sin(np.pi / row.n) ** 2) - 1.0))
            elif row.kind == "example2":
                out.setdefault(f"offset n={row.n}", []).append((row.eps, row.measured))
        return out


# ---------------------------------------------------------------------------
# case generation


def _grid_cases(ns, start: int, eps_grid=EPS_GRID) -> List[BodyCase]:
    cases = []
    for n in ns:
        for eps in eps_grid:
            if eps > bump_limit(n):
                continue
            cases.append(BodyCase(start + len(cases), 0, f"bumped_{n}_{eps:g}",
                                  bumped_ngon(n, eps), {'n': n}))
    return cases


def _named(cases: List[BodyCase], items, start: int = 0) -> List[BodyCase]:
    for name, polygon, extra in items:
        cases.append(BodyCase(start + len(cases), 0, name, polygon, extra))
    return cases


def _random_cases(config: RunConfig, start: int, make) -> List[BodyCase]:
    cases = []
    for i in range(config.count):
        seed = config.seed + i
        n = 3 + i % 10
        name, polygon, extra = make(i, seed, n)
        cases.append(BodyCase(start + i, seed, name, polygon, extra))
    return cases


def build_cases(config: RunConfig) -> List[BodyCase]:
    """Canonical bodies, then the bumped-polygon grid, then seeded random bodies."""
    theorem = config.theorem
    square = canonical_model(Model.parallelogram())
    triangle = canonical_model(Model.triangle())
    cases: List[BodyCase] = []

    if theorem is TheoremId.T1:
        _named(cases, [
            ("square", square, {}),
            ("hexagon", regular_ngon(6), {}),
            ("octagon", regular_ngon(8), {}),
        ])
        cases += _grid_cases([n for n in N_GRID if n % 2 == 0], len(cases))
        cases += _random_cases(config, len(cases), lambda i, seed, n: (
            f"random_{seed}", random_body(seed, n, Symmetry.CENTRAL), {}))

    elif theorem in (TheoremId.T2, TheoremId.T6, TheoremId.L7):
        _named(cases, [
            ("triangle", triangle, {}),
            ("square", square, {}),
            ("pentagon", regular_ngon(5), {}),
        ])
        cases += _grid_cases([3] if theorem is TheoremId.L7 else N_GRID, len(cases))
        cases += _random_cases(config, len(cases), lambda i, seed, n: (
            f"random_{seed}", random_body(seed, n), {}))

    elif theorem is TheoremId.T5:
        folds = (config.n,) if config.n else FOLDS
        _named(cases, [(f"regular_{k}", regular_ngon(k), {'n': k}) for k in folds])
        cases += _grid_cases(folds, len(cases))

        def nfold(i, seed, n):
            k = folds[i % len(folds)]
            return f"random_{seed}", random_body(seed, n, Symmetry.NFOLD, fold=k), {'n': k}

        cases += _random_cases(config, len(cases), nfold)

    elif theorem is TheoremId.T3:
        ns = (config.n,) if config.n else tuple(range(3, 9))
        for n in ns:
            for t in INCIDENCE_STEPS:
                inner, outer = incidence_pair(n, t)
                extra = {'inner': inner, 'outer': outer, 'centre': (0.0, 0.0)}
                _named(cases, [
                    (f"inner_{n}_{t:g}", inner, extra),
                    (f"outer_{n}_{t:g}", outer, extra),
                ])

        def between(i, seed, n):
            k = ns[i % len(ns)]
            inner, outer = incidence_pair(k, INCIDENCE_STEPS[i % len(INCIDENCE_STEPS)])
            extra = {'inner': inner, 'outer': outer, 'centre': (0.0, 0.0)}
            return f"random_{seed}", random_between(seed, inner, outer), extra

        cases += _random_cases(config, len(cases), between)

    return cases


# ---------------------------------------------------------------------------
# evaluation


def evaluate_case(theorem: TheoremId, case: BodyCase) -> SuiteRow:
    """Run one verifier; library errors become a failed row."""
    K = case.polygon
    try:
        if theorem is TheoremId.T1:
            verdict = verify_theorem1(K)
        elif theorem is TheoremId.T2:
            verdict = verify_theorem2(K)
        elif theorem is TheoremId.T3:
            verdict = verify_theorem3(K, case.extra['inner'], case.extra['outer'], case.extra['centre'])
        elif theorem is TheoremId.T5:
            verdict = verify_theorem5(K, case.extra['n'])
        elif theorem is TheoremId.T6:
            verdict = verify_theorem6(K)
        else:
            verdict = lemma7_check(K).verdict()
    except VolprodError as e:
        return SuiteRow(case.index, case.seed, case.name, None, f"{type(e).__name__}: {e}")
    return SuiteRow(case.index, case.seed, case.name, verdict)


def run_suite(config: RunConfig) -> SuiteReport:
    """Evaluate every case on a thread pool; rows keep case order."""
    cases = build_cases(config)
    with ThreadPoolExecutor(max_workers=config.threads) as executor:
        rows = list(executor.map(lambda case: evaluate_case(config.theorem, case), cases))

    for row in rows:
        if row.error:
            print(f"::warning::{row.name}: {row.error}", file=sys.stderr)
        elif not row.passed:
            print(f"::warning::{row.name}: verdict failed", file=sys.stderr)
    return SuiteReport(config.theorem, rows)


def _cell(value: Optional[float]) -> str:
    return "" if value is None else fmt17(value)


def suite_columns(theorem: TheoremId) -> List[str]:
    if theorem in (TheoremId.T3, TheoremId.L7):
        return BASE_COLUMNS + CHAIN_COLUMNS
    return list(BASE_COLUMNS)


def suite_to_csv(report: SuiteReport) -> str:
    columns = suite_columns(report.theorem)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in report.rows:
        v = row.verdict
        cells = [str(row.index), str(row.seed), row.name]
        if v is None:
            cells += [""] * (len(columns) - 4) + ["false"]
        else:
            cells += [_cell(v.eps), _cell(v.bm_upper), _cell(v.claimed),
                      _cell(v.centre_distance), _cell(v.centre_claimed),
                      "true" if v.passed else "false"]
            if len(columns) > len(BASE_COLUMNS):
                cells += [_cell(v.diagnostics.get(c)) for c in CHAIN_COLUMNS]
        writer.writerow(cells)
    return buffer.getvalue()


def suite_to_json(report: SuiteReport) -> str:
    rows = []
    for row in report.rows:
        v = row.verdict
        entry: Dict[str, Any] = {'index': row.index, 'seed': row.seed, 'body': row.name,
                                 'pass': row.passed}
        if v is not None:
            entry.update({
                'eps': v.eps, 'bm_upper': v.bm_upper, 'claimed': v.claimed,
                'centre_distance': v.centre_distance, 'centre_claimed': v.centre_claimed,
                'diagnostics': v.diagnostics,
            })
        else:
            entry['error'] = row.error
        rows.append(entry)
    return json.dumps({'theorem': report.theorem.value, 'rows': rows}, indent=2) + "\n"


# ---------------------------------------------------------------------------
# sweeps


def run_sweep(config: RunConfig) -> SweepReport:
    """Bumped-polygon products against the closed form, their slope at 0, and the centre offset scan."""
    ns = (config.n,) if config.n else N_GRID
    eps_grid = (config.eps,) if config.eps else EPS_GRID
    rows: List[SweepRow] = []
    skipped: List[Tuple[int, float]] = []

    for n in ns:
        for eps in eps_grid:
            if eps > bump_limit(n):
                print(f"::warning::skipping n={n}, eps={eps:g}: bump limit is {bump_limit(n):.6g}",
                      file=sys.stderr)
                skipped.append((n, eps))
                continue
            measured = volume_product(CenteredBody.at_origin(bumped_ngon(n, eps))).product
            reference = bumped_product_closed_form(n, eps)
            deviation = abs(measured - reference)
            rows.append(SweepRow("bumped", n, eps, measured, reference, deviation,
                                 bool(deviation <= DEVIATION_LIMIT)))
        if n == 3:
            for eps in eps_grid:
                if eps > bump_limit(n):
                    continue
                measured = eggleston_product(bumped_ngon(3, eps))
                reference = bumped_eggleston_closed_form(eps)
                deviation = abs(measured - reference)
                rows.append(SweepRow("eggleston", 3, eps, measured, reference, deviation,
                                     bool(deviation <= DEVIATION_LIMIT)))

        slope = bumped_excess_slope(n, SLOPE_BUMPS)
        rows.append(SweepRow("bumped_slope", n, None, slope, 1.0, abs(slope - 1.0),
                             bool(abs(slope - 1.0) <= SLOPE_TOLERANCE)))

    if not rows or all(row.kind != "bumped" for row in rows):
        raise InvalidParameter("sweep grid has no admissible (n, eps) point")

    for n in ((config.n,) if config.n else EXAMPLE2_N):
        for eps in EXAMPLE2_EPS:
            result = example2_centre_lower(n, eps, rtol=config.tolerances.bisection_rtol)
            rows.append(SweepRow("example2", n, eps, result.offset, result.lower,
                                 result.offset - result.lower, result.passed))
        exponent = example2_exponent(n, EXAMPLE2_EPS)
        lo, hi = EXPONENT_RANGE
        rows.append(SweepRow("example2_exponent", n, None, exponent, 0.5, abs(exponent - 0.5),
                             bool(lo <= exponent <= hi)))

    return SweepReport(rows, skipped)


def sweep_to_csv(report: SweepReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in report.rows:
        writer.writerow([row.kind, str(row.n), _cell(row.eps), fmt17(row.measured),
                         fmt17(row.reference), fmt17(row.deviation),
                         "true" if row.passed else "false"])
    return buffer.getvalue()


def sweep_to_json(report: SweepReport) -> str:
    return json.dumps({
        'max_deviation': report.max_deviation,
        'skipped': [list(p) for p in report.skipped],
        'rows': [vars(row) for row in report.rows],
    }, indent=2) + "\n"

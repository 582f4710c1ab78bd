"""Table-shaped CSV/JSON renderings of analysis results.

Layouts put transitions or states down the rows and games across the columns.
Every rendering is a pure function of its inputs so reruns produce
byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from maxent_transitions.analysis import GameAnalysis, PooledRegressions, entropy_summary
from maxent_transitions.game import STATES, Direction, transition_label
from maxent_transitions.maxent import round_half_up
from maxent_transitions.stats import RegressionResult

FORMATS = ("csv", "json")


@dataclass
class Table:
    header: list[str]
    rows: list[list]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        writer.writerows(["" if v is None else v for v in row] for row in self.rows)
        return buf.getvalue()

    def to_records(self) -> list[dict]:
        return [dict(zip(self.header, row)) for row in self.rows]

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return dumps(self.to_records())
        raise ValueError(f"unknown format {fmt!r}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _fmt(x: float | None, digits: int) -> str | None:
    return None if x is None else f"{x:.{digits}f}"


def _labels() -> list[tuple[Direction, object, object, str]]:
    return [
        (direction, s, partner, transition_label(s, partner, direction))
        for direction in Direction
        for s in STATES
        for partner in STATES
    ]


def counts_table(analyses: Mapping[str, GameAnalysis]) -> Table:
    """Actual transition frequencies, 16 backward rows then 16 forward rows."""
    games = list(analyses)
    rows = []
    for direction, s, partner, label in _labels():
        rows.append([label] + [int(analyses[g].counts.row(s, direction)[partner]) for g in games])
    return Table(["transition", *games], rows)


def mean_points_table(analyses: Mapping[str, GameAnalysis], digits: int = 6) -> Table:
    games = list(analyses)
    rows = []
    for direction in Direction:
        for s in STATES:
            for comp, idx in (("p", 0), ("q", 1)):
                values = []
                for g in games:
                    agg = analyses[g].aggregates[(direction, s)]
                    values.append(None if agg is None else _fmt(agg.mean_point[idx], digits))
                rows.append([direction.value, s.label, comp, *values])
    return Table(["direction", "state", "component", *games], rows)


def aggregates_table(a: GameAnalysis, digits: int = 6) -> Table:
    """Mean point, aggregated vector and total for each (direction, state) of one game."""
    rows = []
    for direction in Direction:
        for s in STATES:
            agg = a.aggregates[(direction, s)]
            if agg is None:
                rows.append([direction.value, s.label, None, None, None, None, 0, "undefined"])
                continue
            rows.append([
                direction.value, s.label,
                _fmt(agg.mean_point[0], digits), _fmt(agg.mean_point[1], digits),
                _fmt(agg.vector[0], digits), _fmt(agg.vector[1], digits),
                agg.total, "",
            ])
    return Table(["direction", "state", "p_bar", "q_bar", "dp", "dq", "total", "note"], rows)


def expected_table(analyses: Mapping[str, GameAnalysis], rounded: bool = True, digits: int = 4) -> Table:
    """MaxEnt-expected frequencies; half-up integers when ``rounded``."""
    games = list(analyses)
    rows = []
    for direction, s, partner, label in _labels():
        row = [label]
        for g in games:
            pred = analyses[g].expected.prediction(direction, s)
            if pred is None:
                row.append(None)
            elif rounded:
                row.append(round_half_up(pred.expected_counts[partner]))
            else:
                row.append(_fmt(pred.expected_counts[partner], digits))
        rows.append(row)
    return Table(["transition", *games], rows)


_REG_HEADER = [
    "game", "direction", "n", "slope", "slope_lo", "slope_hi",
    "intercept", "intercept_lo", "intercept_hi", "slope_p", "intercept_p", "level",
]


def _reg_row(game: str, direction: str, reg: RegressionResult | None, digits: int) -> list:
    if reg is None:
        return [game, direction] + [None] * (len(_REG_HEADER) - 2)
    return [
        game, direction, reg.n,
        _fmt(reg.slope, digits), _fmt(reg.slope_ci[0], digits), _fmt(reg.slope_ci[1], digits),
        _fmt(reg.intercept, digits), _fmt(reg.intercept_ci[0], digits), _fmt(reg.intercept_ci[1], digits),
        f"{reg.slope_p:.6g}", f"{reg.intercept_p:.6g}", reg.level,
    ]


def regression_table(
    analyses: Mapping[str, GameAnalysis],
    pooled: PooledRegressions | None = None,
    digits: int = 6,
) -> Table:
    """Per-game regressions of actual on expected, backward then forward, plus pooled rows."""
    rows = []
    for g, a in analyses.items():
        for direction in Direction:
            rows.append(_reg_row(g, direction.value, a.regressions[direction], digits))
    if pooled is not None:
        for direction in Direction:
            rows.append(_reg_row("total", direction.value, pooled.per_direction[direction], digits))
        rows.append(_reg_row("total", "both", pooled.both_directions, digits))
        rows.append(_reg_row("total", "both+dummy", pooled.direction_dummy, digits))
    return Table(_REG_HEADER, rows)


def plot_points(analyses: Mapping[str, GameAnalysis]) -> list[dict]:
    """Actual-vs-expected scatter data, one record per (game, transition)."""
    return [pt.to_dict() for a in analyses.values() for pt in a.points.points]


def gof_records(a: GameAnalysis) -> list[dict]:
    out = []
    for direction in Direction:
        for s in STATES:
            key = (direction, s)
            pred = a.expected.prediction(direction, s)
            fit = a.gof.get(key)
            rec = {
                "game": a.game_id,
                "direction": direction.value,
                "state": s.label,
                "constraint": None if pred is None else list(pred.mean_point),
                "actual": None if pred is None else list(pred.actual_counts),
                "expected": None if pred is None else list(pred.expected_counts),
                "chi2": None if fit is None else fit.chi2,
                "p_value": None if fit is None else fit.p_value,
                "dof": None if fit is None else fit.dof,
            }
            if key in a.gof_errors:
                rec["note"] = a.gof_errors[key]
            out.append(rec)
    return out


def predictions_records(a: GameAnalysis) -> list[dict]:
    out = []
    for (direction, s), pred in a.expected.rows.items():
        rec = {"game": a.game_id, "state": s.label, "direction": direction.value}
        rec.update(pred.to_dict() if pred is not None else {"missing": True})
        out.append(rec)
    return out


def entropy_records(analyses: Sequence[GameAnalysis], base: float | None = None) -> list[dict]:
    return [{"game": a.game_id, **row} for a in analyses for row in entropy_summary(a, base)]

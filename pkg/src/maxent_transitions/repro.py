"""Regenerate the mean-point, expected-frequency and regression tables from the count fixtures.

Tolerances (per cell):

* mean points: ``|recomputed - printed| <= 0.005`` (printed values are rounded
  to two decimals, so a correct value is never further than half a unit in
  the last place; ``MEAN_POINT_SLACK`` absorbs binary representation of 0.005),
* expected frequencies: half-up rounded recomputed value within 1 of the
  printed integer, or within 2 for the two typo-corrected cells,
* regressions: slope within 0.005, every 99% confidence bound within 0.02.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from maxent_transitions.analysis import GameAnalysis, PooledRegressions, analyze_counts, pooled_regressions
from maxent_transitions.fixtures import (
    GAME_IDS,
    PaperFixture,
    PrintedRegression,
    load_paper_fixture,
    printed_pooled_regression,
)
from maxent_transitions.game import STATES, Direction, transition_label
from maxent_transitions.maxent import round_half_up
from maxent_transitions.report import Table
from maxent_transitions.stats import RegressionResult
from maxent_transitions.transitions import TransitionCounts

MEAN_POINT_TOL = 0.005
MEAN_POINT_SLACK = 1e-9
EXPECTED_TOL = 1
EXPECTED_TYPO_TOL = 2
SLOPE_TOL = 0.005
CI_TOL = 0.02


@dataclass(frozen=True)
class DiffRow:
    table: str
    game: str
    cell: str
    printed: float | None
    recomputed: float | None
    deviation: float | None
    tolerance: float
    ok: bool
    note: str = ""

    def as_list(self) -> list:
        return [
            self.table, self.game, self.cell,
            self.printed, None if self.recomputed is None else round(self.recomputed, 6),
            None if self.deviation is None else round(self.deviation, 6),
            self.tolerance, "ok" if self.ok else "FAIL", self.note,
        ]


DIFF_HEADER = ["table", "game", "cell", "printed", "recomputed", "deviation", "tolerance", "status", "note"]


@dataclass
class Reproduction:
    games: list[str]
    fixtures: dict[str, PaperFixture]
    analyses: dict[str, GameAnalysis]
    pooled: PooledRegressions | None
    diffs: list[DiffRow] = field(default_factory=list)
    pooling_method: str | None = None

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.diffs)

    def failures(self) -> list[DiffRow]:
        return [d for d in self.diffs if not d.ok]

    def diff_table(self, table: str | None = None) -> Table:
        rows = [d.as_list() for d in self.diffs if table is None or d.table == table]
        return Table(list(DIFF_HEADER), rows)

    def summary(self) -> dict:
        out: dict = {"games": self.games, "ok": self.ok, "tables": {}}
        for name in ("mean_points", "expected", "regression"):
            rows = [d for d in self.diffs if d.table == name]
            devs = [abs(d.deviation) for d in rows if d.deviation is not None]
            out["tables"][name] = {
                "cells": len(rows),
                "failures": sum(not d.ok for d in rows),
                "max_abs_deviation": max(devs) if devs else None,
            }
        out["regression_orientation"] = "actual (y) on MaxEnt expected (x)"
        out["pooled_method"] = self.pooling_method
        out["typo_cells"] = [
            {"game": d.game, "cell": d.cell, "note": d.note}
            for d in self.diffs if d.table == "expected" and d.note
        ]
        return out


def fixture_counts(fx: PaperFixture) -> TransitionCounts:
    """Counts with the forward table as storage; the backward table must be its transpose."""
    if not np.array_equal(fx.backward, fx.forward.T):
        raise ValueError(f"{fx.game_id}: backward table is not the transpose of the forward table")
    return TransitionCounts(fx.forward)


def _diff_mean_points(fx: PaperFixture, a: GameAnalysis) -> list[DiffRow]:
    rows = []
    for direction in Direction:
        for s in STATES:
            agg = a.aggregates[(direction, s)]
            printed = fx.mean_points[(direction, s)]
            for idx, comp in enumerate(("p", "q")):
                value = float(printed[idx])
                dev = agg.mean_point[idx] - value
                rows.append(DiffRow(
                    "mean_points", fx.game_id, f"{direction.value}:{s.label}:{comp}",
                    value, agg.mean_point[idx], dev, MEAN_POINT_TOL,
                    abs(dev) <= MEAN_POINT_TOL + MEAN_POINT_SLACK,
                ))
    return rows


def _diff_expected(fx: PaperFixture, a: GameAnalysis) -> list[DiffRow]:
    rows = []
    for direction in Direction:
        for s in STATES:
            pred = a.expected.prediction(direction, s)
            for partner in STATES:
                label = transition_label(s, partner, direction)
                value = pred.expected_counts[partner]
                printed = fx.expected[label]
                typo = label in fx.corrections
                tol = EXPECTED_TYPO_TOL if typo else EXPECTED_TOL
                dev = round_half_up(value) - printed
                note = f"printed as {fx.corrections[label]!r}; stored {printed}" if typo else ""
                rows.append(DiffRow("expected", fx.game_id, label, printed, value, dev, tol, abs(dev) <= tol, note))
    return rows


def _diff_regression(game: str, direction: Direction, reg: RegressionResult | None,
                     printed: PrintedRegression) -> list[DiffRow]:
    prefix = direction.value
    if reg is None:
        return [DiffRow("regression", game, f"{prefix}:slope", printed.slope, None, None, SLOPE_TOL, False, "regression undefined")]
    rows = [DiffRow("regression", game, f"{prefix}:slope", printed.slope, reg.slope,
                    reg.slope - printed.slope, SLOPE_TOL, abs(reg.slope - printed.slope) <= SLOPE_TOL)]
    pairs = (
        ("slope_lo", reg.slope_ci[0], printed.slope_ci[0]),
        ("slope_hi", reg.slope_ci[1], printed.slope_ci[1]),
        ("intercept_lo", reg.intercept_ci[0], printed.intercept_ci[0]),
        ("intercept_hi", reg.intercept_ci[1], printed.intercept_ci[1]),
    )
    for name, got, want in pairs:
        rows.append(DiffRow("regression", game, f"{prefix}:{name}", want, got, got - want, CI_TOL, abs(got - want) <= CI_TOL))
    brackets = reg.intercept_ci[0] < 0 < reg.intercept_ci[1]
    rows.append(DiffRow("regression", game, f"{prefix}:intercept_ci_contains_0", None, None, None, 0.0, brackets,
                        "" if brackets else "intercept CI excludes 0"))
    return rows


def reproduce_paper(games: Sequence[str] = GAME_IDS, level: float = 0.99) -> Reproduction:
    """Recompute mean points, expected frequencies and regressions for ``games`` and diff against the printed values."""
    games = list(games)
    fixtures = {g: load_paper_fixture(g) for g in games}
    analyses = {
        g: analyze_counts(g, fixture_counts(fx), omega=np.array(fx.omega), level=level)
        for g, fx in fixtures.items()
    }
    pooled = pooled_regressions(analyses, level) if len(games) > 1 else None
    repro = Reproduction(games, fixtures, analyses, pooled)
    for g in games:
        fx, a = fixtures[g], analyses[g]
        repro.diffs.extend(_diff_mean_points(fx, a))
        repro.diffs.extend(_diff_expected(fx, a))
        for direction in Direction:
            repro.diffs.extend(_diff_regression(g, direction, a.regressions[direction], fx.regression[direction]))
    if pooled is not None and set(games) == set(GAME_IDS):
        printed = printed_pooled_regression()
        for direction in Direction:
            repro.diffs.extend(_diff_regression("total", direction, pooled.per_direction[direction], printed[direction]))
        repro.pooling_method = _identify_pooling(pooled, printed)
    return repro


def _identify_pooling(pooled: PooledRegressions, printed: dict[Direction, PrintedRegression]) -> str:
    """Name the pooling whose slopes match the printed totals."""
    per_dir = all(
        pooled.per_direction[d] is not None and abs(pooled.per_direction[d].slope - printed[d].slope) <= SLOPE_TOL
        for d in Direction
    )
    if per_dir:
        return "per-direction pooling of 176 points (11 games x 16 transitions)"
    dummy = pooled.direction_dummy
    if dummy is not None and all(abs(dummy.slope - printed[d].slope) <= SLOPE_TOL for d in Direction):
        return "352 points with a direction dummy"
    return "no pooling reproduces the printed totals"

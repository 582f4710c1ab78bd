"""Command-line entry point: ``paper-repro``, ``simulate``, ``analyze`` and ``validate``.

Exit codes: 0 success, 1 data/validation failure (or reproduction outside
tolerance), 2 usage error.  Every command that writes files also writes a
``manifest.json``; it is the only file carrying a timestamp.
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import os
import sys
from pathlib import Path

from maxent_transitions import __version__, fixtures, kernels
from maxent_transitions.analysis import analyze_dataset, entropy_summary
from maxent_transitions.errors import InvalidInputError, MaxEntTransitionsError, ParseError, ValidationError
from maxent_transitions.fixtures import FIXTURE_VERSION, GAME_IDS, load_paper_fixture, parse_game_selector
from maxent_transitions.game import GameKind, PayoffMatrix, classify_game
from maxent_transitions.maxent import NORMALIZATIONS
from maxent_transitions.repro import reproduce_paper
from maxent_transitions.report import (
    FORMATS,
    aggregates_table,
    counts_table,
    dumps,
    expected_table,
    gof_records,
    mean_points_table,
    plot_points,
    predictions_records,
    regression_table,
)
from maxent_transitions.sessions import parse_sessions, serialize_sessions, validate_dataset
from maxent_transitions.simulate import SimConfig, simulate_experiment

OUT_ENV = "MAXENT_TRANSITIONS_OUT"
DEFAULT_OUT = "maxent_out"
MANIFEST = "manifest.json"


class UsageError(Exception):
    pass


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _out_dir(args) -> Path:
    return Path(args.out or os.environ.get(OUT_ENV) or DEFAULT_OUT)


class _Writer:
    """Writes artifacts and remembers their digests for the manifest."""

    def __init__(self, root: Path):
        self.root = root
        self.artifacts: dict[str, str] = {}

    def write(self, name: str, text: str) -> Path:
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        data = text.encode("utf-8")
        path.write_bytes(data)
        self.artifacts[name] = _sha256(data)
        return path

    def manifest(self, command: str, config: dict, inputs: dict[str, str], seed: int | None = None,
                 name: str = MANIFEST) -> Path:
        doc = {
            "command": command,
            "config": config,
            "inputs": inputs,
            "artifacts": dict(sorted(self.artifacts.items())),
            "version": __version__,
            "backend": kernels.BACKEND,
            "seed": seed,
            "created": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
        }
        path = self.root / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(doc), encoding="utf-8")
        return path


def _confidence(value: str) -> float:
    try:
        level = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 < level < 1.0:
        raise argparse.ArgumentTypeError("confidence must lie in (0, 1)")
    return level


def _seed(value: str) -> int:
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


# --- paper-repro --------------------------------------------------------------

def cmd_paper_repro(args) -> int:
    try:
        games = parse_game_selector(args.games)
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    repro = reproduce_paper(games, level=args.confidence)
    ext = args.format
    out = _Writer(_out_dir(args))
    out.write(f"mean_points.{ext}", mean_points_table(repro.analyses).render(ext))
    out.write(f"expected.{ext}", expected_table(repro.analyses).render(ext))
    out.write(f"regression.{ext}", regression_table(repro.analyses, repro.pooled).render(ext))
    out.write(f"diff.{ext}", repro.diff_table().render(ext))
    out.write("plot_points.json", dumps(plot_points(repro.analyses)))
    out.write("summary.json", dumps(repro.summary()))
    out.manifest(
        "paper-repro",
        {"games": games, "confidence": args.confidence, "format": ext},
        {f"fixtures v{FIXTURE_VERSION}": _sha256(Path(fixtures.__file__).read_bytes())},
    )
    failures = repro.failures()
    for d in failures:
        print(f"FAIL {d.table} {d.game} {d.cell}: printed {d.printed}, recomputed {d.recomputed}", file=sys.stderr)
    summary = repro.summary()
    for name, t in summary["tables"].items():
        print(f"{name}: {t['cells']} cells, {t['failures']} outside tolerance, max |dev| {t['max_abs_deviation']}")
    print("reproduction ok" if repro.ok else "reproduction FAILED")
    return 0 if repro.ok else 1


# --- simulate -----------------------------------------------------------------

def _load_config(path: str) -> tuple[SimConfig, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    try:
        return SimConfig.from_json(raw.decode("utf-8")), raw
    except (InvalidInputError, UnicodeDecodeError) as exc:
        raise UsageError(f"invalid config: {exc}") from None


def cmd_simulate(args) -> int:
    cfg, raw = _load_config(args.config)
    if args.seed is not None:
        cfg = SimConfig.from_dict({**cfg.to_dict(), "master_seed": args.seed})
    target = Path(args.out) if args.out else _out_dir(args)
    if target.suffix.lower() == ".csv":
        out, name, manifest_name = _Writer(target.parent), target.name, f"{target.stem}.manifest.json"
    else:
        out, name, manifest_name = _Writer(target), "sessions.csv", MANIFEST
    dataset = simulate_experiment(cfg, workers=args.workers)
    path = out.write(name, serialize_sessions(dataset))
    out.manifest("simulate", cfg.to_dict(), {args.config: _sha256(raw)}, seed=cfg.master_seed, name=manifest_name)
    print(f"wrote {dataset.n_records} records ({cfg.pairs} pairs x {cfg.rounds} rounds) to {path}")
    return 0


# --- analyze / validate -------------------------------------------------------

def _resolve_game(spec: str | None) -> tuple[str, PayoffMatrix | None, bytes | None]:
    """A fixture id (payoffs from the embedded table) or a path to a JSON payoff object."""
    if spec is None:
        return "data", None, None
    if spec.lower() in GAME_IDS:
        gid = spec.lower()
        return gid, load_paper_fixture(gid).payoffs, None
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"--game must be one of {', '.join(GAME_IDS)} or a JSON file, got {spec!r}")
    raw = path.read_bytes()
    try:
        data = json.loads(raw)
        if isinstance(data, dict) and "game" in data:
            data = data["game"]
        return "data", PayoffMatrix.from_dict(data), raw
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"invalid game file {spec}: {exc}") from None


def _read_dataset(path: str, game: PayoffMatrix | None):
    """Returns (dataset, raw bytes) or prints the failure report and returns (None, raw)."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        print(dumps({"ok": False, "violations": [f"cannot read {path}: {exc}"]}), end="", file=sys.stderr)
        return None, None
    try:
        return parse_sessions(raw.decode("utf-8"), game), raw
    except ValidationError as exc:
        violations = exc.violations
    except (ParseError, UnicodeDecodeError) as exc:
        violations = [str(exc)]
    print(dumps({"ok": False, "violations": violations}), end="", file=sys.stderr)
    return None, raw


def cmd_analyze(args) -> int:
    game_id, game, game_raw = _resolve_game(args.game)
    dataset, raw = _read_dataset(args.csv, game)
    if dataset is None:
        return 1
    try:
        a = analyze_dataset(dataset, game_id=game_id, normalization=args.normalization, level=args.confidence)
    except MaxEntTransitionsError as exc:
        print(dumps({"ok": False, "violations": [str(exc)]}), end="", file=sys.stderr)
        return 1
    ext = args.format
    analyses = {game_id: a}
    out = _Writer(_out_dir(args))
    out.write(f"counts.{ext}", counts_table(analyses).render(ext))
    out.write(f"aggregates.{ext}", aggregates_table(a).render(ext))
    out.write(f"expected.{ext}", expected_table(analyses).render(ext))
    out.write(f"expected_exact.{ext}", expected_table(analyses, rounded=False).render(ext))
    out.write(f"regression.{ext}", regression_table(analyses).render(ext))
    out.write("gof.json", dumps(gof_records(a)))
    out.write("predictions.json", dumps(predictions_records(a)))
    out.write("plot_points.json", dumps(plot_points(analyses)))
    out.write("entropy.json", dumps(entropy_summary(a)))
    summary = {
        "game": game_id,
        "pairs": dataset.n_pairs,
        "rounds": dataset.rounds,
        "transitions": a.counts.n_transitions,
        "missing_rows": [f"{d.value}:{s.label}" for d, s in a.expected.missing()],
        "regression": {d.value: (r.to_dict() if r else None) for d, r in a.regressions.items()},
        "regression_errors": {d.value: msg for d, msg in a.regression_errors.items()},
    }
    if game is not None:
        cls = classify_game(game)
        summary["payoffs"] = game.to_dict()
        summary["game_class"] = cls.kind.value
        summary["msne"] = list(cls.msne) if cls.kind is GameKind.UNIQUE_MIXED_NE else None
    out.write("summary.json", dumps(summary))
    inputs = {args.csv: _sha256(raw)}
    if game_raw is not None:
        inputs[args.game] = _sha256(game_raw)
    out.manifest(
        "analyze",
        {"game": game_id, "confidence": args.confidence, "normalization": args.normalization, "format": ext},
        inputs,
    )
    for direction, reg in a.regressions.items():
        if reg is not None:
            print(f"{direction.value}: slope {reg.slope:.4f} [{reg.slope_ci[0]:.4f}, {reg.slope_ci[1]:.4f}], "
                  f"intercept {reg.intercept:.3f} [{reg.intercept_ci[0]:.3f}, {reg.intercept_ci[1]:.3f}]")
        else:
            print(f"{direction.value}: regression undefined ({a.regression_errors[direction]})")
    return 0


def cmd_validate(args) -> int:
    dataset, _ = _read_dataset(args.csv, None)
    if dataset is None:
        return 1
    report = validate_dataset(dataset)
    print(dumps({"ok": report.ok, "pairs": dataset.n_pairs, "rounds": dataset.rounds,
                 "records": dataset.n_records, "violations": report.violations}), end="")
    return 0 if report.ok else 1


# --- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help=f"output directory (default: ${OUT_ENV} or ./{DEFAULT_OUT})")

    tables = argparse.ArgumentParser(add_help=False)
    tables.add_argument("--confidence", type=_confidence, default=0.99, help="regression CI level (default 0.99)")
    tables.add_argument("--format", choices=FORMATS, default="csv", help="table format (default csv)")

    parser = argparse.ArgumentParser(prog="maxent-transitions", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paper-repro", parents=[common, tables],
                       help="regenerate the mean-point, expected and regression tables and diff them")
    p.add_argument("--games", default="all", help="'all' or comma-separated ids, e.g. g1,g4")
    p.set_defaults(func=cmd_paper_repro)

    p = sub.add_parser("simulate", parents=[common], help="simulate agents from a JSON config")
    p.add_argument("config", help="SimConfig JSON file")
    p.add_argument("--seed", type=_seed, help="override master_seed")
    p.add_argument("--workers", type=int, default=None, help="threads for pair simulation")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", parents=[common, tables], help="run the full chain on a session CSV")
    p.add_argument("csv", help="session CSV (pair_id,round,row_action,col_action)")
    p.add_argument("--game", help="fixture id g1..g11 or a JSON file with a, b, c, d, s")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="total",
                   help="scale expectations by direction totals or by forward observation counts")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("validate", help="lint a session CSV")
    p.add_argument("csv")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

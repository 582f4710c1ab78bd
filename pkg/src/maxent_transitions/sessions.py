"""Round-by-round session records: CSV ingestion, serialization and validation.

Session CSV layout::

    pair_id,round,row_action,col_action
    p1,1,U,L
    p1,2,D,L

Rounds are 1-based and ascending within a pair; records of different pairs may
interleave.  Actions are case-insensitive and map to indicators ``U=0, D=1``
(row) and ``L=0, R=1`` (column).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from maxent_transitions.errors import ParseError, ValidationError
from maxent_transitions.game import PayoffMatrix, SocialState

HEADER = ("pair_id", "round", "row_action", "col_action")

ROW_ACTIONS = {"U": 0, "D": 1}
COL_ACTIONS = {"L": 0, "R": 1}
ROW_SYMBOLS = ("U", "D")
COL_SYMBOLS = ("L", "R")


@dataclass(frozen=True)
class RoundRecord:
    pair_id: str
    round: int
    row_action: str
    col_action: str

    @property
    def state(self) -> SocialState:
        return SocialState.from_indicators(COL_ACTIONS[self.col_action], ROW_ACTIONS[self.row_action])


@dataclass(frozen=True, eq=False)
class PairSession:
    """One fixed pair's play; actions are stored as 0/1 indicator arrays."""

    pair_id: str
    row: np.ndarray
    col: np.ndarray

    def __post_init__(self) -> None:
        row = np.asarray(self.row, dtype=np.int8)
        col = np.asarray(self.col, dtype=np.int8)
        row.setflags(write=False)
        col.setflags(write=False)
        object.__setattr__(self, "row", row)
        object.__setattr__(self, "col", col)

    @property
    def rounds(self) -> int:
        return int(self.row.shape[0])

    def states(self) -> np.ndarray:
        """State indices ``2*i + j`` (i: column indicator, j: row indicator) per round."""
        return 2 * self.col.astype(np.int64) + self.row.astype(np.int64)

    def records(self) -> list[RoundRecord]:
        return [
            RoundRecord(self.pair_id, t + 1, ROW_SYMBOLS[r], COL_SYMBOLS[c])
            for t, (r, c) in enumerate(zip(self.row.tolist(), self.col.tolist()))
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairSession):
            return NotImplemented
        return (
            self.pair_id == other.pair_id
            and np.array_equal(self.row, other.row)
            and np.array_equal(self.col, other.col)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class SessionDataset:
    """All pairs of one game treatment.

    Construction does not validate; use :func:`validate_dataset` or build
    through :func:`parse_sessions`, which rejects malformed data.
    """

    game: PayoffMatrix | None
    pairs: tuple[PairSession, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    @property
    def rounds(self) -> int | None:
        """Common round count, or ``None`` when pairs disagree or there are none."""
        lengths = {p.rounds for p in self.pairs}
        return lengths.pop() if len(lengths) == 1 else None

    @property
    def meta(self) -> tuple[int, int | None]:
        return self.n_pairs, self.rounds

    @property
    def n_records(self) -> int:
        return sum(p.rounds for p in self.pairs)

    def records(self) -> list[RoundRecord]:
        return [rec for pair in self.pairs for rec in pair.records()]


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


def validate_dataset(d: SessionDataset) -> ValidationReport:
    """List every invariant violation in ``d``; an empty report means well-formed."""
    report = ValidationReport()
    if not d.pairs:
        report.violations.append("dataset contains no pairs")
        return report
    seen: set[str] = set()
    for pair in d.pairs:
        if pair.pair_id in seen:
            report.violations.append(f"duplicate pair id {pair.pair_id!r}")
        seen.add(pair.pair_id)
        if pair.row.shape != pair.col.shape or pair.row.ndim != 1:
            report.violations.append(f"pair {pair.pair_id!r}: row and column action arrays differ in shape")
            continue
        if pair.rounds and (pair.row.min() < 0 or pair.row.max() > 1 or pair.col.min() < 0 or pair.col.max() > 1):
            report.violations.append(f"pair {pair.pair_id!r}: action indicators must be 0 or 1")
    lengths = sorted({p.rounds for p in d.pairs})
    if len(lengths) > 1:
        detail = ", ".join(f"{p.pair_id}={p.rounds}" for p in d.pairs)
        report.violations.append(f"pairs have unequal round counts ({detail})")
    if lengths[0] < 2:
        report.violations.append("T >= 2 required for transitions")
    return report


def _canonical(symbol: str, table: dict[str, int], column: str, line: int) -> str:
    canon = symbol.strip().upper()
    if canon not in table:
        raise ParseError(f"unknown {column} symbol {symbol!r} (expected one of {', '.join(table)})", line)
    return canon


def parse_sessions(text: str | io.TextIOBase, game: PayoffMatrix | None = None) -> SessionDataset:
    """Parse session CSV text (or an open text stream) into a validated dataset."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty input", 1) from None
    if tuple(h.strip().lower() for h in header) != HEADER:
        raise ParseError(f"header must be {','.join(HEADER)}", 1)

    rows: dict[str, list[int]] = {}
    cols: dict[str, list[int]] = {}
    for fields in reader:
        line = reader.line_num
        if not fields or (len(fields) == 1 and not fields[0].strip()):
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", line)
        pair_id, round_text, row_sym, col_sym = (f.strip() for f in fields)
        if not pair_id:
            raise ParseError("empty pair_id", line)
        try:
            rnd = int(round_text)
        except ValueError:
            raise ParseError(f"round is not an integer: {round_text!r}", line) from None
        row = ROW_ACTIONS[_canonical(row_sym, ROW_ACTIONS, "row_action", line)]
        col = COL_ACTIONS[_canonical(col_sym, COL_ACTIONS, "col_action", line)]
        pair_rows = rows.setdefault(pair_id, [])
        expected = len(pair_rows) + 1
        if rnd != expected:
            kind = "duplicate" if rnd < expected else "gap"
            raise ValidationError(
                [f"pair {pair_id!r}: round {expected} expected, found {rnd} ({kind}) at line {line}"]
            )
        pair_rows.append(row)
        cols.setdefault(pair_id, []).append(col)

    dataset = SessionDataset(
        game=game,
        pairs=tuple(PairSession(pid, np.array(rows[pid]), np.array(cols[pid])) for pid in rows),
    )
    report = validate_dataset(dataset)
    if not report.ok:
        raise ValidationError(report.violations)
    return dataset


def read_sessions(path, game: PayoffMatrix | None = None) -> SessionDataset:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_sessions(fh, game)


def serialize_sessions(d: SessionDataset) -> str:
    """Session CSV text, pair-major, LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for pair in d.pairs:
        pid = pair.pair_id
        writer.writerows(
            (pid, t, ROW_SYMBOLS[r], COL_SYMBOLS[c])
            for t, (r, c) in enumerate(zip(pair.row.tolist(), pair.col.tolist()), start=1)
        )
    return buf.getvalue()

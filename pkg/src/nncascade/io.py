"""Text formats: points files, workloads, answers and the counters CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from typing import Iterable, List, Sequence, TextIO

from .counters import QueryCounters
from .geom import ExactPoint


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Op:
    kind: str  # "I" or "Q"
    point: ExactPoint


def _parse_pair(lineno: int, a: str, b: str) -> ExactPoint:
    try:
        return ExactPoint.parse(a, b)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad coordinates {a!r} {b!r}") from None


def _lines(src) -> Iterable[tuple]:
    for lineno, raw in enumerate(src, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_points(src: Iterable[str]) -> List[ExactPoint]:
    out = []
    for lineno, tok in _lines(src):
        if len(tok) != 2:
            raise ParseError(lineno, "expected 'x y'")
        out.append(_parse_pair(lineno, *tok))
    return out


def parse_workload(src: Iterable[str]) -> List[Op]:
    out = []
    for lineno, tok in _lines(src):
        if len(tok) != 3 or tok[0].upper() not in ("I", "Q"):
            raise ParseError(lineno, "expected 'I x y' or 'Q x y'")
        out.append(Op(tok[0].upper(), _parse_pair(lineno, tok[1], tok[2])))
    return out


def read_points(path: str) -> List[ExactPoint]:
    with open(path) as fh:
        return parse_points(fh)


def read_workload(path: str) -> List[Op]:
    with open(path) as fh:
        return parse_workload(fh)


def format_workload(ops: Sequence[Op]) -> str:
    return "".join(f"{op.kind} {op.point}\n" for op in ops)


def format_answers(answers: Sequence[ExactPoint]) -> str:
    return "".join(f"{a}\n" for a in answers)


@dataclass
class CounterRecord:
    op: int
    kind: str
    x: str
    y: str
    n: int
    rebuild_work: int
    predicates: int = 0
    locate: int = 0
    jumps: int = 0
    failures: int = 0
    overlay: int = 0
    piece: int = 0
    ray: int = 0
    fallbacks: int = 0
    bypasses: int = 0

    @classmethod
    def for_query(cls, op: int, p: ExactPoint, n: int, qc: QueryCounters) -> "CounterRecord":
        rec = cls(op, "Q", str(p.x), str(p.y), n, 0)
        for f in fields(qc):
            setattr(rec, f.name, getattr(qc, f.name))
        return rec


COUNTER_COLUMNS = [f.name for f in fields(CounterRecord)]
_SUMMED = COUNTER_COLUMNS[5:]


def write_counters(records: Sequence[CounterRecord], out: TextIO) -> None:
    """One row per operation, then a summary row of column totals."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COUNTER_COLUMNS)
    for r in records:
        w.writerow([getattr(r, c) for c in COUNTER_COLUMNS])
    last_n = records[-1].n if records else 0
    totals = {c: sum(getattr(r, c) for r in records) for c in _SUMMED}
    w.writerow([len(records), "summary", "", "", last_n] + [totals[c] for c in _SUMMED])


def counters_csv(records: Sequence[CounterRecord]) -> str:
    buf = io.StringIO()
    write_counters(records, buf)
    return buf.getvalue()

"""Truth-table text files and JSON report helpers.

File layout::

    q 3 n 2 kind pm1
    1
    -1
    ...

one value per line in flat order (x_n fastest). Kind tokens: ``pm1``,
``omega3`` (exponent v of exp(2 pi i v/3)), ``bool01``, ``int`` and
``complex`` (``<re> <im>``). The writer emits LF line endings and single
spaces; floats use the shortest round-tripping repr.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .domain import DiscreteFunction, DomainError, DomainSpec

SCHEMA_VERSION = 1

TOKENS = {
    "pm1": "two_valued_pm1",
    "omega3": "three_valued_omega",
    "bool01": "boolean01",
    "int": "integer",
    "complex": "complex",
}
KIND_TOKENS = {v: k for k, v in TOKENS.items()}


class TruthTableError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _column(raw: str, token_index: int) -> int:
    col, seen = 1, -1
    in_token = False
    for i, ch in enumerate(raw):
        if ch.isspace():
            in_token = False
        elif not in_token:
            in_token = True
            seen += 1
            if seen == token_index:
                return i + 1
    return len(raw) + 1


def _parse_header(raw: str) -> tuple[int, int, str]:
    parts = raw.split()
    if len(parts) != 6 or parts[0] != "q" or parts[2] != "n" or parts[4] != "kind":
        raise TruthTableError("header must read 'q <int> n <int> kind <token>'", 1)
    values = []
    for idx in (1, 3):
        try:
            values.append(int(parts[idx]))
        except ValueError:
            raise TruthTableError(f"expected an integer, got {parts[idx]!r}", 1, _column(raw, idx)) from None
    if parts[5] not in TOKENS:
        raise TruthTableError(f"unknown kind {parts[5]!r}; expected one of {', '.join(TOKENS)}",
                              1, _column(raw, 5))
    return values[0], values[1], TOKENS[parts[5]]


def parse_truth_table(text: str) -> DiscreteFunction:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TruthTableError("empty file", 1)
    q, n, kind = _parse_header(lines[0])
    try:
        spec = DomainSpec(q, n)
    except DomainError as exc:
        raise TruthTableError(str(exc), 1) from None
    body = lines[1:]
    if len(body) != spec.size:
        line = spec.size + 2 if len(body) > spec.size else len(lines) + 1
        raise TruthTableError(f"expected q^n = {spec.size} values, found {len(body)}", line)
    allowed = {
        "two_valued_pm1": {-1, 1},
        "three_valued_omega": {0, 1, 2},
        "boolean01": {0, 1},
    }.get(kind)
    values = []
    for i, raw in enumerate(body):
        lineno = i + 2
        parts = raw.split()
        if kind == "complex":
            if len(parts) != 2:
                raise TruthTableError("expected '<re> <im>'", lineno, _column(raw, min(len(parts), 2)))
            try:
                values.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise TruthTableError(f"bad number in {raw.strip()!r}", lineno) from None
            continue
        if len(parts) != 1:
            raise TruthTableError("expected exactly one integer", lineno, _column(raw, min(len(parts), 1)))
        try:
            v = int(parts[0])
        except ValueError:
            raise TruthTableError(f"expected an integer, got {parts[0]!r}", lineno, _column(raw, 0)) from None
        if allowed is not None and v not in allowed:
            raise TruthTableError(f"value {v} not allowed for kind {KIND_TOKENS[kind]}", lineno, _column(raw, 0))
        values.append(v)
    return DiscreteFunction(spec, kind, np.array(values))


def format_truth_table(f: DiscreteFunction) -> str:
    lines = [f"q {f.spec.q} n {f.spec.n} kind {KIND_TOKENS[f.kind]}"]
    if f.kind == "complex":
        lines.extend(f"{float(v.real)!r} {float(v.imag)!r}" for v in f.values)
    else:
        lines.extend(str(int(v)) for v in f.values)
    return "\n".join(lines) + "\n"


def read_truth_table(path: str | Path) -> DiscreteFunction:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_truth_table(fh.read())


def write_truth_table(f: DiscreteFunction, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_truth_table(f))


def round_sig(x: float, digits: int = 12) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.{digits}g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj))
    return obj


def dumps_report(report: dict) -> str:
    """Deterministic JSON with floats cut to 12 significant digits."""
    return json.dumps(_clean(report), indent=2) + "\n"

"""Reading SNC completion files, and the bundled library of completions.

File format: ``key = value`` lines, ``#`` comments, records separated by a
line holding only ``---``::

    name = A^2 via P^2
    interior = A(2)
    ambient = P(2)
    levels = [P(2), P(1)]

``interior``, ``ambient`` and ``levels`` are required; ``levels`` may span
several lines until its bracket closes.  Values use the variety syntax of
:mod:`motivic.parser`.  Every error carries the line it refers to.
"""

from __future__ import annotations

from pathlib import Path

from .duality import SNCData, snc_problems
from .errors import DomainError, ParseError
from .parser import parse_expr, parse_expr_list

__all__ = ["SNCFileError", "parse_snc", "load_snc", "snc_library", "gysin_library", "LIBRARY_SOURCE"]

_FIELDS = ("name", "interior", "ambient", "levels")


class SNCFileError(DomainError):
    """A syntactically fine file whose data violate the SNC invariants."""

    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _records(text: str):
    record, start = [], 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip() == "---":
            yield start, record
            record, start = [], lineno + 1
        else:
            record.append((lineno, raw))
    yield start, record


def _parse_record(lines) -> SNCData | None:
    values: dict[str, tuple[int, int, str]] = {}
    pending = None  # (key, line, col, text) while a levels list is still open
    for lineno, raw in lines:
        line = raw.split("#", 1)[0].rstrip()
        if pending is not None:
            key, l0, c0, acc = pending
            acc += "\n" + line
            if acc.count("[") <= acc.count("]"):
                values[key] = (l0, c0, acc)
                pending = None
            else:
                pending = (key, l0, c0, acc)
            continue
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, 1, raw)
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELDS:
            raise ParseError(f"unknown field {key!r}", lineno, 1, raw)
        if key in values:
            raise ParseError(f"duplicate field {key!r}", lineno, 1, raw)
        col = len(line) - len(value.lstrip()) + 1
        value = value.strip()
        if key == "levels" and value.count("[") > value.count("]"):
            pending = (key, lineno, col, value)
        else:
            values[key] = (lineno, col, value)
    if pending is not None:
        raise ParseError("unterminated levels list", pending[1], pending[2])
    if not values:
        return None
    first_line = min(v[0] for v in values.values())
    for key in ("interior", "ambient", "levels"):
        if key not in values:
            raise ParseError(f"missing field {key!r}", first_line, 1)

    def expr(key):
        l, c, v = values[key]
        return parse_expr(v, line=l, column=c)

    interior, ambient = expr("interior"), expr("ambient")
    l, c, v = values["levels"]
    levels = parse_expr_list(v, line=l, column=c)
    name = values["name"][2] if "name" in values else ""
    try:
        return SNCData(interior, ambient, tuple(levels), name=name)
    except DomainError:
        field_name, msg = snc_problems(interior, ambient, tuple(levels))[0]
        raise SNCFileError(msg, values[field_name][0]) from None


def parse_snc(text: str) -> list[SNCData]:
    out = []
    for _, lines in _records(text):
        rec = _parse_record(lines)
        if rec is not None:
            out.append(rec)
    if not out:
        raise ParseError("no SNC records found", 1, 1)
    return out


def load_snc(path: str | Path) -> list[SNCData]:
    return parse_snc(Path(path).read_text())


LIBRARY_SOURCE = """\
name = A^1 via P^1
interior = A(1)
ambient = P(1)
levels = [P(1), pt]
---
name = A^2 via P^2
interior = A(2)
ambient = P(2)
levels = [P(2), P(1)]
---
name = A^2 via P^1 x P^1
interior = A(2)
ambient = P(1) * P(1)
levels = [P(1) * P(1), P(1) + P(1), pt]
---
name = A^2 via the blown-up plane
# boundary: strict transform of a line through the blown-up point, plus the exceptional curve
interior = A(2)
ambient = bl(P(2); pt; 2)
levels = [bl(P(2); pt; 2), P(1) + P(1), pt]
---
name = A^3 via P^3
interior = A(3)
ambient = P(3)
levels = [P(3), P(2)]
---
name = A^3 via (P^1)^3
interior = A(3)
ambient = P(1) * P(1) * P(1)
levels = [P(1) * P(1) * P(1),
          P(1) * P(1) + P(1) * P(1) + P(1) * P(1),
          P(1) + P(1) + P(1),
          pt]
---
name = A^4 via P^4
interior = A(4)
ambient = P(4)
levels = [P(4), P(3)]
---
name = G_m via P^1
interior = T(1)
ambient = P(1)
levels = [P(1), pt + pt]
---
name = T^2 via P^1 x P^1
interior = T(2)
ambient = P(1) * P(1)
levels = [P(1) * P(1), (P(1) + P(1)) + (P(1) + P(1)), pt + pt + pt + pt]
---
name = T^3 via (P^1)^3
interior = T(3)
ambient = P(1) * P(1) * P(1)
levels = [P(1) * P(1) * P(1),
          P(1) * P(1) + P(1) * P(1) + P(1) * P(1) + P(1) * P(1) + P(1) * P(1) + P(1) * P(1),
          P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1) + P(1),
          pt + pt + pt + pt + pt + pt + pt + pt]
---
name = P^2 minus a line
interior = P(2) \\ P(1)
ambient = P(2)
levels = [P(2), P(1)]
---
name = P^3 minus a plane
interior = P(3) \\ P(2)
ambient = P(3)
levels = [P(3), P(2)]
---
name = P^1 x A^1 via P^1 x P^1
interior = P(1) * A(1)
ambient = P(1) * P(1)
levels = [P(1) * P(1), P(1)]
---
name = G_m x A^1 via P^1 x P^1
interior = T(1) * A(1)
ambient = P(1) * P(1)
levels = [P(1) * P(1), P(1) + P(1) + P(1), pt + pt]
---
name = P^1
interior = P(1)
ambient = P(1)
levels = [P(1)]
---
name = P^1 x P^1
interior = P(1) * P(1)
ambient = P(1) * P(1)
levels = [P(1) * P(1)]
---
name = P^2
interior = P(2)
ambient = P(2)
levels = [P(2)]
---
name = pt
interior = pt
ambient = pt
levels = [pt]
"""


def snc_library() -> dict[str, SNCData]:
    """The bundled completions, keyed by name."""
    return {d.name: d for d in parse_snc(LIBRARY_SOURCE)}


def gysin_library() -> list[tuple[SNCData, SNCData, SNCData]]:
    """``(X, D, X - D)`` triples for the Gysin relation."""
    lib = snc_library()
    return [
        (lib["P^1"], lib["pt"], lib["A^1 via P^1"]),
        (lib["P^1 x P^1"], lib["P^1"], lib["P^1 x A^1 via P^1 x P^1"]),
        (lib["P^2"], lib["P^1"], lib["A^2 via P^2"]),
    ]

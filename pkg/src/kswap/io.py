"""Plain-text instance files.

Format: a header line ``"n m"`` followed by one line with ``n``
space-separated decimal processing times.
"""

from __future__ import annotations

import re

from kswap.core import MAX_PROCESSING_TIME, Instance, InvalidInputError

_TOKEN = re.compile(r"\S+")


class InstanceParseError(InvalidInputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _integer(token: str, lineno: int, col: int, what: str) -> int:
    if not token.isdigit() or not token.isascii():
        if token.startswith("-") and token[1:].isdigit():
            raise InstanceParseError(f"{what} must be non-negative, got {token}", lineno, col)
        raise InstanceParseError(f"{what} is not a decimal integer: {token!r}", lineno, col)
    return int(token)


def parse_instance(text: str) -> Instance:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise InstanceParseError("missing header 'n m'", 1, 1)
    header = _tokens(lines[0])
    if len(header) != 2:
        col = header[2][1] if len(header) > 2 else len(lines[0]) + 1
        raise InstanceParseError(f"header must be 'n m', got {len(header)} fields", 1, col)
    n = _integer(header[0][0], 1, header[0][1], "job count")
    m = _integer(header[1][0], 1, header[1][1], "machine count")
    if n < 1:
        raise InstanceParseError("job count must be positive", 1, header[0][1])
    if m < 2:
        raise InstanceParseError("machine count must be at least 2", 1, header[1][1])

    body = lines[1] if len(lines) > 1 else ""
    values = _tokens(body)
    if len(values) != n:
        col = values[n][1] if len(values) > n else len(body) + 1
        raise InstanceParseError(f"expected {n} values, got {len(values)}", 2, col)
    p = []
    for token, col in values:
        v = _integer(token, 2, col, "processing time")
        if v >= MAX_PROCESSING_TIME:
            raise InstanceParseError("processing time must be below 2^126", 2, col)
        p.append(v)
    for extra, line in enumerate(lines[2:], start=3):
        if line.strip():
            raise InstanceParseError("trailing content after the processing times", extra,
                                     len(line) - len(line.lstrip()) + 1)
    return Instance(m, p)


def format_instance(instance: Instance) -> str:
    return f"{instance.n} {instance.m}\n{' '.join(str(x) for x in instance.p)}\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(instance))

"""Plain-text serialization for :class:`WindowedSet`.

Format::

    #window lo hi
    2-4
    7

The header fixes the half-open window. Each body line is an integer ``n`` or
an inclusive range ``a-b``; ranges may overlap and are unioned. Blank lines
and lines starting with ``#`` after the header are ignored.
"""

from __future__ import annotations

import re
from os import PathLike

from .errors import ParseError
from .setcore import WindowedSet

_TOKEN = re.compile(r"^(-?\d+)(?:-(-?\d+))?$")


def runs(s: WindowedSet):
    """Yield maximal runs of consecutive members as inclusive ``(a, b)`` pairs."""
    start = prev = None
    for n in s:
        if start is None:
            start = prev = n
        elif n == prev + 1:
            prev = n
        else:
            yield start, prev
            start = prev = n
    if start is not None:
        yield start, prev


def dumps(s: WindowedSet) -> str:
    lines = [f"#window {s.lo} {s.hi}"]
    for a, b in runs(s):
        lines.append(str(a) if a == b else f"{a}-{b}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> WindowedSet:
    lines = text.splitlines()
    header_at = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_at is None:
        raise ParseError("missing '#window lo hi' header", 1)
    parts = lines[header_at].split()
    if len(parts) != 3 or parts[0] != "#window":
        raise ParseError("expected '#window lo hi' header", header_at + 1)
    try:
        lo, hi = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError("window bounds must be integers", header_at + 1) from None
    if lo > hi:
        raise ParseError(f"window [{lo}, {hi}) is inverted", header_at + 1)

    bits = 0
    for lineno, raw in enumerate(lines[header_at + 1 :], start=header_at + 2):
        tok = raw.strip()
        if not tok or tok.startswith("#"):
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise ParseError(f"bad token {tok!r}", lineno)
        a = int(m.group(1))
        b = int(m.group(2)) if m.group(2) is not None else a
        if a > b:
            raise ParseError(f"range {tok!r} is decreasing", lineno)
        if a < lo or b >= hi:
            raise ParseError(f"{tok!r} lies outside window [{lo}, {hi})", lineno)
        bits |= ((1 << (b - a + 1)) - 1) << (a - lo)
    return WindowedSet(lo, hi, bits)


def parse_set_file(path: str | PathLike) -> WindowedSet:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def serialize_set_file(s: WindowedSet, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(s))

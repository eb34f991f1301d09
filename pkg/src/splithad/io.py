"""Plain-text artifact files.

Every file starts with a header line ``#<kind> <rows> <cols> [<extra>]``
followed by exactly ``rows`` body lines and a final newline.

====== =========================== ==================================
kind   body line                   extra header field
====== =========================== ==================================
phm    ``+``/``-`` per entry        block width (optional)
qhm    ``0``..``3`` (power of i)    block width (optional)
oa     space separated symbols     number of levels
bibd   ``0``/``1`` per entry        block width (optional)
lines  ``+``/``-`` per entry        target absolute inner product
====== =========================== ==================================

Writing is canonical, so writing what was read reproduces the bytes.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

import numpy as np

from .constructions import IncidenceMatrix, OrthogonalArray
from .errors import KindMismatch, ParseError
from .exactmat import BlockedMatrix
from .eqlines import LineSet
from .quaternary import QuatMatrix

__all__ = ["KINDS", "loads", "dumps", "read_artifact", "write_artifact", "golden_path", "kind_of"]

KINDS = ("phm", "qhm", "oa", "bibd", "lines")

_CHARS = {
    "phm": {"+": 1, "-": -1},
    "lines": {"+": 1, "-": -1},
    "qhm": {"0": 0, "1": 1, "2": 2, "3": 3},
    "bibd": {"0": 0, "1": 1},
}


def golden_path(name: str) -> Path:
    """Path of a shipped golden file, e.g. ``golden_path("ex_9x12.phm")``."""
    return Path(str(resources.files("splithad") / "golden" / name))


def _resolve(path) -> Path:
    p = Path(path)
    if not p.exists() and p.parts[:1] == ("golden",) and len(p.parts) == 2:
        g = golden_path(p.parts[1])
        if g.exists():
            return g
    return p


def _parse_header(line: str) -> tuple[str, int, int, int | None]:
    if not line.startswith("#"):
        raise ParseError("header must start with '#'", line=1, column=1)
    fields = line[1:].split(" ")
    if len(fields) not in (3, 4) or not all(fields):
        raise ParseError("header must be '#kind rows cols [extra]'", line=1)
    kind = fields[0]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", line=1, column=2)
    nums = []
    col = 2 + len(kind) + 1
    for f in fields[1:]:
        if not f.isdigit():
            raise ParseError(f"expected a non-negative integer, got {f!r}", line=1, column=col)
        nums.append(int(f))
        col += len(f) + 1
    extra = nums[2] if len(nums) == 3 else None
    return kind, nums[0], nums[1], extra


def _parse_body(kind: str, lines: list[str], rows: int, cols: int, extra: int | None) -> np.ndarray:
    if len(lines) < rows:
        raise ParseError(f"file ends after {len(lines)} of {rows} rows", line=len(lines) + 2)
    if len(lines) > rows:
        raise ParseError(f"unexpected content after {rows} rows", line=rows + 2)
    if kind == "oa":
        out = np.empty((rows, cols), dtype=np.int64)
        for r, text in enumerate(lines):
            parts = text.split(" ")
            if len(parts) != cols:
                raise ParseError(f"expected {cols} symbols, got {len(parts)}", line=r + 2)
            col = 1
            for c, tok in enumerate(parts):
                if not tok.isdigit() or (extra is not None and int(tok) >= extra):
                    raise ParseError(f"bad symbol {tok!r}", line=r + 2, column=col)
                out[r, c] = int(tok)
                col += len(tok) + 1
        return out
    table = _CHARS[kind]
    dtype = np.uint8 if kind == "qhm" else np.int8
    out = np.empty((rows, cols), dtype=dtype)
    for r, text in enumerate(lines):
        if len(text) != cols:
            raise ParseError(f"expected {cols} characters, got {len(text)}", line=r + 2)
        for c, ch in enumerate(text):
            v = table.get(ch)
            if v is None:
                raise ParseError(f"unexpected character {ch!r}", line=r + 2, column=c + 1)
            out[r, c] = v
    return out


def _incidence(table: np.ndarray, block_width: int | None) -> IncidenceMatrix:
    # design parameters are not stored; take them from row 0, column 0 and
    # the first off-diagonal concurrence so a verifier can test consistency
    t = table.astype(np.int64)
    r = int(t[0].sum()) if t.shape[0] else 0
    k = int(t[:, 0].sum()) if t.shape[1] else 0
    lam = int(t[0] @ t[1]) if t.shape[0] > 1 else 0
    return IncidenceMatrix(table, r=r, k=k, lam=lam, block_width=block_width)


def loads(text: str, expect: str | None = None):
    """Parse the text of an artifact file into its typed object."""
    if not text:
        raise ParseError("empty file", line=1)
    if not text.endswith("\n"):
        raise ParseError("missing final newline", line=text.count("\n") + 1)
    lines = text[:-1].split("\n")
    kind, rows, cols, extra = _parse_header(lines[0])
    if expect is not None and kind != expect:
        raise KindMismatch(f"expected a {expect!r} file, found {kind!r}")
    body = _parse_body(kind, lines[1:], rows, cols, extra)
    try:
        if kind == "phm":
            return BlockedMatrix(body, extra) if extra is not None else body
        if kind == "qhm":
            return QuatMatrix(body, extra)
        if kind == "oa":
            if extra is None:
                raise ParseError("oa header needs the number of levels", line=1)
            return OrthogonalArray(body, levels=extra)
        if kind == "bibd":
            return _incidence(body, extra)
        if extra is None:
            raise ParseError("lines header needs the target inner product", line=1)
        return LineSet(body, extra)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"body does not form a valid {kind}: {exc}", line=1) from exc


def kind_of(obj) -> str:
    if isinstance(obj, BlockedMatrix):
        return "phm"
    if isinstance(obj, QuatMatrix):
        return "qhm"
    if isinstance(obj, OrthogonalArray):
        return "oa"
    if isinstance(obj, IncidenceMatrix):
        return "bibd"
    if isinstance(obj, LineSet):
        return "lines"
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return "phm"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    kind = kind_of(obj)
    if kind == "phm":
        if isinstance(obj, BlockedMatrix):
            M, extra = obj.matrix, obj.block_width
        else:
            M, extra = np.asarray(obj), None
        rows = ["".join("+" if v > 0 else "-" for v in row) for row in M]
    elif kind == "lines":
        M, extra = obj.vectors, obj.target_abs_inner
        rows = ["".join("+" if v > 0 else "-" for v in row) for row in M]
    elif kind == "qhm":
        M, extra = obj.exponents, obj.block_width
        rows = ["".join(str(int(v)) for v in row) for row in M]
    elif kind == "bibd":
        M, extra = obj.table, obj.block_width
        rows = ["".join(str(int(v)) for v in row) for row in M]
    else:
        M, extra = obj.table, obj.levels
        rows = [" ".join(str(int(v)) for v in row) for row in M]
    header = f"#{kind} {M.shape[0]} {M.shape[1]}" + (f" {extra}" if extra is not None else "")
    return "\n".join([header, *rows]) + "\n"


def read_artifact(path, expect: str | None = None):
    p = _resolve(path)
    with open(p, encoding="ascii", newline="") as fh:
        try:
            text = fh.read()
        except UnicodeDecodeError as exc:
            raise ParseError(f"non-ASCII content: {exc}") from exc
    return loads(text, expect)


def write_artifact(obj, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(dumps(obj))

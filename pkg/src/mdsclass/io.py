"""Plain-text formats for codes, equivalence maps and matrices.

Code:      ``q n M`` then M lines of n space-separated symbols, sorted.
EquivMap:  ``n q``, then pi as n integers (1-based images), then n lines,
           line j holding sigma_j as the images of 0..q-1.
Matrix:    ``rows cols`` then one line per row.

Parse errors are ValueError with the 1-based line number in the message.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .codes import Code
from .equiv import EquivMap


def _lines(text: str) -> list[tuple[int, list[str]]]:
    return [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]


def _ints(no: int, toks: list[str], count: int | None = None) -> list[int]:
    try:
        vals = [int(t) for t in toks]
    except ValueError:
        raise ValueError(f"line {no}: expected integers, got {' '.join(toks)!r}") from None
    if count is not None and len(vals) != count:
        raise ValueError(f"line {no}: expected {count} integers, got {len(vals)}")
    return vals


def format_code(C: Code) -> str:
    out = [f"{C.q} {C.n} {C.size}"]
    out.extend(" ".join(str(int(x)) for x in row) for row in C.words)
    return "\n".join(out) + "\n"


def parse_code(text: str) -> Code:
    rows = _lines(text)
    if not rows:
        raise ValueError("line 1: empty code file")
    no, head = rows[0]
    q, n, M = _ints(no, head, 3)
    if len(rows) - 1 != M:
        raise ValueError(f"line {no}: header announces {M} words, file has {len(rows) - 1}")
    words = np.zeros((M, n), dtype=np.int64)
    for t, (no, toks) in enumerate(rows[1:]):
        vals = _ints(no, toks, n)
        if min(vals) < 0 or max(vals) >= q:
            raise ValueError(f"line {no}: symbol out of range 0..{q - 1}")
        words[t] = vals
    C = Code.from_words(words, q, n)
    if C.size != M:
        raise ValueError("duplicate words in code file")
    return C


def format_map(g: EquivMap) -> str:
    out = [f"{g.n} {g.q}", " ".join(str(p + 1) for p in g.pi)]
    out.extend(" ".join(str(x) for x in s) for s in g.sigma)
    return "\n".join(out) + "\n"


def parse_map(text: str) -> EquivMap:
    rows = _lines(text)
    if len(rows) < 2:
        raise ValueError("line 1: map file needs a header and a pi line")
    no, head = rows[0]
    n, q = _ints(no, head, 2)
    if len(rows) != n + 2:
        raise ValueError(f"line {no}: expected {n + 2} non-empty lines, got {len(rows)}")
    no, toks = rows[1]
    pi = tuple(p - 1 for p in _ints(no, toks, n))
    sigma = tuple(tuple(_ints(no, toks, q)) for no, toks in rows[2:])
    try:
        return EquivMap(n, q, pi, sigma)
    except ValueError as exc:
        raise ValueError(f"line {rows[1][0]}: {exc}") from None


def format_matrix(A) -> str:
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    out = [f"{A.shape[0]} {A.shape[1]}"]
    out.extend(" ".join(str(int(x)) for x in row) for row in A)
    return "\n".join(out) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = _lines(text)
    if not rows:
        raise ValueError("line 1: empty matrix file")
    no, head = rows[0]
    r, c = _ints(no, head, 2)
    if len(rows) - 1 != r:
        raise ValueError(f"line {no}: header announces {r} rows, file has {len(rows) - 1}")
    return np.array([_ints(no, toks, c) for no, toks in rows[1:]], dtype=np.int64).reshape(r, c)


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(path, C: Code) -> None:
    Path(path).write_text(format_code(C))

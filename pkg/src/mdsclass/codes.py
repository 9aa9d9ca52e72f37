"""Codes as sorted, duplicate-free arrays of words.

Coordinates in the public functions are 1-based (``shorten(C, 1, 0)`` acts on
the first coordinate); arrays are 0-based internally.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

WORD_DTYPE = np.uint8


def word_keys(words: np.ndarray, q: int) -> np.ndarray:
    """Base-q integer of each row, first coordinate most significant."""
    words = np.asarray(words)
    n = words.shape[1]
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return words.astype(np.int64) @ weights


def keys_to_words(keys: np.ndarray, q: int, n: int) -> np.ndarray:
    keys = np.asarray(keys, dtype=np.int64)
    out = np.empty((len(keys), n), dtype=WORD_DTYPE)
    k = keys.copy()
    for i in range(n - 1, -1, -1):
        out[:, i] = k % q
        k //= q
    return out


@dataclass(frozen=True, eq=False)
class Code:
    """A q-ary code: ``words`` is an (M, n) uint8 array in lexicographic order."""

    q: int
    words: np.ndarray

    def __post_init__(self):
        w = self.words
        if w.ndim != 2 or w.dtype != WORD_DTYPE or w.flags.writeable:
            raise ValueError("use Code.from_words to build a Code")

    @classmethod
    def from_words(cls, words, q: int, n: int | None = None) -> "Code":
        arr = np.asarray(words)
        if arr.size == 0:
            if n is None:
                n = arr.shape[1] if arr.ndim == 2 else 0
            arr = np.zeros((0, n), dtype=WORD_DTYPE)
        else:
            arr = np.atleast_2d(arr)
            if n is not None and arr.shape[1] != n:
                raise ValueError(f"expected words of length {n}, got {arr.shape[1]}")
            if arr.min() < 0 or arr.max() >= q:
                raise ValueError(f"symbols must lie in 0..{q - 1}")
            n = arr.shape[1]
            arr = keys_to_words(np.unique(word_keys(arr, q)), q, n)
        arr.setflags(write=False)
        return cls(q, arr)

    @classmethod
    def _from_sorted(cls, words: np.ndarray, q: int) -> "Code":
        words = np.ascontiguousarray(words, dtype=WORD_DTYPE)
        words.setflags(write=False)
        return cls(q, words)

    @property
    def n(self) -> int:
        return self.words.shape[1]

    @property
    def size(self) -> int:
        return self.words.shape[0]

    def __len__(self) -> int:
        return self.size

    def keys(self) -> np.ndarray:
        return word_keys(self.words, self.q)

    def __contains__(self, word) -> bool:
        key = int(word_keys(np.asarray(word, dtype=np.int64)[None, :], self.q)[0])
        keys = self.keys()
        pos = int(np.searchsorted(keys, key))
        return pos < len(keys) and keys[pos] == key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.q == other.q and self.words.shape == other.words.shape and bool(
            np.array_equal(self.words, other.words)
        )

    def __hash__(self) -> int:
        return hash((self.q, self.words.shape, self.words.tobytes()))

    def to_bytes(self) -> bytes:
        return bytes([self.q, self.n]) + self.words.tobytes()

    def __iter__(self):
        for row in self.words:
            yield tuple(int(x) for x in row)

    def __repr__(self) -> str:
        return f"Code(q={self.q}, n={self.n}, M={self.size})"

    def union(self, other: "Code") -> "Code":
        if other.q != self.q or other.n != self.n:
            raise ValueError("union of codes with different parameters")
        return Code.from_words(np.vstack([self.words, other.words]), self.q, self.n)

    def translate(self, word) -> "Code":
        """Coordinate-wise map x -> (x - word) mod q; an equivalence."""
        w = np.asarray(word, dtype=np.int64)
        return Code.from_words((self.words.astype(np.int64) - w) % self.q, self.q, self.n)


def code_from_iterable(words: Iterable[Iterable[int]], q: int) -> Code:
    return Code.from_words(np.array([list(w) for w in words], dtype=np.int64), q)


def shorten(C: Code, i: int, v: int) -> Code:
    """Delete coordinate i from the words having symbol v there."""
    if not 1 <= i <= C.n:
        raise ValueError(f"coordinate {i} out of range 1..{C.n}")
    rows = C.words[C.words[:, i - 1] == v]
    # removing a column from a sorted array whose column is constant keeps it sorted
    return Code._from_sorted(np.delete(rows, i - 1, axis=1), C.q)


def extend(C: Code, i: int, v: int) -> Code:
    """Insert constant symbol v as new coordinate i in every word."""
    if not 1 <= i <= C.n + 1:
        raise ValueError(f"coordinate {i} out of range 1..{C.n + 1}")
    if not 0 <= v < C.q:
        raise ValueError(f"symbol {v} out of range")
    words = np.insert(C.words, i - 1, v, axis=1)
    return Code._from_sorted(words, C.q)


def union_of_extensions(slices: dict[int, Code], i: int) -> Code:
    """The code U_v e(slices[v], i, v)."""
    parts = [extend(c, i, v).words for v, c in sorted(slices.items())]
    q = next(iter(slices.values())).q
    return Code.from_words(np.vstack(parts), q, parts[0].shape[1])


def min_distance(C: Code) -> int:
    """Exact minimum pairwise Hamming distance (chunked O(M^2 n))."""
    if C.size < 2:
        raise ValueError("minimum distance needs at least two codewords")
    w = C.words
    best = C.n
    chunk = max(1, 2_000_000 // max(1, C.size * C.n))
    for start in range(0, C.size - 1, chunk):
        block = w[start:start + chunk]
        d = (block[:, None, :] != w[None, :, :]).sum(axis=2)
        rows = np.arange(len(block))
        d[rows, rows + start] = C.n + 1
        best = min(best, int(d.min()))
    return best


def has_min_distance_3(C: Code) -> bool:
    """True iff all distinct words are at distance >= 3.

    Two words at distance <= 2 agree after deleting some pair of coordinates,
    so it suffices that every projection onto n-2 coordinates is injective.
    """
    n, q = C.n, C.q
    if C.size < 2:
        return True
    if n < 3:
        return False
    keys_full = C.words.astype(np.int64)
    for i, j in itertools.combinations(range(n), 2):
        rest = [t for t in range(n) if t not in (i, j)]
        keys = word_keys(keys_full[:, rest], q)
        if len(np.unique(keys)) != len(keys):
            return False
    return True


def is_mds_d3(C: Code) -> bool:
    """Check an (n, q^(n-2), 3)_q code via bijective projections."""
    n, q = C.n, C.q
    if n < 3 or C.size != q ** (n - 2):
        return False
    target = q ** (n - 2)
    w = C.words.astype(np.int64)
    for i, j in itertools.combinations(range(n), 2):
        rest = [t for t in range(n) if t not in (i, j)]
        keys = word_keys(w[:, rest], q)
        counts = np.bincount(keys, minlength=target)
        if counts.max() != 1:
            return False
    return True


def _ball_sizes(n: int, q: int) -> int:
    return 1 + n * (q - 1)


def is_perfect_d3(C: Code) -> bool:
    """Radius-1 balls around the codewords tile F_q^n.

    The ball elements are marked in an occupancy array over q^n words, one
    block per value of the first coordinate.  Since the ball sizes sum to
    q^n exactly, full coverage is equivalent to disjointness.
    """
    n, q = C.n, C.q
    total = q**n
    ball = _ball_sizes(n, q)
    if total % ball or C.size != total // ball:
        return False
    block = q ** (n - 1)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    keys = C.keys()
    first = C.words[:, 0].astype(np.int64)
    for a in range(q):
        occ = np.zeros(block, dtype=bool)
        inside = first == a
        base = keys[inside] - a * block
        # words of this block: the codewords themselves and their neighbours
        # differing outside coordinate 1
        occ[base] = True
        sub = C.words[inside].astype(np.int64)
        for i in range(1, n):
            for delta in range(1, q):
                nv = (sub[:, i] + delta) % q
                occ[base + (nv - sub[:, i]) * weights[i]] = True
        # neighbours of codewords outside the block, changed at coordinate 1
        occ[keys[~inside] - first[~inside] * block] = True
        if not occ.all():
            return False
    return True


def singleton_bound(n: int, d: int, q: int) -> int:
    if not n >= d >= 1:
        raise ValueError("need n >= d >= 1")
    return q ** (n - d + 1)


def hamming_bound(n: int, d: int, q: int) -> int:
    if not n >= d >= 1:
        raise ValueError("need n >= d >= 1")
    t = (d - 1) // 2
    vol = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    return q**n // vol


def all_words(q: int, n: int) -> np.ndarray:
    return keys_to_words(np.arange(q**n, dtype=np.int64), q, n)


def repetition_code(q: int, n: int = 3) -> Code:
    return Code.from_words(np.repeat(np.arange(q)[:, None], n, axis=1), q, n)

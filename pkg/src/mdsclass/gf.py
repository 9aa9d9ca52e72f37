"""Small finite fields GF(q), q in {2, 3, 4, 5, 7, 8, 9}, as lookup tables.

Elements are the integers 0..q-1.  For prime q this is arithmetic mod q.
For q = p^r an element a_{r-1} x^{r-1} + ... + a_1 x + a_0 is stored as the
integer with base-p digits a_{r-1}...a_0, so in characteristic 2 addition
is XOR.  Reduction polynomials:

    q = 4:  x^2 + x + 1
    q = 8:  x^3 + x^2 + 1   (the representation used for the GF(8) tables)
    q = 9:  x^2 + 1

Another irreducible polynomial can be passed to :func:`field_new` as its
low-order coefficients, e.g. ``field_new(8, (1, 1, 0))`` for x^3 + x + 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# (p, r, reduction polynomial coefficients low -> high, without the leading 1)
_EXTENSIONS = {
    4: (2, 2, (1, 1)),
    8: (2, 3, (1, 0, 1)),
    9: (3, 2, (1, 0)),
}


def _digits(x: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _poly_mul(a: int, b: int, p: int, r: int, red) -> int:
    da, db = _digits(a, p, r), _digits(b, p, r)
    prod = [0] * (2 * r - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # x^r = -(red[0] + red[1] x + ... )
    for deg in range(2 * r - 2, r - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for t, rc in enumerate(red):
                prod[deg - r + t] = (prod[deg - r + t] - c * rc) % p
    return _undigits(prod[:r], p)


@dataclass(frozen=True, eq=False)
class Field:
    """Operation tables for GF(q).  Construct with :func:`field_new`."""

    q: int
    char: int
    degree: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    primitive: int = 0

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def sub(self, x: int, y: int) -> int:
        return int(self.add_table[x, self.neg_table[y]])

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.inv_table[x])

    def power(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, x)
        return out

    def additive_basis(self) -> list[int]:
        """The elements p^0, ..., p^(r-1): a basis of (F, +) over GF(p)."""
        return [self.char**t for t in range(self.degree)]

    def additive_automorphisms(self) -> list[np.ndarray]:
        """All bijections F -> F that preserve addition, as image arrays.

        These form GL(r, p); for prime q they are the q-1 scalings.
        """
        p, r = self.char, self.degree
        span = _span_table(self)
        out = []
        for images in itertools.product(range(1, self.q), repeat=r):
            table = np.zeros(self.q, dtype=np.int64)
            for x in range(self.q):
                ds = _digits(x, p, r)
                acc = 0
                for d, img in zip(ds, images):
                    acc = self.add_table[acc, span[d, img]]
                table[x] = acc
            if len(set(table.tolist())) == self.q:
                out.append(table)
        return out

    def __repr__(self) -> str:
        return f"GF({self.q})"


def _span_table(F: Field) -> np.ndarray:
    """span[d, x] = x added to itself d times (d < p)."""
    out = np.zeros((F.char, F.q), dtype=np.int64)
    for x in range(F.q):
        acc = 0
        for d in range(F.char):
            out[d, x] = acc
            acc = F.add_table[acc, x]
    return out


@lru_cache(maxsize=None)
def field_new(q: int, reduction: tuple[int, ...] | None = None) -> Field:
    """Build (and memoize) GF(q); the axioms are checked exhaustively.

    ``reduction`` overrides the default polynomial of a prime-power order:
    coefficients c_0..c_{r-1} of x^r + c_{r-1} x^{r-1} + ... + c_0.
    A reducible polynomial fails the axiom check with ValueError.
    """
    if q not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported field order {q}; expected one of {SUPPORTED_ORDERS}")
    if reduction is not None and q not in _EXTENSIONS:
        raise ValueError(f"GF({q}) is a prime field; no reduction polynomial applies")
    if q in _EXTENSIONS:
        p, r, red = _EXTENSIONS[q]
        if reduction is not None:
            if len(reduction) != r or any(not 0 <= c < p for c in reduction):
                raise ValueError(f"need {r} coefficients in 0..{p - 1}, got {reduction}")
            red = tuple(reduction)
        add = np.array(
            [[_undigits([(a + b) % p for a, b in zip(_digits(x, p, r), _digits(y, p, r))], p)
              for y in range(q)] for x in range(q)],
            dtype=np.int64,
        )
        mul = np.array(
            [[_poly_mul(x, y, p, r, red) for y in range(q)] for x in range(q)],
            dtype=np.int64,
        )
    else:
        p, r = q, 1
        xs = np.arange(q)
        add = (xs[:, None] + xs[None, :]) % q
        mul = (xs[:, None] * xs[None, :]) % q
    neg = np.array([int(np.flatnonzero(add[x] == 0)[0]) for x in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        ones = np.flatnonzero(mul[x] == 1)
        if len(ones) != 1:
            raise ValueError(f"{x} has no inverse: the reduction polynomial is reducible")
        inv[x] = int(ones[0])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    prim = _smallest_primitive(mul, q)
    F = Field(q, p, r, add, mul, neg, inv, prim)
    check_axioms(F)
    return F


def _smallest_primitive(mul: np.ndarray, q: int) -> int:
    for g in range(2 if q > 2 else 1, q):
        seen, x = set(), 1
        for _ in range(q - 1):
            x = int(mul[x, g])
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise ValueError("no primitive element")


def _require(cond, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def check_axioms(F: Field) -> None:
    """Exhaustive field-axiom check over all triples; raises AssertionError."""
    q, add, mul = F.q, F.add_table, F.mul_table
    xs = np.arange(q)
    for t in (add, mul):
        _require(np.array_equal(t, t.T), "operation not commutative")
    _require(np.array_equal(add[0], xs) and np.array_equal(mul[1], xs), "bad identities")
    _require(np.all(mul[0] == 0), "0 is not absorbing")
    # group tables: every row a permutation
    for x in range(q):
        _require(len(set(add[x].tolist())) == q, "addition row not a permutation")
        if x:
            _require(len(set(mul[x, 1:].tolist())) == q - 1, "zero divisor")
    assoc_add = add[add[xs[:, None, None], xs[None, :, None]], xs[None, None, :]]
    _require(np.array_equal(assoc_add, add[xs[:, None, None], add[xs[None, :, None], xs[None, None, :]]]), "addition not associative")
    assoc_mul = mul[mul[xs[:, None, None], xs[None, :, None]], xs[None, None, :]]
    _require(np.array_equal(assoc_mul, mul[xs[:, None, None], mul[xs[None, :, None], xs[None, None, :]]]), "multiplication not associative")
    lhs = mul[xs[:, None, None], add[xs[None, :, None], xs[None, None, :]]]
    rhs = add[mul[xs[:, None, None], xs[None, :, None]], mul[xs[:, None, None], xs[None, None, :]]]
    _require(np.array_equal(lhs, rhs), "distributivity fails")

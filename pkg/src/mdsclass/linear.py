"""Linear codes over GF(q): parity-check normal form, kernels, subspace test."""

from __future__ import annotations

import numpy as np

from .codes import Code
from .gf import Field, field_new


def row_reduce(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of A over F; returns (R, pivot columns).

    Works column by column on all rows at once, so it is fine for tall
    matrices such as the full word list of a code.
    """
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    R = np.array(A, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = mul[F.inv(int(R[r, c])), R[r]]
        factors = R[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if len(hit):
            # row -= factor * pivot_row
            R[hit] = add[R[hit], neg[mul[factors[hit][:, None], R[r][None, :]]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A: np.ndarray) -> int:
    return len(row_reduce(F, A)[1])


def kernel_basis(F: Field, H: np.ndarray) -> np.ndarray:
    """Rows spanning {c : H c^T = 0}."""
    H = np.atleast_2d(np.asarray(H, dtype=np.int64))
    n = H.shape[1]
    R, pivots = row_reduce(F, H)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, pc in enumerate(pivots):
            basis[t, pc] = F.neg_table[R[row, f]]
    return basis


def span_code(F: Field, G: np.ndarray) -> Code:
    """All F-linear combinations of the rows of G (assumed independent)."""
    G = np.atleast_2d(np.asarray(G, dtype=np.int64))
    k, n = G.shape
    q = F.q
    words = np.zeros((q**k, n), dtype=np.int64)
    coeffs = np.arange(q**k, dtype=np.int64)
    for t in range(k - 1, -1, -1):
        c = coeffs % q
        coeffs //= q
        words = F.add_table[words, F.mul_table[c[:, None], G[t][None, :]]]
    return Code.from_words(words, q, n)


def kernel_code(F: Field, H: np.ndarray) -> Code:
    """{c : H c = 0}, enumerated from a generator basis."""
    return span_code(F, kernel_basis(F, H))


def mds_parity_check(F: Field, n: int) -> np.ndarray:
    """The 2 x n matrix [[0,1,1,...,1],[1,0,1,a,a^2,...,a^(n-2)]], a primitive."""
    if n < 3:
        raise ValueError("need n >= 3")
    if n > F.q + 1:
        raise ValueError(f"no (n, q^(n-2), 3)_q linear code with n={n} > q+1={F.q + 1}")
    a = F.primitive
    top = [0] + [1] * (n - 1)
    bottom = [1, 0] + [F.power(a, e) for e in range(n - 2)]
    return np.array([top, bottom], dtype=np.int64)


def linear_mds(q: int, n: int) -> Code:
    F = field_new(q)
    return kernel_code(F, mds_parity_check(F, n))


def hamming_code(F: Field) -> Code:
    """The perfect (q+1, q^(q-1), 3)_q code."""
    return kernel_code(F, mds_parity_check(F, F.q + 1))


def is_subspace(C: Code, F: Field) -> bool:
    """C contains 0 and is closed under + and scalar multiplication.

    Since C lies in its own span, this holds iff |C| = q^rank(C) and 0 is in C.
    """
    if C.size == 0:
        return False
    if (0,) * C.n not in C:
        return False
    r = rank(F, C.words)
    return C.size == F.q**r


def pairwise_independent_columns(F: Field, H: np.ndarray) -> bool:
    H = np.asarray(H, dtype=np.int64)
    for i in range(H.shape[1]):
        for j in range(i + 1, H.shape[1]):
            if rank(F, H[:, [i, j]]) < 2:
                return False
    return True

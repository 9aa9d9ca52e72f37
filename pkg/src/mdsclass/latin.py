"""Latin hypercubes, Graeco-Latin pairs and their linearity.

A hypercube of order q and dimension k is stored as a flat array of q^k
symbols in row-major order (x_1 varies slowest).  The code of a hypercube f
is {(x_1, ..., x_k, f(x))}; the code of a tuple (f_1, ..., f_r) is
{(x, f_1(x), ..., f_r(x))}.

Linearity is decided over the field tables of :mod:`mdsclass.gf`.  A
hypercube f is linear when a_0(f(x)) = a_1(x_1) + ... + a_k(x_k) for symbol
permutations a_j.  Fixing a_j(0) = 0 (constants can be pushed into a_0)
gives a_j = a_0 o (axis slice j), and then
``u (+) v = f(slice_1^-1(u), slice_2^-1(v), 0, ..., 0)`` is the group that
a_0 must carry onto (F, +).  So the test builds that table, checks it is
an elementary abelian group of order q, picks an isomorphism and verifies
every entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import Code, WORD_DTYPE, all_words
from .gf import Field, field_new


@dataclass(frozen=True, eq=False)
class Hypercube:
    q: int
    k: int
    values: np.ndarray  # flat, length q^k

    def __post_init__(self):
        if self.values.shape != (self.q**self.k,):
            raise ValueError(f"expected {self.q ** self.k} values, got shape {self.values.shape}")

    @classmethod
    def from_array(cls, arr, q: int | None = None) -> "Hypercube":
        arr = np.asarray(arr, dtype=np.int64)
        q = arr.shape[0] if q is None else q
        k = arr.ndim
        if any(s != q for s in arr.shape):
            raise ValueError("every axis must have length q")
        vals = arr.ravel().copy()
        vals.setflags(write=False)
        return cls(q, k, vals)

    @classmethod
    def from_function(cls, fn, q: int, k: int) -> "Hypercube":
        """Tabulate fn(x) for x in F_q^k; fn gets an (q^k, k) array of positions."""
        pos = all_words(q, k).astype(np.int64)
        return cls.from_array(np.asarray(fn(pos), dtype=np.int64).reshape((q,) * k), q)

    def array(self) -> np.ndarray:
        return self.values.reshape((self.q,) * self.k)

    def __getitem__(self, x) -> int:
        return int(self.array()[tuple(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypercube):
            return NotImplemented
        return self.q == other.q and self.k == other.k and bool(np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.q, self.k, self.values.tobytes()))

    def axis_slice(self, j: int) -> np.ndarray:
        """f(0, ..., x, ..., 0) for x in 0..q-1, x at 0-based axis j."""
        idx = [0] * self.k
        idx[j] = slice(None)
        return self.array()[tuple(idx)].copy()

    def fix(self, axis: int, value: int) -> "Hypercube":
        """The (k-1)-dimensional hypercube with argument ``axis`` (0-based) fixed."""
        return Hypercube.from_array(np.take(self.array(), value, axis=axis), self.q)


def is_latin(f: Hypercube) -> bool:
    a = f.array()
    if a.min() < 0 or a.max() >= f.q:
        return False
    target = np.arange(f.q)
    for ax in range(f.k):
        lines = np.sort(np.moveaxis(a, ax, -1).reshape(-1, f.q), axis=1)
        if not np.array_equal(lines, np.broadcast_to(target, lines.shape)):
            return False
    return True


# -- codes <-> hypercubes ----------------------------------------------------

def tuple_from_code(C: Code, r: int) -> list[Hypercube]:
    """Read f_1..f_r off the last r coordinates, positions from the first k."""
    n, q = C.n, C.q
    k = n - r
    if k < 1:
        raise ValueError("need at least one position coordinate")
    if C.size != q**k:
        raise ValueError(f"need {q ** k} words for dimension {k}, got {C.size}")
    w = C.words.astype(np.int64)
    pos = w[:, :k] @ (q ** np.arange(k - 1, -1, -1, dtype=np.int64))
    if len(np.unique(pos)) != len(pos):
        raise ValueError("two codewords share a position: minimum distance too small")
    out = []
    for t in range(r):
        vals = np.empty(q**k, dtype=np.int64)
        vals[pos] = w[:, k + t]
        f = Hypercube.from_array(vals.reshape((q,) * k), q)
        if not is_latin(f):
            raise ValueError(f"hypercube {t + 1} is not Latin: minimum distance too small")
        out.append(f)
    return out


def code_from_tuple(fs: list[Hypercube]) -> Code:
    q, k = fs[0].q, fs[0].k
    pos = all_words(q, k)
    cols = [f.values.astype(WORD_DTYPE)[:, None] for f in fs]
    return Code.from_words(np.hstack([pos, *cols]), q, k + len(fs))


def hypercube_from_code(C: Code) -> Hypercube:
    return tuple_from_code(C, 1)[0]


def code_from_hypercube(f: Hypercube) -> Code:
    return code_from_tuple([f])


def pair_from_code(C: Code) -> tuple[Hypercube, Hypercube]:
    f, g = tuple_from_code(C, 2)
    if not are_orthogonal(f, g):
        raise ValueError("the two hypercubes are not orthogonal: minimum distance below 3")
    return f, g


def code_from_pair(f: Hypercube, g: Hypercube) -> Code:
    return code_from_tuple([f, g])


def are_orthogonal(f: Hypercube, g: Hypercube) -> bool:
    """Every q x q subarray of the superimposition shows all q^2 pairs."""
    if (f.q, f.k) != (g.q, g.k):
        raise ValueError("hypercubes of different shapes")
    if f.k < 2:
        raise ValueError("orthogonality needs dimension >= 2")
    q = f.q
    both = f.array() * q + g.array()
    target = np.arange(q * q)
    for a, b in itertools.combinations(range(f.k), 2):
        sub = np.moveaxis(both, (a, b), (-2, -1)).reshape(-1, q * q)
        if not np.array_equal(np.sort(sub, axis=1), np.broadcast_to(target, sub.shape)):
            return False
    return True


# -- linearity ---------------------------------------------------------------

@dataclass(frozen=True)
class LinearityWitness:
    """beta_i(f_i(x)) = sum_j coeffs[i][j] * alphas[j](x_j) over GF(q).

    For a single hypercube, betas = (alpha_0,) and every coefficient is 1.
    """

    q: int
    alphas: tuple[tuple[int, ...], ...]
    betas: tuple[tuple[int, ...], ...]
    coeffs: tuple[tuple[int, ...], ...]

    @property
    def alpha0(self) -> tuple[int, ...]:
        return self.betas[0]

    def verify(self, fs: list[Hypercube]) -> bool:
        F = field_new(self.q)
        if len(fs) != len(self.betas):
            return False
        for f, beta, row in zip(fs, self.betas, self.coeffs):
            if f.k != len(self.alphas):
                return False
            lhs = np.asarray(beta)[f.array()]
            if not np.array_equal(lhs, _linear_form(F, self.alphas, row)):
                return False
        return True


def _linear_form(F: Field, alphas, coeffs) -> np.ndarray:
    """The array sum_j coeffs[j] * alphas[j](x_j) over F_q^k."""
    k = len(alphas)
    acc = np.zeros((1,) * k, dtype=np.int64)
    for j, (al, a) in enumerate(zip(alphas, coeffs)):
        term = F.mul_table[a, np.asarray(al, dtype=np.int64)]
        shape = [1] * k
        shape[j] = F.q
        acc = F.add_table[acc, term.reshape(shape)]
    return np.broadcast_to(acc, (F.q,) * k)


def _loop_table(f: Hypercube) -> np.ndarray | None:
    """u (+) v = f(s_1^-1(u), s_2^-1(v), 0, ...); None if axes are not bijective."""
    s1, s2 = f.axis_slice(0), f.axis_slice(1)
    q = f.q
    if len(set(s1.tolist())) != q or len(set(s2.tolist())) != q:
        return None
    inv1 = np.empty(q, dtype=np.int64)
    inv1[s1] = np.arange(q)
    inv2 = np.empty(q, dtype=np.int64)
    inv2[s2] = np.arange(q)
    idx = [0] * f.k
    plane = f.array()[(slice(None), slice(None)) + tuple(idx[2:])]
    return plane[inv1[:, None], inv2[None, :]]


def _group_isomorphisms(T: np.ndarray, e: int, F: Field, all_of_them: bool):
    """Isomorphisms (S, T) -> (F, +) as image arrays, or [] if there is none.

    (S, T) must be an elementary abelian p-group with identity e.  One
    isomorphism comes from a greedy basis; the others are it composed with
    the additive automorphisms of F.
    """
    q, p = F.q, F.char
    xs = np.arange(q)
    if not np.array_equal(T, T.T):
        return []
    if not (np.array_equal(T[e], xs) and all((T[x] == e).sum() == 1 for x in range(q))):
        return []
    if not np.array_equal(T[T[:, :, None], xs[None, None, :]], T[xs[:, None, None], T[None, :, :]]):
        return []

    def times(x, d):
        acc = e
        for _ in range(d):
            acc = int(T[acc, x])
        return acc

    if any(times(x, p) != e for x in range(q)):
        return []
    basis: list[int] = []
    span = {e: 0}
    for x in range(q):
        if x in span:
            continue
        t = len(basis)
        basis.append(x)
        new = {}
        for y, img in span.items():
            for d in range(1, p):
                z = int(T[y, times(x, d)])
                new[z] = int(F.add_table[img, d * p**t])
        span.update(new)
        if len(span) == q:
            break
    iso = np.empty(q, dtype=np.int64)
    for y, img in span.items():
        iso[y] = img
    if not all_of_them:
        return [iso]
    return [A[iso] for A in F.additive_automorphisms()]


def _single_alphas(f: Hypercube, F: Field, all_isos: bool):
    """Candidate (alpha_0, alpha_1..alpha_k) normalized so alpha_j(0) = 0."""
    q = f.q
    if not is_latin(f):
        return []
    if f.k == 1:
        inv = np.empty(q, dtype=np.int64)
        inv[f.values] = np.arange(q)
        return [(inv, [np.arange(q)])]
    T = _loop_table(f)
    e = int(f.values[0])
    out = []
    for a0 in _group_isomorphisms(T, e, F, all_isos):
        alphas = [a0[f.axis_slice(j)] for j in range(f.k)]
        out.append((a0, alphas))
    return out


def is_linear_hypercube(f: Hypercube) -> LinearityWitness | None:
    F = field_new(f.q)
    for a0, alphas in _single_alphas(f, F, all_isos=False):
        w = LinearityWitness(
            f.q,
            tuple(tuple(int(x) for x in a) for a in alphas),
            (tuple(int(x) for x in a0),),
            ((1,) * f.k,),
        )
        if w.verify([f]):
            return w
    return None


def is_linear_tuple(fs: list[Hypercube]) -> LinearityWitness | None:
    """Decide linearity of (f_1, ..., f_r), normalizing a_{1,j} = 1 and a_{i,1} = 1.

    Every additive isomorphism for f_1 is tried, because for q = p^r with
    r > 1 only some of them fit the other hypercubes.
    """
    if not fs:
        raise ValueError("empty tuple")
    q, k = fs[0].q, fs[0].k
    if any((f.q, f.k) != (q, k) for f in fs):
        raise ValueError("hypercubes of different shapes")
    F = field_new(q)
    if not all(is_latin(f) for f in fs):
        return None
    cands = _single_alphas(fs[0], F, all_isos=len(fs) > 1)
    # all candidates differ by an additive automorphism, so f_1 passes for all or none
    if not cands or not np.array_equal(cands[0][0][fs[0].array()], _linear_form(F, cands[0][1], (1,) * k)):
        return None
    for a0, alphas in cands:
        betas = [a0]
        coeffs = [(1,) * k]
        for f in fs[1:]:
            sol = _fit_other(f, alphas, F)
            if sol is None:
                break
            betas.append(sol[0])
            coeffs.append(sol[1])
        else:
            return LinearityWitness(
                q,
                tuple(tuple(int(x) for x in a) for a in alphas),
                tuple(tuple(int(x) for x in b) for b in betas),
                tuple(tuple(int(c) for c in row) for row in coeffs),
            )
    return None


def _fit_other(f: Hypercube, alphas, F: Field):
    """beta, coeffs with beta(f(x)) = sum a_j alpha_j(x_j) and a_1 = 1, or None."""
    q, k = f.q, f.k
    s0 = f.axis_slice(0)
    beta = np.empty(q, dtype=np.int64)
    beta[s0] = alphas[0]
    coeffs = [1]
    one = 1
    for j in range(1, k):
        sj = f.axis_slice(j)
        # alpha_j(x) != 0 for x != 0; solve at x = 1
        a = F.mul_table[beta[sj[one]], F.inv_table[alphas[j][one]]]
        if not np.array_equal(beta[sj], F.mul_table[a, alphas[j]]):
            return None
        coeffs.append(int(a))
    if not np.array_equal(beta[f.array()], _linear_form(F, alphas, coeffs)):
        return None
    return beta, tuple(coeffs)


def is_linear_code(C: Code) -> LinearityWitness | None:
    """For an (n, q^(n-2), 3)_q code: the pair test, i.e. equivalence to a linear code."""
    return is_linear_tuple(list(pair_from_code(C)))


# -- Rect and reconstruction -------------------------------------------------

@dataclass(frozen=True, eq=False)
class RectTable:
    q: int
    table: np.ndarray  # (q, q, q)

    def __call__(self, u, v, w):
        return self.table[u, v, w]


def rect_table(f: Hypercube, witness: LinearityWitness | None = None) -> RectTable:
    """R(u, v, w) = a0^-1(a0(u) - a0(v) + a0(w)), checked on every rectangle."""
    if witness is None:
        witness = is_linear_hypercube(f)
    if witness is None:
        raise ValueError("hypercube is not linear")
    F = field_new(f.q)
    a0 = np.asarray(witness.alpha0, dtype=np.int64)
    inv = np.empty(f.q, dtype=np.int64)
    inv[a0] = np.arange(f.q)
    A = a0[:, None, None]
    B = F.neg_table[a0][None, :, None]
    Cc = a0[None, None, :]
    R = inv[F.add_table[F.add_table[A, B], Cc]]
    R.setflags(write=False)
    out = RectTable(f.q, R)
    if not rectangles_hold(f, out):
        raise ValueError("witness does not produce a valid Rect table")
    return out


def rectangles_hold(f: Hypercube, R: RectTable) -> bool:
    """f(a) = R(f(b), f(c), f(d)) for every rectangle of every two directions."""
    q = f.q
    X = np.arange(q).reshape(q, 1, 1, 1)
    X2 = np.arange(q).reshape(1, q, 1, 1)
    Y = np.arange(q).reshape(1, 1, q, 1)
    Y2 = np.arange(q).reshape(1, 1, 1, q)
    for i, j in itertools.combinations(range(f.k), 2):
        m = np.moveaxis(f.array(), (i, j), (0, 1)).reshape(q, q, -1)
        # a = (x, y), b = (x, y'), c = (x', y'), d = (x', y)
        rhs = R.table[m[X, Y2], m[X2, Y2], m[X2, Y]]
        if not (m[X, Y] == rhs).all():
            return False
    return True


def axis_values(f: Hypercube) -> np.ndarray:
    """(k, q) array: row j holds f at the points with only x_j possibly nonzero."""
    return np.stack([f.axis_slice(j) for j in range(f.k)])


def reconstruct_from_rect(R: RectTable, axis: np.ndarray) -> Hypercube:
    """Fill f from R and its axis values, by the number of nonzero arguments.

    For x with two or more nonzero coordinates i < j (the first two),
    f(x) = R(f(x with x_i = 0), f(x with x_i = x_j = 0), f(x with x_j = 0));
    all three points are lexicographically smaller than x, so one pass in
    index order suffices.
    """
    axis = np.asarray(axis, dtype=np.int64)
    k, q = axis.shape
    if q != R.q:
        raise ValueError("axis values and Rect table disagree on q")
    if len(set(axis[:, 0].tolist())) != 1:
        raise ValueError("axis rows disagree at the origin")
    weights = q ** np.arange(k - 1, -1, -1)
    vals = np.full(q**k, -1, dtype=np.int64)
    for idx, x in enumerate(itertools.product(range(q), repeat=k)):
        nz = [t for t in range(k) if x[t]]
        if len(nz) == 0:
            vals[idx] = axis[0, 0]
        elif len(nz) == 1:
            vals[idx] = axis[nz[0], x[nz[0]]]
        else:
            i, j = nz[0], nz[1]
            b = idx - x[i] * weights[i]
            c = b - x[j] * weights[j]
            d = idx - x[j] * weights[j]
            vals[idx] = R.table[vals[b], vals[c], vals[d]]
    f = Hypercube.from_array(vals.reshape((q,) * k), q)
    if not is_latin(f):
        raise ValueError("reconstruction is not Latin: inconsistent axis data")
    return f


# -- intercalates ------------------------------------------------------------

def intercalate_counts(L: np.ndarray) -> np.ndarray:
    """Number of 2x2 Latin subsquares in each square of a (G, q, q) stack.

    Rows r1 < r2 carry an intercalate on columns c1, c2 exactly when c1, c2
    form a 2-cycle of the permutation c -> (column of L[r2, c] in row r1).
    The count is invariant under isotopy and conjugation.
    """
    L = np.asarray(L, dtype=np.intp)
    G, q, _ = L.shape
    gi = np.arange(G)[:, None, None]
    pos = np.empty_like(L)
    pos[gi, np.arange(q)[None, :, None], L] = np.arange(q)
    cols = np.arange(q)
    total = np.zeros(G, dtype=np.int64)
    for r1 in range(q - 1):
        p = np.take_along_axis(pos[:, r1, None, :], L[:, r1 + 1:, :], axis=2)
        pp = np.take_along_axis(p, p, axis=2)
        total += ((pp == cols) & (p != cols)).sum(axis=(1, 2))
    return total // 2


# -- text format -------------------------------------------------------------

def format_hypercube(f: Hypercube) -> str:
    lines = [f"{f.q} {f.k}"]
    vals = f.values
    for s in range(0, len(vals), f.q):
        lines.append(" ".join(str(int(x)) for x in vals[s:s + f.q]))
    return "\n".join(lines) + "\n"


def parse_hypercube(text: str) -> Hypercube:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("line 1: expected header 'q k'")
    q, k = int(rows[0][0]), int(rows[0][1])
    vals = [int(t) for r in rows[1:] for t in r]
    if len(vals) != q**k:
        raise ValueError(f"expected {q ** k} symbols, found {len(vals)}")
    return Hypercube.from_array(np.array(vals).reshape((q,) * k), q)

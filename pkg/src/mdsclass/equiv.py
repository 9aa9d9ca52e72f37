"""The equivalence group G_n = S_n wr S_q acting on q-ary codes of length n.

An element ``g = (pi; sigma_1, ..., sigma_n)`` acts on words by
``(g c)[pi(i)] = sigma[pi(i)](c[i])``.  It also acts on the n*q pairs
(coordinate, symbol) by ``g(i, v) = (pi(i), sigma[pi(i)](v))``; flattening a
pair to the point ``i*q + v`` turns every element into a permutation of
``range(n*q)``, which is how the canonizer and the group code see it.

``pi`` is stored 0-based.  Public functions taking a coordinate (lift,
restrict, transporter_h, act_pair) use 1-based coordinates, like
:func:`mdsclass.codes.shorten`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .codes import Code


@dataclass(frozen=True)
class EquivMap:
    n: int
    q: int
    pi: tuple[int, ...]
    sigma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(self.n)):
            raise ValueError(f"pi is not a permutation of 0..{self.n - 1}: {self.pi}")
        if len(self.sigma) != self.n:
            raise ValueError("need one symbol permutation per coordinate")
        for s in self.sigma:
            if sorted(s) != list(range(self.q)):
                raise ValueError(f"not a permutation of 0..{self.q - 1}: {s}")

    @classmethod
    def identity(cls, n: int, q: int) -> "EquivMap":
        return cls(n, q, tuple(range(n)), tuple(tuple(range(q)) for _ in range(n)))

    @classmethod
    def from_points(cls, perm, n: int, q: int) -> "EquivMap":
        perm = [int(x) for x in perm]
        pi = tuple(perm[i * q] // q for i in range(n))
        sigma = [[0] * q for _ in range(n)]
        for i in range(n):
            for v in range(q):
                img = perm[i * q + v]
                if img // q != pi[i]:
                    raise ValueError("point permutation does not preserve coordinate blocks")
                sigma[pi[i]][v] = img % q
        return cls(n, q, pi, tuple(tuple(s) for s in sigma))

    @classmethod
    def random(cls, n: int, q: int, rng: random.Random | None = None) -> "EquivMap":
        rng = rng or random.Random()
        pi = list(range(n))
        rng.shuffle(pi)
        sigma = []
        for _ in range(n):
            s = list(range(q))
            rng.shuffle(s)
            sigma.append(tuple(s))
        return cls(n, q, tuple(pi), tuple(sigma))

    def points(self) -> tuple[int, ...]:
        q = self.q
        return tuple(self.pi[i] * q + self.sigma[self.pi[i]][v] for i in range(self.n) for v in range(q))

    def is_identity(self) -> bool:
        return self == EquivMap.identity(self.n, self.q)


def _check(g: EquivMap, n: int, q: int) -> None:
    if g.n != n or g.q != q:
        raise ValueError(f"map for (n={g.n}, q={g.q}) used on (n={n}, q={q})")


def apply_words(g: EquivMap, words: np.ndarray) -> np.ndarray:
    """Image of each word (row) under g, unsorted."""
    out = np.empty_like(words)
    sig = np.asarray(g.sigma, dtype=words.dtype)
    for i in range(g.n):
        j = g.pi[i]
        out[:, j] = sig[j][words[:, i]]
    return out


def apply(g: EquivMap, C: Code) -> Code:
    _check(g, C.n, C.q)
    return Code.from_words(apply_words(g, C.words), C.q, C.n)


def compose(g: EquivMap, h: EquivMap) -> EquivMap:
    """The map 'g after h'."""
    _check(g, h.n, h.q)
    gp, hp = g.points(), h.points()
    return EquivMap.from_points([gp[x] for x in hp], g.n, g.q)


def inverse(g: EquivMap) -> EquivMap:
    gp = g.points()
    inv = [0] * len(gp)
    for x, y in enumerate(gp):
        inv[y] = x
    return EquivMap.from_points(inv, g.n, g.q)


def act_pair(g: EquivMap, pair: tuple[int, int]) -> tuple[int, int]:
    """g(i, v) = (pi(i), sigma_pi(i)(v)) with 1-based coordinates."""
    i, v = pair
    j = g.pi[i - 1]
    return j + 1, g.sigma[j][v]


def lift(g: EquivMap, i: int) -> EquivMap:
    """e(g, i): act as g on the other coordinates, fix coordinate i pointwise."""
    n, q = g.n, g.q
    if not 1 <= i <= n + 1:
        raise ValueError(f"coordinate {i} out of range 1..{n + 1}")
    c = i - 1

    def ins(t):
        return t if t < c else t + 1

    pi = [0] * (n + 1)
    sigma = [tuple(range(q))] * (n + 1)
    pi[c] = c
    for j in range(n):
        pi[ins(j)] = ins(g.pi[j])
        sigma[ins(j)] = g.sigma[j]
    return EquivMap(n + 1, q, tuple(pi), tuple(sigma))


def restrict(g: EquivMap, i: int) -> EquivMap:
    """s(g, i): the inverse of :func:`lift`; g must fix coordinate i pointwise."""
    n, q = g.n, g.q
    c = i - 1
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range 1..{n}")
    if g.pi[c] != c or g.sigma[c] != tuple(range(q)):
        raise ValueError(f"map moves coordinate {i} or permutes its symbols")

    def drop(t):
        return t if t < c else t - 1

    pi = [drop(g.pi[j]) for j in range(n) if j != c]
    sigma = [g.sigma[j] for j in range(n) if j != c]
    return EquivMap(n - 1, q, tuple(pi), tuple(sigma))


def transporter_h(i: int, v: int, n: int, q: int) -> EquivMap:
    """h_{i,v}: cycle coordinates (1 2 ... i), then swap v and 0 in coordinate 1.

    It sends the pair (i, v) to (1, 0).
    """
    if not 1 <= i <= n:
        raise ValueError(f"coordinate {i} out of range 1..{n}")
    pi = list(range(n))
    for j in range(i - 1):
        pi[j] = j + 1
    pi[i - 1] = 0
    first = list(range(q))
    first[v], first[0] = 0, v
    sigma = [tuple(first)] + [tuple(range(q))] * (n - 1)
    return EquivMap(n, q, tuple(pi), tuple(sigma))


def group_order(n: int, q: int) -> int:
    import math

    return math.factorial(n) * math.factorial(q) ** n


@dataclass(frozen=True)
class ColoredGraph:
    """n cliques of q colour-1 vertices plus one colour-2 vertex per codeword.

    Vertex ``i*q + v`` is symbol v of coordinate i; vertex ``n*q + m`` is
    codeword m.  Codeword m is joined to vertex ``i*q + c_i`` for every i.
    """

    n: int
    q: int
    num_words: int
    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def num_vertices(self) -> int:
        return len(self.colors)

    def to_networkx(self):
        import networkx as nx

        G = nx.Graph()
        for vtx, col in enumerate(self.colors):
            G.add_node(vtx, color=col)
        G.add_edges_from(self.edges)
        return G


def to_graph(C: Code) -> ColoredGraph:
    n, q, M = C.n, C.q, C.size
    edges = []
    for i in range(n):
        for a in range(q):
            for b in range(a + 1, q):
                edges.append((i * q + a, i * q + b))
    for m, word in enumerate(C.words):
        for i, v in enumerate(word):
            edges.append((n * q + m, i * q + int(v)))
    colors = (1,) * (n * q) + (2,) * M
    return ColoredGraph(n, q, M, colors, tuple(edges))

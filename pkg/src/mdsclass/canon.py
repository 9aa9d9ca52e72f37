"""Canonical forms and automorphism groups of codes.

Individualization-refinement on the coloured graph of :func:`equiv.to_graph`,
kept implicit: the n*q symbol vertices ("points") and the M codeword
vertices are coloured by integer arrays and refined with numpy.

Refinement signatures are sums of per-colour pseudo-random 20-bit values.
The sums are taken with float64 ``bincount``; every partial sum stays below
2^53, so they are exact and independent of vertex order, which keeps the
refinement invariant under relabeling.  Only symbol vertices are ever
individualized, since their images determine the codeword images.

Leaves (discrete point colourings) are turned into an element of G_n:
coordinates are ordered by the smallest colour in their clique and symbols by
colour within the clique.  The canonical form is the least image code over
all leaves; automorphism and orbit pruning only skip subtrees whose leaves
are images of already-visited ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .codes import Code, word_keys
from .equiv import EquivMap, apply, compose, inverse
from .permgroup import PermGroup, inverse as perm_inverse, mul as perm_mul, orbits

_HASH_BITS = 20
_NUM_HASHES = 3


def _splitmix(x: np.ndarray) -> np.ndarray:
    z = (x.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


_HASH_CACHE: dict[int, np.ndarray] = {}


def _color_hashes(num_colors: int) -> np.ndarray:
    """(NUM_HASHES, num_colors) float64 table of 20-bit values per colour."""
    size = 1
    while size < num_colors:
        size *= 2
    tab = _HASH_CACHE.get(size)
    if tab is None:
        ids = np.arange(size, dtype=np.uint64)
        rows = []
        for k in range(_NUM_HASHES):
            h = _splitmix(ids * np.uint64(_NUM_HASHES) + np.uint64(k))
            rows.append((h & np.uint64((1 << _HASH_BITS) - 1)).astype(np.float64))
        tab = np.stack(rows)
        _HASH_CACHE[size] = tab
    return tab[:, :num_colors]


def _dense_rank(*keys: np.ndarray) -> tuple[np.ndarray, int]:
    """Ranks of rows ordered lexicographically by keys[0], keys[1], ..."""
    order = np.lexsort(keys[::-1])
    m = len(order)
    if m == 0:
        return np.zeros(0, dtype=np.int64), 0
    change = np.zeros(m, dtype=bool)
    for k in keys:
        s = k[order]
        change[1:] |= s[1:] != s[:-1]
    ranks_sorted = np.cumsum(change)
    out = np.empty(m, dtype=np.int64)
    out[order] = ranks_sorted
    return out, int(ranks_sorted[-1]) + 1


class _CodeGraph:
    def __init__(self, C: Code):
        self.code = C
        self.n, self.q, self.M = C.n, C.q, C.size
        self.P = self.n * self.q
        w = C.words.astype(np.int64)
        self.incidence = (w + self.q * np.arange(self.n)[None, :]).ravel()  # (M*n,)
        self.word_of = np.repeat(np.arange(self.M), self.n)
        self.clique_of = np.arange(self.P) // self.q
        self._build_triple_pairs(w)

    def _build_triple_pairs(self, w: np.ndarray, limit: int = 4_000_000) -> None:
        """Ordered word pairs agreeing outside some 3 coordinates.

        For a distance-3 code these are exactly the pairs at distance 3.  The
        relation is skipped when it would exceed ``limit`` pairs; the size is
        an invariant of the code, so skipping keeps refinement invariant.
        """
        n, q, M = self.n, self.q, self.M
        self.pair_src = None
        if n < 3 or M < 2:
            return
        srcs, dsts, cols = [], [], []
        total = 0
        for T in itertools.combinations(range(n), 3):
            rest = [t for t in range(n) if t not in T]
            keys = word_keys(w[:, rest], q) if rest else np.zeros(M, dtype=np.int64)
            order = np.argsort(keys, kind="stable")
            sk = keys[order]
            for d in range(1, M):
                same = sk[d:] == sk[:-d]
                if not same.any():
                    break
                a = order[:-d][same]
                b = order[d:][same]
                total += 2 * len(a)
                if total > limit:
                    return
                srcs += [a, b]
                dsts += [b, a]
                cols.append(np.broadcast_to(np.array(T), (2 * len(a), 3)))
        if not srcs:
            return
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        T = np.concatenate(cols)
        self.pair_src = src
        self.pair_dst = dst
        self.pair_pts_src = w[src[:, None], T] + q * T
        self.pair_pts_dst = w[dst[:, None], T] + q * T

    def _pair_signature(self, pc: np.ndarray, wc: np.ndarray) -> list[np.ndarray]:
        a = pc[self.pair_pts_src].astype(np.uint64)
        b = pc[self.pair_pts_dst].astype(np.uint64)
        ph = _splitmix(a * np.uint64(1 << 20) + b).sum(axis=1)
        e = _splitmix(ph ^ _splitmix(wc[self.pair_dst].astype(np.uint64) + np.uint64(1 << 40)))
        out = []
        mask = np.uint64((1 << _HASH_BITS) - 1)
        for k in range(_NUM_HASHES):
            part = ((e >> np.uint64(_HASH_BITS * k)) & mask).astype(np.float64)
            out.append(np.bincount(self.pair_src, weights=part, minlength=self.M))
        return out

    def refine(self, pc: np.ndarray, wc: np.ndarray):
        """Iterate to a stable colouring; cells only ever split."""
        npc = int(pc.max()) + 1 if len(pc) else 0
        nwc = int(wc.max()) + 1 if len(wc) else 0
        while True:
            ph = _color_hashes(npc)
            inc_colors = pc[self.incidence]
            wkeys = [wc]
            for k in range(_NUM_HASHES):
                wkeys.append(np.bincount(self.word_of, weights=ph[k][inc_colors], minlength=self.M))
            if self.pair_src is not None:
                wkeys.extend(self._pair_signature(pc, wc))
            wc, nwc_new = _dense_rank(*wkeys)
            wh = _color_hashes(nwc_new)
            wcol_inc = wc[self.word_of]
            pkeys = [pc]
            for k in range(_NUM_HASHES):
                pkeys.append(np.bincount(self.incidence, weights=wh[k][wcol_inc], minlength=self.P))
            for k in range(_NUM_HASHES):
                per_clique = np.bincount(self.clique_of, weights=ph[k][pc], minlength=self.n)
                pkeys.append(per_clique[self.clique_of])
            pc, npc_new = _dense_rank(*pkeys)
            if npc_new == npc and nwc_new == nwc:
                return pc, wc
            npc, nwc = npc_new, nwc_new

    def leaf_map(self, pc: np.ndarray) -> EquivMap:
        n, q = self.n, self.q
        cols = pc.reshape(n, q)
        coord_order = np.argsort(cols.min(axis=1), kind="stable")
        pi = [0] * n
        for pos, i in enumerate(coord_order):
            pi[int(i)] = pos
        sigma = [None] * n
        for i in range(n):
            ranks = np.argsort(np.argsort(cols[i], kind="stable"), kind="stable")
            sigma[pi[i]] = tuple(int(r) for r in ranks)
        return EquivMap(n, q, tuple(pi), tuple(sigma))


def _individualize(pc: np.ndarray, x: int) -> np.ndarray:
    key = pc * 2 + 1
    key[x] -= 1
    return _dense_rank(key)[0]


def _target_cell(pc: np.ndarray) -> np.ndarray | None:
    counts = np.bincount(pc)
    nonsingle = np.flatnonzero(counts > 1)
    if len(nonsingle) == 0:
        return None
    sizes = counts[nonsingle]
    color = nonsingle[np.argmax(sizes)]  # argmax picks the smallest colour on ties
    return np.flatnonzero(pc == color)


@dataclass(frozen=True)
class CanonResult:
    canon: Code
    transporter: EquivMap
    aut_gens: tuple[EquivMap, ...]
    aut_order: int
    leaves: int = 0


class _Search:
    def __init__(self, C: Code):
        self.g = _CodeGraph(C)
        self.first = None  # (cert, perm, path)
        self.best = None
        self.gens: list[tuple] = []
        self.group = PermGroup(self.g.P)
        self.leaves = 0

    def run(self):
        g = self.g
        pc0 = np.zeros(g.P, dtype=np.int64)
        wc0 = np.zeros(g.M, dtype=np.int64)
        pc, wc = g.refine(pc0, wc0)
        self._search(pc, wc, [])

    def _leaf(self, pc, path):
        self.leaves += 1
        emap = self.g.leaf_map(pc)
        image = apply(emap, self.g.code)
        cert = image.words.tobytes()
        perm = emap.points()
        if self.first is None:
            self.first = (cert, perm, list(path))
            self.best = (cert, perm, list(path), image, emap)
            return None
        for ref_cert, ref_perm, ref_path in ((self.first[0], self.first[1], self.first[2]),
                                             (self.best[0], self.best[1], self.best[2])):
            if cert == ref_cert:
                aut = perm_mul(perm_inverse(ref_perm), perm)
                if self.group.add(aut):
                    self.gens.append(aut)
                d = 0
                while d < len(path) and d < len(ref_path) and path[d] == ref_path[d]:
                    d += 1
                return d
        if cert < self.best[0]:
            self.best = (cert, perm, list(path), image, emap)
        return None

    def _stab_orbit_ids(self, path) -> np.ndarray:
        fixing = [a for a in self.gens if all(a[p] == p for p in path)]
        ids = np.empty(self.g.P, dtype=np.int64)
        for orb in orbits(self.g.P, fixing):
            ids[orb] = orb[0]
        return ids

    def _search(self, pc, wc, path):
        cell = _target_cell(pc)
        if cell is None:
            return self._leaf(pc, path)
        depth = len(path)
        done_orbits: list[int] = []
        for x in cell:
            x = int(x)
            if done_orbits:
                ids = self._stab_orbit_ids(path)
                if ids[x] in {ids[y] for y in done_orbits}:
                    continue
            cpc, cwc = self.g.refine(_individualize(pc, x), wc)
            r = self._search(cpc, cwc, path + [x])
            done_orbits.append(x)
            if r is not None and r < depth:
                return r
        return None


def canonicalize(C: Code) -> CanonResult:
    s = _Search(C)
    s.run()
    _, _, _, image, emap = s.best
    n, q = C.n, C.q
    gens = tuple(EquivMap.from_points(a, n, q) for a in s.gens)
    return CanonResult(image, emap, gens, s.group.order(), s.leaves)


def canonical_form(C: Code) -> Code:
    return canonicalize(C).canon


def aut_group(res: CanonResult) -> PermGroup:
    return PermGroup(res.transporter.n * res.transporter.q, [g.points() for g in res.aut_gens])


def transporter_between(C: Code, D: Code, rc: CanonResult | None = None,
                        rd: CanonResult | None = None) -> EquivMap | None:
    """Some g with g C = D, or None if the codes are inequivalent."""
    if (C.n, C.q, C.size) != (D.n, D.q, D.size):
        return None
    rc = rc or canonicalize(C)
    rd = rd or canonicalize(D)
    if rc.canon != rd.canon:
        return None
    return compose(inverse(rd.transporter), rc.transporter)


def are_equivalent(C: Code, C2: Code) -> EquivMap | None:
    """A map g with g C2 = C, or None."""
    return transporter_between(C2, C)


def iso_set(C: Code, C2: Code, rc: CanonResult | None = None,
            rc2: CanonResult | None = None) -> Iterator[EquivMap]:
    """Iso(C, C2) = Aut(C2) g: every map sending C onto C2, each once, lazily.

    Yields nothing when the codes are inequivalent.
    """
    rc2 = rc2 or canonicalize(C2)
    g = transporter_between(C, C2, rc, rc2)
    if g is None:
        return
    gp = g.points()
    for a in aut_group(rc2).elements():
        yield EquivMap.from_points(perm_mul(a, gp), C.n, C.q)

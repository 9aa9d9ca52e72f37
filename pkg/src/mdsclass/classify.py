"""Exhaustive classification of (n, q^(n-2), 3)_q codes, one length at a time.

A :class:`Registry` holds ordered representatives of the classes at length
n.  :func:`classify_step` builds the registry at length n+1 in two phases:

* seeds e(B, 1, 0) u e(C, 2, 0) for every representative B = rep k, found with
  :func:`candidate_extensions` and pruned by isomorph rejection;
* augmentation of each seed slice by slice along coordinate 3.

Every full code kept is semi-canonical: its (1, 0)-shortening *is* rep k and
no full-size shortening belongs to a class with a smaller index.  Both
double counts of the semi-canonical codes per k are reported by
:func:`consistency_check`.

Class indices are 1-based throughout, as are coordinates.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .canon import CanonResult, aut_group, canonicalize, iso_set
from .codes import Code, extend, has_min_distance_3, shorten, word_keys
from .equiv import apply, transporter_h
from .io import format_code, read_code
from .permgroup import orbits


class ConsistencyError(RuntimeError):
    pass


@dataclass
class Registry:
    q: int
    n: int
    reps: list[Code]
    aut_orders: list[int]
    aut_gens: list[list[tuple]]
    canon_index: dict[bytes, int]
    short_phi: list[np.ndarray]  # per rep: (n, q) array of classes at length n-1
    orbit_reps: list[list[tuple[int, int]]]  # per rep: (i, v) orbit representatives

    @property
    def size(self) -> int:
        return len(self.reps)

    def rep(self, k: int) -> Code:
        return self.reps[k - 1]


def phi(reg: Registry, C: Code, res: CanonResult | None = None) -> int:
    """Index k with C equivalent to rep k."""
    if (C.n, C.q) != (reg.n, reg.q):
        raise ValueError(f"code of length {C.n} against a registry of length {reg.n}")
    res = res or canonicalize(C)
    k = reg.canon_index.get(res.canon.to_bytes())
    if k is None:
        raise ConsistencyError(f"code {C!r} matches no class of the length-{reg.n} registry")
    return k


def _pair_orbit_reps(gens, n: int, q: int) -> list[tuple[int, int]]:
    return [(o[0] // q + 1, o[0] % q) for o in orbits(n * q, gens)]


def _make_registry(q: int, n: int, codes: list[Code], short_phi_fn) -> Registry:
    """Registry over one code per class, ordered by canonical form bytes.

    Each representative is the canonical form translated so that it contains
    the all-zero word.
    """
    canon = [canonicalize(C).canon for C in codes]
    canon.sort(key=lambda c: c.to_bytes())
    reps, orders, gens, index, tables, orb = [], [], [], {}, [], []
    for t, c in enumerate(canon, 1):
        rep = c.translate(c.words[0])
        res = canonicalize(rep)
        reps.append(rep)
        orders.append(res.aut_order)
        g = [a.points() for a in res.aut_gens]
        gens.append(g)
        index[c.to_bytes()] = t
        tables.append(short_phi_fn(rep))
        orb.append(_pair_orbit_reps(g, n, q))
    return Registry(q, n, reps, orders, gens, index, tables, orb)


def bootstrap_registry(q: int) -> Registry:
    """The single class of (3, q, 3)_q codes, represented by {(a, a, a)}."""
    C = Code.from_words(np.repeat(np.arange(q)[:, None], 3, axis=1), q, 3)
    # every shortening is a one-word code of length 2, all of them one class
    return _make_registry(q, 3, [C], lambda rep: np.ones((3, q), dtype=np.int64))


# -- the shared subprocedure ---------------------------------------------------

def _apply_points(perm, words: np.ndarray, q: int) -> np.ndarray:
    """Image of each word under a point permutation of range(n*q)."""
    n = words.shape[1]
    P = np.asarray(perm, dtype=np.int64).reshape(n, q)
    img = P[np.arange(n)[None, :], words.astype(np.int64)]
    out = np.empty_like(words)
    out[np.arange(len(words))[:, None], img // q] = img % q
    return out


def _lift_points(perm, q: int) -> tuple:
    """Point form of e(g, 1): coordinate 1 fixed, g on the rest."""
    return tuple(range(q)) + tuple(x + q for x in perm)


def _sorted_code(words: np.ndarray, q: int) -> Code:
    return Code.from_words(words, q, words.shape[1])


def _g_prime_normal(C: Code) -> Code:
    """Representative of C under permutations of the nonzero first-coordinate values.

    Nonzero values are relabeled 1, 2, ... in the order of the smallest
    remaining word carrying them (the remaining parts are disjoint for d >= 2).
    """
    q = C.q
    first = C.words[:, 0].astype(np.int64)
    rest = word_keys(C.words[:, 1:], q) if C.n > 1 else np.zeros(C.size, dtype=np.int64)
    present = [a for a in range(1, q) if (first == a).any()]
    present.sort(key=lambda a: int(rest[first == a].min()))
    sigma = np.zeros(q, dtype=np.int64)
    used = set()
    for t, a in enumerate(present, 1):
        sigma[a] = t
        used.add(a)
    nxt = len(present) + 1
    for a in range(1, q):
        if a not in used:
            sigma[a] = nxt
            nxt += 1
    w = C.words.astype(np.int64).copy()
    w[:, 0] = sigma[w[:, 0]]
    return _sorted_code(w, q)


class _Canons:
    """Memo of canonicalization results keyed by code bytes."""

    def __init__(self):
        self.memo: dict[bytes, CanonResult] = {}

    def __call__(self, C: Code) -> CanonResult:
        key = C.to_bytes()
        r = self.memo.get(key)
        if r is None:
            r = canonicalize(C)
            self.memo[key] = r
        return r


def candidate_extensions(reg: Registry, k: int, i: int, v: int, *, prune_orbits: bool = True,
                         canons: _Canons | None = None) -> list[Code]:
    """Codes C, up to the nonzero values of coordinate 1, with s(C, 1, 0) = s(rep k, i, v),
    class index >= k, and e(rep k, 1, 0) u e(C, i+1, v) of minimum distance 3.

    Each returned code is the g'-normal representative (:func:`_g_prime_normal`).
    For each l >= k and each pair (j, w) with s(rep l, j, w) in the class of
    s(rep k, i, v), C runs over e(g, 1) h_{j,w} rep l for g in
    Iso(s(h_{j,w} rep l, 1, 0), s(rep k, i, v)).
    """
    canons = canons or _Canons()
    n, q = reg.n, reg.q
    B = reg.rep(k)
    target = shorten(B, i, v)
    tclass = int(reg.short_phi[k - 1][i - 1, v])
    rt = canons(target)
    base = extend(B, 1, 0)
    out: dict[bytes, Code] = {}
    for l in range(k, reg.size + 1):
        if prune_orbits:
            pairs = reg.orbit_reps[l - 1]
        else:
            pairs = [(j, w) for j in range(1, n + 1) for w in range(q)]
        for j, w in pairs:
            if int(reg.short_phi[l - 1][j - 1, w]) != tclass:
                continue
            X = apply(transporter_h(j, w, n, q), reg.rep(l))
            S = shorten(X, 1, 0)
            seen: set[bytes] = set()
            for g in iso_set(S, target, canons(S), rt):
                words = _apply_points(_lift_points(g.points(), q), X.words, q)
                C = _sorted_code(words, q)
                key = C.words.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                N = _g_prime_normal(C)
                nk = N.words.tobytes()
                if nk in out:
                    continue
                if has_min_distance_3(base.union(extend(N, i + 1, v))):
                    out[nk] = N
    return [out[key] for key in sorted(out)]


# -- phase 1 -------------------------------------------------------------------

@dataclass
class Seed:
    k: int
    code: Code            # e(rep k, 1, 0) u e(C, 2, 0)
    second: Code          # C = s(code, 2, 0)
    copies: int = 1       # N(D): seeds found equivalent to this one
    full_codes: int = 0   # M(D): semi-canonical full codes augmented from it


def _seed_normal(C: Code) -> Code | None:
    """Fix the nonzero first-coordinate values so that v 0..0 v w is in C for all v."""
    n, q = C.n, C.q
    w = C.words.astype(np.int64)
    line = np.all(w[:, 1:n - 2] == 0, axis=1) if n > 3 else np.ones(C.size, dtype=bool)
    sel = w[line]
    if len(sel) != q:
        return None
    sigma = np.empty(q, dtype=np.int64)
    sigma[sel[:, 0]] = sel[:, n - 2]
    if sigma[0] != 0 or len(set(sigma.tolist())) != q:
        return None
    w[:, 0] = sigma[w[:, 0]]
    return _sorted_code(w, q)


def phase1_seeds(reg: Registry, k: int, canons: _Canons | None = None,
                 prune_orbits: bool = True) -> list[Seed]:
    canons = canons or _Canons()
    B = reg.rep(k)
    found = []
    seen = set()
    for C in candidate_extensions(reg, k, 1, 0, prune_orbits=prune_orbits, canons=canons):
        N = _seed_normal(C)
        if N is None:
            raise ConsistencyError("candidate without the v0..0vw normalization")
        if N.words.tobytes() in seen:
            continue
        seen.add(N.words.tobytes())
        code = extend(B, 1, 0).union(extend(N, 2, 0))
        found.append(Seed(k, code, N))
    # isomorph rejection, keeping the first seed of each class
    groups: dict[bytes, Seed] = {}
    for s in found:
        key = canonicalize(s.code).canon.to_bytes()
        if key in groups:
            groups[key].copies += 1
        else:
            groups[key] = s
    return list(groups.values())


# -- phase 2 -------------------------------------------------------------------

def _fix_first_coordinate(N: Code, target: Code) -> list[Code]:
    """All sigma-images of N (sigma on coordinate 1, fixing 0) with s(., 2, 0) = target."""
    q = N.q
    S = shorten(N, 2, 0)
    sf = S.words[:, 0].astype(np.int64)
    sr = word_keys(S.words[:, 1:], q) if S.n > 1 else np.zeros(S.size, dtype=np.int64)
    tf = target.words[:, 0].astype(np.int64)
    tr = word_keys(target.words[:, 1:], q) if target.n > 1 else np.zeros(target.size, dtype=np.int64)
    src = {a: frozenset(sr[sf == a].tolist()) for a in range(q)}
    dst = {b: frozenset(tr[tf == b].tolist()) for b in range(q)}
    if src[0] != dst[0]:
        return []
    by_set = {s: b for b, s in dst.items() if s and b}
    sigma = {0: 0}
    for a in range(1, q):
        if src[a]:
            b = by_set.get(src[a])
            if b is None:
                return []
            sigma[a] = b
    free_src = [a for a in range(1, q) if a not in sigma]
    free_dst = [b for b in range(1, q) if not dst[b]]
    if len(free_src) != len(free_dst):
        return []
    out = []
    w = N.words.astype(np.int64)
    for perm in itertools.permutations(free_dst):
        full = dict(sigma)
        full.update(zip(free_src, perm))
        table = np.array([full[a] for a in range(q)])
        w2 = w.copy()
        w2[:, 0] = table[w2[:, 0]]
        out.append(_sorted_code(w2, q))
    return out


def _punctured_keys(C: Code) -> np.ndarray:
    """(n, M) keys of the words with coordinate t deleted, for each t."""
    w = C.words.astype(np.int64)
    n, q = C.n, C.q
    return np.stack([word_keys(np.delete(w, t, axis=1), q) for t in range(n)])


def is_semi_canonical(C: Code, reg: Registry, canons: _Canons | None = None) -> bool:
    """The three defining properties, for a partial or full code of length n+1."""
    return _semi_canonical_phis(C, reg, canons) is not None


def _semi_canonical_phis(C: Code, reg: Registry, canons: _Canons | None = None):
    """phi of every full-size shortening if C is semi-canonical, else None."""
    canons = canons or _Canons()
    q, n = reg.q, reg.n
    if C.n != n + 1:
        return None
    if not has_min_distance_3(C):
        return None
    s10 = shorten(C, 1, 0)
    k = None
    for t in range(1, reg.size + 1):
        if s10 == reg.rep(t):
            k = t
            break
    if k is None:
        return None
    phis = {}
    full = q ** (n - 2)
    for i in range(1, n + 2):
        for v in range(q):
            S = shorten(C, i, v)
            if S.size != full:
                continue
            p = phi(reg, S, canons(S))
            if p < k:
                return None
            phis[(i, v)] = p
    return k, phis


def phase2_augment(reg: Registry, seed: Seed, slice_candidates: dict[int, list[Code]] | None = None,
                   canons: _Canons | None = None) -> list[Code]:
    """All semi-canonical full codes containing the seed."""
    canons = canons or _Canons()
    q, n, k = reg.q, reg.n, seed.k
    if slice_candidates is None:
        slice_candidates = {v: candidate_extensions(reg, k, 2, v, canons=canons) for v in range(q)}
    second = extend(seed.second, 2, 0)
    per_v: list[list[Code]] = []
    for v in range(q):
        target = shorten(seed.second, 2, v)
        opts: dict[bytes, Code] = {}
        for N in slice_candidates[v]:
            for C in _fix_first_coordinate(N, target):
                key = C.words.tobytes()
                if key not in opts and has_min_distance_3(second.union(extend(C, 3, v))):
                    opts[key] = C
        if not opts:
            return []
        per_v.append([opts[key] for key in sorted(opts)])

    keys = [[_punctured_keys(C) for C in opts] for opts in per_v]
    occ = np.zeros((n, q ** (n - 1)), dtype=bool)
    rows = np.arange(n)[:, None]
    chosen: list[int] = []
    results = []

    def rec(v: int):
        if v == q:
            full = Code.from_words(
                np.vstack([extend(per_v[t][c], 3, t).words for t, c in enumerate(chosen)]), q, n + 1)
            if _semi_canonical_phis(full, reg, canons) is not None:
                results.append(full)
            return
        for c, K in enumerate(keys[v]):
            if occ[rows, K].any():
                continue
            occ[rows, K] = True
            chosen.append(c)
            rec(v + 1)
            chosen.pop()
            occ[rows, K] = False

    rec(0)
    return results


# -- one step ------------------------------------------------------------------

@dataclass
class StepReport:
    q: int
    n: int  # the new length
    seeds_found: int
    seeds_kept: int
    codes_found: int
    classes: int
    seeds: list[Seed] = field(default_factory=list)
    consistency: list[tuple[int, int, int, bool]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(ok for *_, ok in self.consistency)


def _augment_job(args):
    reg, seed, cands = args
    return phase2_augment(reg, seed, cands)


def classify_step(reg: Registry, workers: int = 1, prune_orbits: bool = True) -> tuple[Registry, StepReport]:
    q, n = reg.q, reg.n
    canons = _Canons()
    seeds: list[Seed] = []
    jobs = []
    for k in range(1, reg.size + 1):
        ks = phase1_seeds(reg, k, canons, prune_orbits)
        seeds.extend(ks)
        if ks:
            cands = {v: candidate_extensions(reg, k, 2, v, prune_orbits=prune_orbits, canons=canons)
                     for v in range(q)}
            jobs.extend((reg, s, cands) for s in ks)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(_augment_job, jobs))
    else:
        outs = [_augment_job(j) for j in jobs]
    full_codes = []
    for (_, s, _), codes in zip(jobs, outs):
        s.full_codes = len(codes)
        full_codes.extend(codes)

    classes: dict[bytes, Code] = {}
    for C in full_codes:
        classes.setdefault(canons(C).canon.to_bytes(), C)

    def table(rep: Code) -> np.ndarray:
        t = np.zeros((n + 1, q), dtype=np.int64)
        for i in range(1, n + 2):
            for v in range(q):
                S = shorten(rep, i, v)
                t[i - 1, v] = phi(reg, S, canons(S))
        return t

    new = _make_registry(q, n + 1, list(classes.values()), table)
    report = StepReport(q, n + 1, sum(s.copies for s in seeds), len(seeds), len(full_codes), new.size, seeds)
    report.consistency = consistency_check(reg, new, seeds)
    return new, report


def consistency_check(reg: Registry, new: Registry, seeds: list[Seed]) -> list[tuple[int, int, int, bool]]:
    """(k, N_k by shortening statistics, N_k by seed bookkeeping, equal) for every k."""
    q = reg.q
    fact = math.factorial(q - 1)
    first = defaultdict(Fraction)
    for t in range(new.size):
        tab = new.short_phi[t]
        k = int(tab.min())
        S = int((tab == k).sum())
        first[k] += Fraction(S, new.aut_orders[t])
    second = defaultdict(int)
    for s in seeds:
        second[s.k] += s.copies * s.full_codes
    out = []
    for k in range(1, reg.size + 1):
        a = fact * reg.aut_orders[k - 1] * first[k]
        if a.denominator != 1:
            out.append((k, -1, fact * second[k], False))
            continue
        b = fact * second[k]
        out.append((k, int(a), b, int(a) == b))
    return out


def classify(q: int, to: int, workers: int = 1, on_step=None) -> list[Registry]:
    """Registries for n = 3..to (stopping early once a length has no codes)."""
    regs = [bootstrap_registry(q)]
    if on_step:
        on_step(regs[0], None)
    while regs[-1].n < to and regs[-1].size:
        new, report = classify_step(regs[-1], workers)
        regs.append(new)
        if on_step:
            on_step(new, report)
        if not report.consistent:
            raise ConsistencyError(f"double count mismatch at n={new.n}: {report.consistency}")
    return regs


# -- persistence -----------------------------------------------------------------

def save_registry(reg: Registry, directory) -> Path:
    d = Path(directory) / f"n{reg.n}"
    d.mkdir(parents=True, exist_ok=True)
    for t, rep in enumerate(reg.reps, 1):
        (d / f"{t}.txt").write_text(format_code(rep))
    lines = [f"{reg.q} {reg.n} {reg.size}"]
    lines += [f"{t} {o}" for t, o in enumerate(reg.aut_orders, 1)]
    for t, tab in enumerate(reg.short_phi, 1):
        lines.append(f"shortenings {t}")
        lines += [f"{i + 1} {v} {int(tab[i, v])}" for i in range(tab.shape[0]) for v in range(tab.shape[1])]
    (d / "manifest.txt").write_text("\n".join(lines) + "\n")
    return d


def load_registry(directory, n: int) -> Registry:
    d = Path(directory) / f"n{n}"
    lines = (d / "manifest.txt").read_text().split("\n")
    q, n2, N = (int(x) for x in lines[0].split())
    if n2 != n:
        raise ValueError(f"{d}: manifest is for length {n2}")
    reps = [read_code(d / f"{t}.txt") for t in range(1, N + 1)]
    tables = [np.zeros((n, q), dtype=np.int64) for _ in range(N)]
    cur = None
    for no, ln in enumerate(lines[N + 1:], N + 2):
        parts = ln.split()
        if not parts:
            continue
        if parts[0] == "shortenings":
            cur = int(parts[1]) - 1
            continue
        if cur is None or len(parts) != 3:
            raise ValueError(f"{d / 'manifest.txt'}: line {no}: expected 'i v phi'")
        i, v, p = (int(x) for x in parts)
        tables[cur][i - 1, v] = p
    reg = _make_registry(q, n, reps, lambda rep: None)
    # reps are stored already ordered and normalized; keep the stored tables
    reg.short_phi = tables
    if [r.to_bytes() for r in reg.reps] != [r.to_bytes() for r in reps]:
        raise ValueError(f"{d}: stored representatives are not in normal form")
    return reg

"""Permutation groups via a stabilizer chain (Knuth's incremental Schreier-Sims).

Permutations are tuples ``p`` with ``p[x]`` the image of x; ``mul(a, b)`` is
``a after b``.  The base is simply 0, 1, ..., degree-1, which is cheap at the
degrees used here (at most 81 points).
"""

from __future__ import annotations

import itertools
import sys
from typing import Iterable, Iterator, Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


class PermGroup:
    """Group generated by ``gens`` acting on ``range(degree)``."""

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = ()):
        self.degree = degree
        self._id = identity(degree)
        self.gens: list[Perm] = []
        # level k stabilizes points 0..k-1; transversal[k][x] maps k -> x
        self._S: list[list[Perm]] = [[] for _ in range(degree + 1)]
        self._T: list[dict[int, Perm]] = [{k: self._id} for k in range(degree)]
        self._Tinv: list[dict[int, Perm]] = [{k: self._id} for k in range(degree)]
        limit = max(sys.getrecursionlimit(), 20 * degree * degree + 1000)
        sys.setrecursionlimit(limit)
        for g in gens:
            self.add(tuple(int(x) for x in g))

    # -- construction --------------------------------------------------
    def add(self, g: Perm) -> bool:
        """Add a generator; returns False if it was already a member."""
        if len(g) != self.degree:
            raise ValueError("degree mismatch")
        if self.contains(g):
            return False
        self.gens.append(g)
        self._A(0, g)
        return True

    def _A(self, k: int, g: Perm) -> None:
        if self._member_from(k, g):
            return
        self._S[k].append(g)
        for t in list(self._T[k].values()):
            self._B(k, mul(g, t))

    def _B(self, k: int, g: Perm) -> None:
        x = g[k]
        T = self._T[k]
        if x not in T:
            T[x] = g
            self._Tinv[k][x] = inverse(g)
            for s in list(self._S[k]):
                self._B(k, mul(s, g))
        else:
            self._A(k + 1, mul(self._Tinv[k][x], g))

    def _member_from(self, k: int, g: Perm) -> bool:
        for j in range(k, self.degree):
            x = g[j]
            if x == j:
                continue
            inv = self._Tinv[j].get(x)
            if inv is None:
                return False
            g = mul(inv, g)
        return True

    # -- queries -------------------------------------------------------
    def contains(self, g: Sequence[int]) -> bool:
        return self._member_from(0, tuple(g))

    def order(self) -> int:
        out = 1
        for T in self._T:
            out *= len(T)
        return out

    def transversals(self) -> list[list[Perm]]:
        """Non-trivial coset representative lists, outermost level first."""
        return [list(T.values()) for T in self._T if len(T) > 1]

    def elements(self) -> Iterator[Perm]:
        """Every group element exactly once, lazily."""
        levels = self.transversals()
        if not levels:
            yield self._id
            return
        for combo in itertools.product(*levels):
            g = combo[-1]
            for t in reversed(combo[:-1]):
                g = mul(t, g)
            yield g

    def orbits(self) -> list[list[int]]:
        return orbits(self.degree, self.gens)

    def stabilizer_chain_orbit_sizes(self) -> list[int]:
        return [len(T) for T in self._T]


def orbits(degree: int, gens: Iterable[Sequence[int]]) -> list[list[int]]:
    """Orbits of <gens> on range(degree), each sorted, ordered by minimum."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(degree):
            a, b = find(x), find(g[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    groups: dict[int, list[int]] = {}
    for x in range(degree):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda o: o[0])


def orbit_representatives(degree: int, gens: Iterable[Sequence[int]]) -> list[int]:
    return [o[0] for o in orbits(degree, gens)]

"""The three nonlinear perfect (9, 8^7, 3)_8 codes and their checks.

Each code is the union over v in GF(8) of e(g^v C', 1, v), where C' is the
linear (8, 8^6, 3)_8 code with generator [I_6 | 1 | (1..6)^T] and the maps
g^v are read from ``data/table3.txt``.

The symbols 0..7 of the table only produce perfect codes when read in
GF(2)[x]/(x^3 + x + 1) with the binary encoding a2a1a0.  With x^3 + x^2 + 1
no slice pair is compatible under any reading of pi and sigma, so the
construction field is x^3 + x + 1 (see :data:`APPENDIX_REDUCTION`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .codes import Code, extend, is_mds_d3, is_perfect_d3, shorten
from .equiv import EquivMap, apply
from .gf import Field, field_new
from .latin import intercalate_counts, is_linear_code
from .linear import hamming_code, is_subspace, rank, span_code

Q = 8
N_BASE = 8
APPENDIX_REDUCTION = (1, 1, 0)  # x^3 + x + 1


def appendix_field() -> Field:
    return field_new(Q, APPENDIX_REDUCTION)


@dataclass(frozen=True)
class SliceSpec:
    """g^v for v = 0..7; pi as 0-based images, sigma[j] acting at coordinate j."""

    maps: tuple[EquivMap, ...]


def generator_matrix() -> np.ndarray:
    G = np.zeros((6, 8), dtype=np.int64)
    G[:, :6] = np.eye(6, dtype=np.int64)
    G[:, 6] = 1
    G[:, 7] = np.arange(1, 7)
    return G


def build_base(F: Field | None = None) -> Code:
    return span_code(F or appendix_field(), generator_matrix())


def parse_table(text: str) -> list[SliceSpec]:
    specs: list[list[EquivMap]] = []
    rows = []
    for no, ln in enumerate(text.splitlines(), 1):
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("code"):
            specs.append([])
            continue
        rows.append((no, [int(t) for t in s.split()]))
    if len(rows) != 3 * 8 * 9:
        raise ValueError(f"expected {3 * 8 * 9} data lines, found {len(rows)}")
    it = iter(rows)
    out = []
    for c in range(3):
        maps = []
        for v in range(8):
            no, head = next(it)
            if len(head) != 9 or head[0] != v:
                raise ValueError(f"line {no}: expected 'v pi(1..8)' for v={v}")
            pi = tuple(p - 1 for p in head[1:])
            sig = []
            for _ in range(8):
                no, row = next(it)
                if len(row) != 8:
                    raise ValueError(f"line {no}: expected 8 symbols")
                sig.append(tuple(row))
            try:
                maps.append(EquivMap(8, Q, pi, tuple(sig)))
            except ValueError as exc:
                raise ValueError(f"code {c + 1}, v={v}: {exc}") from None
        out.append(SliceSpec(tuple(maps)))
    return out


def load_table() -> list[SliceSpec]:
    return parse_table(resources.files("mdsclass").joinpath("data/table3.txt").read_text())


def build_nonlinear(spec: SliceSpec, base: Code | None = None, i: int = 1) -> Code:
    base = base if base is not None else build_base()
    parts = [extend(apply(g, base), i, v).words for v, g in enumerate(spec.maps)]
    return Code.from_words(np.vstack(parts), Q, N_BASE + 1)


def field_translate(C: Code, F: Field, word) -> Code:
    """{c - word : c in C} with field subtraction."""
    w = np.asarray(word, dtype=np.int64)
    return Code.from_words(F.add_table[C.words.astype(np.int64), F.neg_table[w]], C.q, C.n)


def translate_is_subspace(C: Code, F: Field, word, sample: int = 4096, seed: int = 0) -> bool:
    """Is C - word a subspace?  A sampled rank above log_q|C| settles 'no' quickly."""
    T = field_translate(C, F, word)
    target = round(np.log(C.size) / np.log(F.q))
    if (0,) * C.n not in T:
        return False
    rng = np.random.default_rng(seed)
    idx = rng.choice(T.size, size=min(sample, T.size), replace=False)
    if rank(F, T.words[idx]) > target:
        return False
    return is_subspace(T, F)


def linearity_profile(C: Code) -> tuple[tuple[int, ...], ...]:
    """Per coordinate, the sorted pair (number of linear, nonlinear) single shortenings.

    A code invariant: equivalences permute coordinates and, within one,
    the shortenings, preserving linearity.  Returned sorted over coordinates.
    """
    per = []
    for i in range(1, C.n + 1):
        lin = sum(is_linear_code(shorten(C, i, v)) is not None for v in range(C.q))
        per.append((lin, C.q - lin))
    return tuple(sorted(per))


def shortened_squares(C: Code, keep: tuple[int, int, int, int], drop: int) -> np.ndarray:
    """Latin squares of every shortening of C onto the 0-based coordinates ``keep``.

    Each (4, q^2, 3) shortening, punctured at ``drop`` (one of ``keep``), is a
    Latin square with rows, columns and entries read from the other three
    coordinates in increasing order.  Returns a (q^(n-4), q, q) stack.
    """
    if C.size != C.q ** (C.n - 2) or drop not in keep:
        raise ValueError("need an (n, q^(n-2)) code and drop among keep")
    q, W = C.q, C.words.astype(np.int64)
    a, b, c = (t for t in keep if t != drop)
    rest = [t for t in range(C.n) if t not in keep]
    key = W[:, rest] @ (q ** np.arange(len(rest) - 1, -1, -1))
    # MDS: every key value occurs in exactly q^2 words, one per (a, b) cell
    L = np.full((q ** (C.n - 4), q, q), -1, dtype=np.int64)
    L[key, W[:, a], W[:, b]] = W[:, c]
    return L


def intercalate_profile(C: Code) -> tuple:
    """Intercalate counts over all shortenings of C to four coordinates.

    For each 4-set of coordinates and each coordinate punctured from it, the
    histogram of intercalate counts of the resulting Latin squares.  Sorted
    within and across 4-sets, so it is an equivalence invariant.
    """
    per = []
    for keep in itertools.combinations(range(C.n), 4):
        hists = []
        for drop in keep:
            counts = intercalate_counts(shortened_squares(C, keep, drop))
            vals, mult = np.unique(counts, return_counts=True)
            hists.append(tuple(zip(vals.tolist(), mult.tolist())))
        per.append(tuple(sorted(hists)))
    return tuple(sorted(per))


def fingerprint(C: Code) -> tuple:
    return linearity_profile(C), intercalate_profile(C)


def fingerprint_summary(fp: tuple) -> str:
    """Short form: linear single shortenings, then squares per intercalate count."""
    lin, ic = fp
    tally: dict[int, int] = {}
    for hists in ic:
        for hist in hists:
            for val, mult in hist:
                tally[val] = tally.get(val, 0) + mult
    return (f"linear_shortenings={sum(a for a, _ in lin)}/{sum(a + b for a, b in lin)} "
            f"intercalates={dict(sorted(tally.items()))}")


@dataclass
class CodeReport:
    name: str
    perfect: bool
    mds: bool
    subspace_translations: list[bool] = field(default_factory=list)
    tuple_linear: bool = False
    slices_match_spec: bool = True
    slices_linear: bool = True
    fingerprint: tuple = ()

    def failures(self, expect_linear: bool) -> list[str]:
        bad = []
        if not self.perfect:
            bad.append("perfect")
        if not self.mds:
            bad.append("mds")
        if expect_linear:
            if not all(self.subspace_translations):
                bad.append("subspace")
            if not self.tuple_linear:
                bad.append("tuple-linear")
        else:
            if any(self.subspace_translations):
                bad.append("non-subspace")
            if self.tuple_linear:
                bad.append("tuple-nonlinear")
            if not self.slices_match_spec:
                bad.append("slices")
            if not self.slices_linear:
                bad.append("slices-linear")
        return bad


def verify_code(name: str, C: Code, translations: int = 8, spec: SliceSpec | None = None,
                base: Code | None = None, F: Field | None = None) -> CodeReport:
    F = F or appendix_field()
    rep = CodeReport(name, is_perfect_d3(C), is_mds_d3(C))
    rng = np.random.default_rng(1)
    picks = [0] + sorted(rng.choice(C.size, size=translations - 1, replace=False).tolist())
    rep.subspace_translations = [translate_is_subspace(C, F, C.words[t]) for t in picks]
    rep.tuple_linear = is_linear_code(C) is not None
    if spec is not None:
        base = base if base is not None else build_base()
        rep.slices_match_spec = all(shorten(C, 1, v) == apply(g, base) for v, g in enumerate(spec.maps))
        rep.slices_linear = all(is_linear_code(shorten(C, 1, v)) is not None for v in range(Q))
    rep.fingerprint = fingerprint(C)
    return rep


@dataclass
class SuiteReport:
    codes: list[CodeReport]

    @property
    def fingerprints_distinct(self) -> bool:
        fps = [c.fingerprint for c in self.codes]
        return len(set(fps)) == len(fps)

    def failures(self) -> list[str]:
        out = []
        for t, c in enumerate(self.codes):
            for f in c.failures(expect_linear=(t == 0)):
                out.append(f"{c.name}: {f}")
        if not self.fingerprints_distinct:
            out.append("fingerprints not pairwise distinct")
        return out

    @property
    def ok(self) -> bool:
        return not self.failures()


def verify_suite(translations: int = 8, log=None) -> SuiteReport:
    """Hamming code first, then the three table codes."""
    F = appendix_field()
    base = build_base(F)
    reports = []
    ham = hamming_code(F)
    reports.append(verify_code("hamming", ham, translations))
    if log:
        log(reports[-1])
    for t, spec in enumerate(load_table(), 1):
        C = build_nonlinear(spec, base)
        reports.append(verify_code(f"code{t}", C, translations, spec, base))
        if log:
            log(reports[-1])
    return SuiteReport(reports)

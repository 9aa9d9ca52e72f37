import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ternary_4_9
from mdsclass.codes import Code, shorten
from mdsclass.gf import field_new
from mdsclass.latin import (
    Hypercube, are_orthogonal, axis_values, code_from_hypercube, code_from_pair, format_hypercube,
    hypercube_from_code, intercalate_counts, is_latin, is_linear_code, is_linear_hypercube, is_linear_tuple, pair_from_code,
    parse_hypercube, rect_table, rectangles_hold, reconstruct_from_rect, tuple_from_code,
)
from mdsclass.linear import hamming_code, linear_mds


def linear_cube(q, coeffs):
    F = field_new(q)

    def fn(pos):
        acc = np.zeros(len(pos), dtype=np.int64)
        for j, a in enumerate(coeffs):
            acc = F.add_table[acc, F.mul_table[a, pos[:, j]]]
        return acc

    return Hypercube.from_function(fn, q, len(coeffs))


def relabel(f, rng, perms=None):
    """beta(f(alpha_1^-1(x_1), ...)): an isotope of f."""
    q, k = f.q, f.k
    perms = perms or [rng.sample(range(q), q) for _ in range(k + 1)]
    a = f.array()
    for j in range(k):
        a = np.take(a, perms[j], axis=j)
    return Hypercube.from_array(np.asarray(perms[k])[a], q)


def all_latin_squares(q):
    out = []

    def rec(rows):
        if len(rows) == q:
            out.append(np.array(rows))
            return
        for p in itertools.permutations(range(q)):
            if all(p[c] != r[c] for r in rows for c in range(q)):
                rec(rows + [p])

    rec([])
    return out


def oracle_linear(fs):
    """Brute force over every alpha_1..alpha_k and every coefficient matrix."""
    q, k = fs[0].q, fs[0].k
    F = field_new(q)
    perms = list(itertools.permutations(range(q)))
    pos = np.array(list(itertools.product(range(q), repeat=k)))
    for alphas in itertools.product(perms, repeat=k):
        ok_all = True
        for f in fs:
            vals = f.values
            found = False
            for row in itertools.product(range(1, q), repeat=k):
                h = np.zeros(len(pos), dtype=np.int64)
                for j in range(k):
                    h = F.add_table[h, F.mul_table[row[j], np.asarray(alphas[j])[pos[:, j]]]]
                beta = {}
                if all(beta.setdefault(int(x), int(y)) == int(y) for x, y in zip(vals, h)):
                    found = True
                    break
            if not found:
                ok_all = False
                break
        if ok_all:
            return True
    return False


def test_hypercube_from_code_examples():
    C = Code.from_words([[x, y, (x + y) % 3] for x in range(3) for y in range(3)], 3)
    f = hypercube_from_code(C)
    assert f.array().tolist() == [[(x + y) % 3 for y in range(3)] for x in range(3)]
    assert code_from_hypercube(f) == C
    H = hamming_code(field_new(4))
    cube = hypercube_from_code(Code.from_words(H.words[:, :4], 4))
    assert cube.k == 3 and is_latin(cube)


def test_pairs():
    f, g = pair_from_code(ternary_4_9())
    assert are_orthogonal(f, g)
    assert code_from_pair(f, g) == ternary_4_9()
    f, g = pair_from_code(linear_mds(5, 6))
    assert f.k == 4 and are_orthogonal(f, g)
    assert not are_orthogonal(f, f)
    a, b = linear_cube(3, (1, 1)), linear_cube(3, (1, 2))
    assert are_orthogonal(a, b)


def test_orthogonal_squares_of_classified_codes():
    for q in (3, 4, 5, 7):
        f, g = tuple_from_code(linear_mds(q, 4), 2)
        assert are_orthogonal(f, g)


def test_simple_linear():
    w = is_linear_hypercube(linear_cube(5, (1, 1)))
    assert w is not None and w.verify([linear_cube(5, (1, 1))])
    w = is_linear_tuple([linear_cube(3, (1, 1)), linear_cube(3, (1, 2))])
    assert w is not None and w.coeffs[1] == (1, 2)


def intercalate_swapped():
    a = linear_cube(4, (1, 1)).array().copy()
    # rows {0,1} x cols {0,1} of the Klein group table form an intercalate
    a[0, 0], a[0, 1], a[1, 0], a[1, 1] = a[0, 1], a[0, 0], a[1, 1], a[1, 0]
    return Hypercube.from_array(a)


def test_intercalate_swap_not_linear():
    f = intercalate_swapped()
    assert is_latin(f)
    assert is_linear_hypercube(f) is None
    assert not oracle_linear([f])


def test_all_order4_squares_against_oracle():
    squares = all_latin_squares(4)
    assert len(squares) == 576
    for a in squares:
        f = Hypercube.from_array(a)
        assert (is_linear_hypercube(f) is not None) == oracle_linear([f])


def test_order3_squares_all_linear():
    for a in all_latin_squares(3):
        assert is_linear_hypercube(Hypercube.from_array(a)) is not None


def test_order4_pairs_against_oracle():
    squares = np.array([s.ravel() for s in all_latin_squares(4)])
    both = squares[:, None, :] * 4 + squares[None, :, :]
    ortho = np.array([[len(set(r)) == 16 for r in row] for row in both])
    idx = np.argwhere(ortho)
    rng = random.Random(0)
    picks = rng.sample(range(len(idx)), 40)
    for t in picks:
        a, b = idx[t]
        fs = [Hypercube.from_array(squares[a].reshape(4, 4)), Hypercube.from_array(squares[b].reshape(4, 4))]
        got = is_linear_tuple(fs)
        assert (got is not None) == oracle_linear(fs)
        if got is not None:
            assert got.verify(fs)


def test_order3_cubes_against_oracle():
    rng = random.Random(1)
    for _ in range(5):
        f = relabel(linear_cube(3, (1, 2, 1)), rng)
        assert is_linear_hypercube(f) is not None and oracle_linear([f])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(2, 3), st.integers(0, 2**32))
def test_relabeled_linear_is_linear(q, k, seed):
    rng = random.Random(seed)
    F = field_new(q)
    coeffs = tuple(rng.randrange(1, q) for _ in range(k))
    f = relabel(linear_cube(q, coeffs), rng)
    w = is_linear_hypercube(f)
    assert w is not None and w.verify([f])


@pytest.mark.parametrize("q,n", [(3, 4), (4, 5), (5, 6), (7, 5), (8, 5), (9, 4)])
def test_relabeled_linear_codes_are_tuple_linear(q, n):
    from mdsclass.equiv import EquivMap, apply

    C = apply(EquivMap.random(n, q, random.Random(q * n)), linear_mds(q, n))
    w = is_linear_code(C)
    assert w is not None and w.verify(list(pair_from_code(C)))


def test_hamming8_shortened_twice_is_linear():
    H = hamming_code(field_new(8))
    S = shorten(shorten(H, 1, 0), 1, 0)
    assert is_linear_code(S) is not None


def test_rect_examples():
    f = linear_cube(5, (1, 1))
    R = rect_table(f)
    F = field_new(5)
    for u, v, w in itertools.product(range(5), repeat=3):
        assert R(u, v, w) == (u - v + w) % 5
        assert R(v, v, w) == w
    g = linear_cube(5, (1, 1, 1))
    assert reconstruct_from_rect(R, axis_values(g)) == g


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8]), st.integers(2, 3), st.integers(0, 2**32))
def test_rect_round_trip(q, k, seed):
    rng = random.Random(seed)
    f = relabel(linear_cube(q, tuple(rng.randrange(1, q) for _ in range(k))), rng)
    R = rect_table(f)
    assert rectangles_hold(f, R)
    assert reconstruct_from_rect(R, axis_values(f)) == f


def test_rect_round_trip_k4_q7():
    f = relabel(linear_cube(7, (1, 2, 3, 4)), random.Random(4))
    assert reconstruct_from_rect(rect_table(f), axis_values(f)) == f


def test_rect_rejects_nonlinear():
    with pytest.raises(ValueError):
        rect_table(intercalate_swapped())


def test_hypercube_text_round_trip():
    f = relabel(linear_cube(4, (1, 2, 3)), random.Random(9))
    assert parse_hypercube(format_hypercube(f)) == f


def oracle_intercalates(L):
    q = len(L)
    return sum(1 for r1, r2 in itertools.combinations(range(q), 2) for c1, c2 in itertools.combinations(range(q), 2)
               if L[r1][c1] == L[r2][c2] and L[r1][c2] == L[r2][c1])


def test_intercalates_all_order4_squares():
    sq = all_latin_squares(4)
    got = intercalate_counts(np.stack(sq))
    assert got.tolist() == [oracle_intercalates(L) for L in sq]
    klein = np.array([[i ^ j for j in range(4)] for i in range(4)])
    assert intercalate_counts(klein[None])[0] == 12


@given(st.sampled_from([5, 7, 8]), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_intercalates_against_oracle(q, seed):
    rng = random.Random(seed)
    f = relabel(linear_cube(q, (1, 1)), rng)
    a = f.array()
    if rng.random() < 0.5:  # a non-isotopic example: swap an intercalate if one exists
        a = a.copy()
        for r1, r2, c1, c2 in itertools.product(range(q), repeat=4):
            if r1 < r2 and c1 < c2 and a[r1, c1] == a[r2, c2] and a[r1, c2] == a[r2, c1]:
                a[r1, c1], a[r1, c2] = a[r1, c2], a[r1, c1]
                a[r2, c1], a[r2, c2] = a[r2, c2], a[r2, c1]
                break
    assert intercalate_counts(a[None])[0] == oracle_intercalates(a.tolist())


def test_intercalates_conjugation_invariant():
    rng = random.Random(3)
    for L in rng.sample(all_latin_squares(4), 40):
        assert intercalate_counts(L.T[None])[0] == intercalate_counts(L[None])[0]
        inv = np.argsort(L, axis=1)  # (r, symbol) -> column conjugate
        assert intercalate_counts(inv[None])[0] == intercalate_counts(L[None])[0]

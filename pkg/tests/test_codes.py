import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus, ternary_4_9
from mdsclass.codes import (
    Code, all_words, extend, hamming_bound, has_min_distance_3, is_mds_d3, is_perfect_d3,
    keys_to_words, min_distance, repetition_code, shorten, singleton_bound, union_of_extensions,
    word_keys,
)
from mdsclass.gf import field_new
from mdsclass.linear import hamming_code, linear_mds


def brute_min_distance(C):
    return min(int((a != b).sum()) for a, b in itertools.combinations(C.words, 2))


def test_keys_round_trip():
    w = all_words(3, 4)
    assert np.array_equal(keys_to_words(word_keys(w, 3), 3, 4), w)


def test_from_words_sorts_and_dedups():
    C = Code.from_words([[1, 1], [0, 0], [1, 1]], 2)
    assert C.size == 2 and list(C) == [(0, 0), (1, 1)]
    with pytest.raises(ValueError):
        Code.from_words([[0, 2]], 2)


def test_shorten_examples():
    assert list(shorten(ternary_4_9(), 1, 0)) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]
    assert list(shorten(Code.from_words([[0, 0, 0], [1, 1, 1]], 2), 2, 1)) == [(1, 1)]


def test_extend_example():
    C = Code.from_words([[0, 0], [1, 1]], 3)
    assert list(extend(C, 1, 2)) == [(2, 0, 0), (2, 1, 1)]


@pytest.mark.parametrize("name", list(corpus()))
def test_extend_shorten_round_trip(name):
    C = corpus()[name]
    for i in range(1, C.n + 2):
        for v in range(C.q):
            assert shorten(extend(C, i, v), i, v) == C


@pytest.mark.parametrize("q,n", [(3, 4), (4, 4), (4, 5), (5, 5), (5, 6), (7, 5)])
def test_shortened_mds_is_mds_and_union(q, n):
    C = linear_mds(q, n)
    assert is_mds_d3(C)
    for i in range(1, n + 1):
        slices = {v: shorten(C, i, v) for v in range(q)}
        assert all(is_mds_d3(S) for S in slices.values())
        assert union_of_extensions(slices, i) == C


def test_min_distance_examples():
    assert min_distance(Code.from_words([[0, 0, 0], [1, 1, 1]], 2)) == 3
    assert min_distance(ternary_4_9()) == 3
    assert min_distance(linear_mds(5, 6)) == 3


@pytest.mark.parametrize("name", list(corpus()))
def test_min_distance_matches_brute_force(name):
    C = corpus()[name]
    assert min_distance(C) == brute_min_distance(C)
    assert has_min_distance_3(C) == (brute_min_distance(C) >= 3)


def test_d3_violation_detected():
    C = ternary_4_9()
    w = C.words.astype(np.int64).copy()
    # replace the last word by a word at distance 2 from the first
    w[-1] = w[0]
    w[-1, :2] = (w[-1, :2] + 1) % 3
    D = Code.from_words(w, 3)
    assert D.size == 9 and not has_min_distance_3(D) and not is_mds_d3(D)


def test_perfect():
    assert is_perfect_d3(Code.from_words([[0, 0, 0], [1, 1, 1]], 2))
    assert is_perfect_d3(hamming_code(field_new(3)))
    assert is_perfect_d3(hamming_code(field_new(4)))
    assert not is_perfect_d3(linear_mds(5, 5))
    assert is_mds_d3(hamming_code(field_new(8)))


def test_bounds():
    assert singleton_bound(6, 3, 5) == 625
    assert hamming_bound(9, 3, 8) == 8**7
    assert singleton_bound(9, 3, 8) == 8**7
    # 6^7 // (1 + 7 * 5) = 279936 // 36
    assert hamming_bound(7, 3, 6) == 7776


def test_repetition():
    assert list(repetition_code(3)) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]
    assert min_distance(repetition_code(5)) == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(3, 5), st.data())
def test_union_of_extensions_random(q, n, data):
    words = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=1, max_size=20))
    C = Code.from_words(np.array(words), q, n)
    i = data.draw(st.integers(1, n))
    slices = {v: shorten(C, i, v) for v in range(q)}
    assert union_of_extensions(slices, i) == C

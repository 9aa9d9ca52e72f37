import itertools

import pytest
from hypothesis import given, strategies as st

from mdsclass.gf import SUPPORTED_ORDERS, check_axioms, field_new


def test_examples():
    assert field_new(5).add(3, 4) == 2
    F8 = field_new(8)
    assert F8.mul(2, 2) == 4
    assert F8.mul(2, 4) == 5
    assert F8.mul(3, 3) == 5
    assert F8.add(5, 3) == 6


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_axioms_and_basics(q):
    F = field_new(q)
    check_axioms(F)
    assert F.inv(1) == 1
    assert all(F.mul(0, x) == 0 for x in range(q))
    # the primitive element generates the multiplicative group
    seen, x = set(), 1
    for _ in range(q - 1):
        x = F.mul(x, F.primitive)
        seen.add(x)
    assert seen == set(range(1, q))


def test_unsupported():
    with pytest.raises(ValueError):
        field_new(6)


@given(st.sampled_from(SUPPORTED_ORDERS), st.data())
def test_distributive(q, data):
    F = field_new(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_gf9_against_sympy_polys():
    # x^2 + 1 over GF(3): digits (a0, a1) encode a0 + 3 a1
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    mod = sympy.Poly(x**2 + 1, x, modulus=3)
    F = field_new(9)
    for a, b in itertools.product(range(9), repeat=2):
        pa = sympy.Poly(a % 3 + (a // 3) * x, x, modulus=3)
        pb = sympy.Poly(b % 3 + (b // 3) * x, x, modulus=3)
        r = (pa * pb).rem(mod)
        coeffs = [int(c) % 3 for c in reversed(r.all_coeffs())] + [0, 0]
        assert F.mul(a, b) == coeffs[0] + 3 * coeffs[1]


def test_alternative_reduction():
    F = field_new(8, (1, 1, 0))  # x^3 + x + 1
    check_axioms(F)
    assert F.mul(2, 4) == 3  # x^3 = x + 1
    assert field_new(8).mul(2, 4) == 5  # x^3 = x^2 + 1
    with pytest.raises(ValueError):
        field_new(8, (1, 0, 0))  # x^3 + 1 = (x + 1)(x^2 + x + 1)
    with pytest.raises(ValueError):
        field_new(5, (1,))

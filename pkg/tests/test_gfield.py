import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splithad.errors import DegreeZero, DivisionByZero, EvenCharacteristic, NonPrimeCharacteristic
from splithad.gfield import arith, build_field, prime_power, quadratic_character

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 3), (3, 2), (3, 3), (5, 2)]


def _poly_roots(f):
    """Roots of the modulus over the prime subfield, by brute force."""
    p = f.characteristic
    coeffs = f.modulus
    return [x for x in range(p) if sum(c * x**k for k, c in enumerate(coeffs)) % p == 0]


def test_prime_field_uses_x_modulus():
    f = build_field(7, 1)
    assert f.order == 7
    assert tuple(f.modulus) == (0, 1)


def test_gf27_modulus_is_irreducible_cubic():
    f = build_field(3, 3)
    assert f.order == 27
    assert len(f.modulus) == 4 and f.modulus[-1] == 1
    # a cubic is irreducible over GF(3) exactly when it has no root
    assert _poly_roots(f) == []


def test_bad_characteristic_and_degree():
    with pytest.raises(NonPrimeCharacteristic):
        build_field(4, 1)
    with pytest.raises(DegreeZero):
        build_field(3, 0)


def test_small_arithmetic():
    f3 = build_field(3)
    assert f3.index(arith(f3, "mul", f3.element(2), f3.element(2))) == 1
    f7 = build_field(7)
    assert f7.index(f7.inv(f7.element(3))) == 5
    with pytest.raises(DivisionByZero):
        f7.inv(f7.zero)


def test_pow_group_order_gf27():
    f = build_field(3, 3)
    for g in f.elements()[1:]:
        acc = f.one
        for _ in range(26):
            acc = f.mul(acc, g)
        assert acc == f.one
        assert f.pow(g, 26) == f.one


def test_quadratic_character_gf7():
    f = build_field(7)
    squares = {(x * x) % 7 for x in range(1, 7)}
    assert squares == {1, 2, 4}
    for x in range(7):
        want = 0 if x == 0 else (1 if x in squares else -1)
        assert quadratic_character(f, f.element(x)) == want


@pytest.mark.parametrize("p, m", [(3, 2), (5, 1), (3, 3), (7, 2)])
def test_character_matches_enumerated_squares(p, m):
    f = build_field(p, m)
    squares = {f.index(f.mul(a, a)) for a in f.elements()[1:]}
    assert len(squares) == (f.order - 1) // 2
    for i, a in enumerate(f.elements()):
        want = 0 if i == 0 else (1 if i in squares else -1)
        assert quadratic_character(f, a) == want


def test_character_needs_odd_characteristic():
    f = build_field(2, 2)
    with pytest.raises(EvenCharacteristic):
        quadratic_character(f, f.one)


@pytest.mark.parametrize("p, m", FIELDS)
def test_field_axioms_exhaustive(p, m):
    f = build_field(p, m)
    q = f.order
    A, M = f.add_table, f.mul_table
    idx = np.arange(q)
    one = f.index(f.one)
    assert (A[0] == idx).all() and (M[one] == idx).all()
    assert (A == A.T).all() and (M == M.T).all()
    # every nonzero row of the multiplication table is a permutation
    for a in range(1, q):
        assert sorted(M[a]) == list(range(q))
    for a, b, c in itertools.product(range(q), repeat=3):
        assert A[A[a, b], c] == A[a, A[b, c]]
        assert M[M[a, b], c] == M[a, M[b, c]]
        assert M[a, A[b, c]] == A[M[a, b], M[a, c]]


def test_element_index_roundtrip():
    f = build_field(3, 2)
    for i in range(f.order):
        assert f.index(f.element(i)) == i


@given(st.sampled_from(FIELDS), st.data())
@settings(max_examples=60, deadline=None)
def test_inverse_property(pm, data):
    f = build_field(*pm)
    i = data.draw(st.integers(1, f.order - 1))
    a = f.element(i)
    assert f.mul(a, f.inv(a)) == f.one
    assert f.sub(a, a) == f.zero
    assert f.add(a, f.neg(a)) == f.zero


def test_prime_power_detection():
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from motivic_hall.coeffring import (
    IntPoly, L, MotivicScalar, QScalar, cyclotomic, evaluate, gaussian_multinomial, gl_class,
    is_admissible_denominator, multinomial, parabolic_order,
)
from motivic_hall.errors import DomainError, ValidationError
from motivic_hall.ffield import count_subspaces, gl_order


polys = st.lists(st.integers(-4, 4), min_size=1, max_size=4).map(lambda c: IntPoly(tuple(c)))
dens = st.tuples(st.integers(0, 2), st.lists(st.integers(1, 4), max_size=2)).map(
    lambda t: (L ** t[0]) * _prod(L ** n - 1 for n in t[1]))


def _prod(it):
    out = MotivicScalar(1)
    for x in it:
        out = out * x
    return out


scalars = st.builds(lambda p, d: MotivicScalar(p) / d, polys, dens)


@settings(max_examples=60, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@settings(max_examples=60, deadline=None)
@given(scalars, scalars)
def test_evaluation_is_a_ring_map(a, b):
    for q in (2, 3, 5):
        assert evaluate(a * b, q) == evaluate(a, q) * evaluate(b, q)
        assert evaluate(a + b, q) == evaluate(a, q) + evaluate(b, q)


@settings(max_examples=60, deadline=None)
@given(polys, dens)
def test_normal_form_idempotent(p, d):
    s = MotivicScalar(p) / d
    again = MotivicScalar(s.num, s.den)
    assert (again.num, again.den) == (s.num, s.den)
    assert s.den.lc > 0
    for q in (2, 3, 5):
        assert evaluate(s, q) == Fraction(p(q)) / evaluate(d, q)


def test_gl_class_values():
    assert gl_class(0) == 1
    assert gl_class(1) == L - 1
    assert gl_class(2) == L * (L - 1) * (L ** 2 - 1)
    assert gl_class(2) / gl_class(1) == L * (L ** 2 - 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("q", [2, 3])
def test_gl_class_matches_enumeration(n, q):
    assert evaluate(gl_class(n), q) == gl_order(q, n)


def test_basic_evaluations():
    assert evaluate(1 / (L - 1), 2) == 1
    assert evaluate(gl_class(2), 2) == 6
    assert evaluate(L / (L - 1) ** 2, 3) == Fraction(3, 4)
    assert (L - 1) * (1 / (L - 1)) == 1
    assert gl_class(1) * gl_class(1) == (L - 1) ** 2


def _compositions(r):
    if r == 0:
        yield ()
        return
    for k in range(1, r + 1):
        for rest in _compositions(r - k):
            yield (k,) + rest


def _inversion_polynomial(r, delta):
    """sum over shuffles w in S_r / S_delta of t^{inversions}, by brute force."""
    word = [i for i, d in enumerate(delta) for _ in range(d)]
    coeffs = {}
    for w in set(permutations(word)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if w[i] > w[j])
        coeffs[inv] = coeffs.get(inv, 0) + 1
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1)))


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_gaussian_is_inversion_sum_and_palindromic(r):
    for delta in _compositions(r):
        g = gaussian_multinomial(r, delta)
        assert g == _inversion_polynomial(r, delta)
        assert g.is_palindromic()
        assert g(1) == multinomial(r, delta)


def test_gaussian_examples():
    assert gaussian_multinomial(2, (2,)) == IntPoly((1,))
    assert gaussian_multinomial(2, (1, 1)).format("t") == "t + 1"
    assert gaussian_multinomial(3, (1, 2)).format("t") == "t^2 + t + 1"


@pytest.mark.parametrize("q", [2, 3])
def test_gaussian_counts_subspaces(q):
    for n in range(1, 4):
        for k in range(n + 1):
            assert gaussian_multinomial(n, (k, n - k) if 0 < k < n else (n,))(q) == count_subspaces(q, k, n)


def test_parabolic_order_is_gl_over_flags():
    for delta in [(1, 1), (1, 2), (2, 1), (1, 1, 1)]:
        r = sum(delta)
        assert parabolic_order(delta) * MotivicScalar(gaussian_multinomial(r, delta)) == gl_class(r)


def test_admissible_denominators():
    assert is_admissible_denominator(cyclotomic(4) * cyclotomic(1) * IntPoly((0, 1)))
    assert not is_admissible_denominator(IntPoly((2, 1)))
    with pytest.raises(DomainError):
        MotivicScalar(1, IntPoly((2, 1)))
    with pytest.raises(DomainError):
        (2 * L + 1).inverse()
    with pytest.raises(DomainError):
        MotivicScalar(1, IntPoly(()))


def test_json_round_trip():
    s = (2 * L + 1) / (L - 1) ** 2
    assert MotivicScalar.from_json(s.to_json()) == s
    x = QScalar(s, Fraction(-1, 6))
    assert QScalar.from_json(x.to_json()) == x
    assert "scale" not in QScalar(s).to_json()
    with pytest.raises(ValidationError):
        MotivicScalar.from_json({"num": "oops"})


def test_qscalar_arithmetic():
    x = QScalar(L, Fraction(1, 6))
    y = QScalar(L - 1, 2)
    assert (x * y).evaluate(3) == Fraction(1, 6) * 3 * 2 * 2
    assert (x + x - x * 2) == QScalar(0)
    assert QScalar(0).format("t") == "0"

import random
from fractions import Fraction

import pytest

from dp6kit.errors import DivisionByZero, FieldMismatch
from dp6kit.fields import (GF, QQ, embed, field_arith, find_irreducible,
                           format_element, frobenius, mat_det_field,
                           mat_kernel, mat_solve, parse_element, poly_divmod,
                           poly_eval, poly_from_ints, poly_gcd_monic,
                           poly_is_squarefree, poly_mul, poly_roots, retract,
                           rref)

FIELDS = [QQ, GF(2), GF(7), GF(2, 2), GF(3, 2), GF(2, 6)]


def _sample(field, rng):
    if field is QQ:
        return Fraction(rng.randint(-20, 20), rng.randint(1, 9))
    return field.from_code(rng.randrange(field.size))


def test_basic_examples():
    assert field_arith(Fraction(1), None, "inv") == 1
    assert GF(7).from_int(3).inverse() == GF(7).from_int(5)
    assert Fraction(2, 3) + Fraction(1, 6) == Fraction(5, 6)


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_field_axioms_random(field):
    rng = random.Random(42)
    for _ in range(200):
        a, b, c = (_sample(field, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        if a:
            assert field_arith(a, None, "inv") * a == field.one


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        GF(5).zero.inverse()
    with pytest.raises(DivisionByZero):
        field_arith(Fraction(0), None, "inv")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(2).one + GF(3).one
    with pytest.raises(FieldMismatch):
        GF(2, 2).one * GF(2, 3).one


def test_find_irreducible_examples():
    x = find_irreducible(2, 1)
    assert [c.coeffs[0] for c in x] == [0, 1]
    f22 = find_irreducible(2, 2)
    assert [c.coeffs[0] for c in f22] == [1, 1, 1]  # x^2 + x + 1
    f32 = find_irreducible(3, 2)
    assert [c.coeffs[0] for c in f32] == [1, 0, 1]  # x^2 + 1


def _all_monic(field, deg):
    from itertools import product
    for tail in product(range(field.size), repeat=deg):
        yield tuple(field.from_code(c) for c in tail) + (field.one,)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (2, 4), (2, 6), (2, 8),
                                 (3, 2), (3, 4), (5, 3), (7, 2), (13, 1)])
def test_find_irreducible_verified_by_divisor_search(p, k):
    # independent oracle: trial division by every lower-degree monic
    f = find_irreducible(p, k)
    base = GF(p)
    assert len(f) == k + 1 and f[-1] == base.one
    for d in range(1, k):
        for g in _all_monic(base, d):
            _, rem = poly_divmod(f, g, base)
            assert rem, f"irreducible output divisible by degree-{d} factor"
    # and no roots in F_{p^d} for proper divisors d of k
    for d in range(1, k):
        if k % d:
            continue
        ext = GF(p, d)
        lifted = tuple(embed(c, ext) for c in f)
        assert not poly_roots(lifted, ext)


def test_frobenius_examples():
    F4 = GF(2, 2)
    t = F4.gen()
    assert frobenius(F4.one) == F4.one
    assert frobenius(t) == t + F4.one  # t^2 = t + 1
    assert frobenius(frobenius(t)) == t


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (2, 6)])
def test_frobenius_is_field_automorphism(p, k):
    field = GF(p, k)
    rng = random.Random(7)
    for _ in range(200):
        a = field.from_code(rng.randrange(field.size))
        b = field.from_code(rng.randrange(field.size))
        assert frobenius(a + b) == frobenius(a) + frobenius(b)
        assert frobenius(a * b) == frobenius(a) * frobenius(b)
    # the k-th iterate is the identity, and the fixed field is F_p
    for c in range(field.size):
        x = field.from_code(c)
        y = x
        for _ in range(k):
            y = frobenius(y)
        assert y == x
    fixed = [c for c in range(field.size)
             if frobenius(field.from_code(c)) == field.from_code(c)]
    assert len(fixed) == p


def test_embed_retract_roundtrip():
    F4, F64 = GF(2, 2), GF(2, 6)
    for c in range(4):
        x = F4.from_code(c)
        assert retract(embed(x, F64), F4) == x
    with pytest.raises(FieldMismatch):
        embed(GF(2, 2).one, GF(2, 3))  # 2 does not divide 3


def test_serialization():
    t = GF(2, 2).gen()
    assert format_element(t) == "[0,1]@2^2"
    assert parse_element("[0,1]@2^2") == t
    assert format_element(Fraction(5, 6)) == "5/6"
    assert parse_element("5/6") == Fraction(5, 6)
    assert parse_element(format_element(GF(7).from_int(3))) == GF(7).from_int(3)


def test_poly_utilities():
    F3 = GF(3)
    f = poly_from_ints([1, 0, 1], F3)  # x^2 + 1, irreducible mod 3
    g = poly_from_ints([2, 1], F3)
    q, r = poly_divmod(poly_mul(f, g, F3), g, F3)
    assert q == f and not r
    assert poly_gcd_monic(f, g, F3) == (F3.one,)
    assert poly_is_squarefree(f, F3)
    sq = poly_mul(g, g, F3)
    assert not poly_is_squarefree(sq, F3)
    assert poly_eval(f, F3.from_int(0), F3) == F3.one


def test_poly_roots_rational():
    # (t - 1)(t - 2)(t - 3) = t^3 - 6t^2 + 11t - 6
    f = tuple(Fraction(c) for c in (-6, 11, -6, 1))
    assert poly_roots(f, QQ) == [1, 2, 3]
    half = tuple(Fraction(c) for c in (Fraction(-1, 2), 1))  # t - 1/2
    assert poly_roots(half, QQ) == [Fraction(1, 2)]


def test_linear_algebra_over_fields():
    F5 = GF(5)
    rows = [[F5.from_int(1), F5.from_int(2)], [F5.from_int(2), F5.from_int(4)]]
    assert mat_det_field(rows, F5) == F5.zero
    ker = mat_kernel(rows, 2, F5)
    assert len(ker) == 1
    sol = mat_solve([[F5.from_int(2)]], [F5.from_int(3)], F5)
    assert sol[0] * F5.from_int(2) == F5.from_int(3)
    r, pivots = rref([[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]], QQ)
    assert pivots == [0]

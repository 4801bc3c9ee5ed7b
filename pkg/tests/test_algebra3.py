import random
from fractions import Fraction

import pytest

from dp6kit.algebra3 import (AlgElem, adjoint_sharp, build_hermitian,
                             build_split_exchange, companion_matrix,
                             cubic_from_basis, cubic_from_generator,
                             diagonal_cubic, gram_matrix,
                             hermitian_cubic_generator, ideal_to_sym,
                             m3_adjugate, m3_unit, orth_complement,
                             split_exchange_sym, split_normalize, trace_form)
from dp6kit.errors import (DegenerateSubalgebra, NoQuadraticExtension,
                           NotSplitOverBase)
from dp6kit.fields import GF, QQ, mat_det_field, poly_roots

F = Fraction


def _rand_matrix(field, rng):
    return tuple(tuple(field.from_code(rng.randrange(field.size))
                       for _ in range(3)) for _ in range(3))


def test_split_exchange_shape():
    A = build_split_exchange(QQ)
    assert len(A.basis) == 18
    assert len(A.sym_basis) == 9
    x = A.basis[3]
    assert A.involution(A.involution(x)) == x


def test_hermitian_shape():
    B = build_hermitian(GF(2))
    assert len(B.basis) == 9  # 9-dimensional over K
    assert len(B.sym_basis) == 9  # 9-dimensional over F
    # a real diagonal matrix is fixed by the involution
    diag = B.sym_basis[0] + B.sym_basis[1] + B.sym_basis[2]
    assert B.involution(diag) == diag


def test_hermitian_over_Q():
    B = build_hermitian(QQ, -1)
    assert len(B.sym_basis) == 9
    with pytest.raises(NoQuadraticExtension):
        build_hermitian(QQ, 4)
    with pytest.raises(NoQuadraticExtension):
        build_hermitian(QQ, F(9, 4))


def test_involution_anti_multiplicative_random():
    rng = random.Random(1)
    B = build_hermitian(GF(3))
    K = B.ctx.K
    for _ in range(100):
        x = AlgElem(B, _rand_matrix(K, rng))
        y = AlgElem(B, _rand_matrix(K, rng))
        assert B.involution(x * y) == B.involution(y) * B.involution(x)


def test_trace_form_examples():
    for A in (build_split_exchange(QQ), build_hermitian(QQ, 2)):
        assert trace_form(A, A.one, A.one) == QQ.from_int(3)
    A2 = build_split_exchange(GF(2))
    assert trace_form(A2, A2.one, A2.one) == GF(2).one  # 3 = 1 in char 2


def test_trace_form_symmetric_random():
    rng = random.Random(2)
    A = build_split_exchange(GF(7))
    for _ in range(100):
        x = split_exchange_sym(A, _rand_matrix(GF(7), rng))
        y = split_exchange_sym(A, _rand_matrix(GF(7), rng))
        assert trace_form(A, x, y) == trace_form(A, y, x)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_gram_nondegenerate_finite(p):
    field = GF(p)
    for A in (build_split_exchange(field), build_hermitian(field)):
        g = gram_matrix(A, A.sym_basis)
        assert mat_det_field(g, field)


def test_gram_nondegenerate_rational():
    for A in (build_split_exchange(QQ), build_hermitian(QQ, -1)):
        g = gram_matrix(A, A.sym_basis)
        assert mat_det_field(g, QQ)


def test_orth_complement_split_diagonal():
    A = build_split_exchange(QQ)
    L = diagonal_cubic(A)
    perp = orth_complement(L)
    assert len(perp) == 6
    for x in perp:
        m = x.data[0]
        assert all(not m[i][i] for i in range(3))
    # F + Lperp is the space of matrices with all diagonal entries equal
    seven = [A.one] + perp
    assert len(seven) == 7


def test_orth_complement_degenerate_rejected():
    A = build_split_exchange(GF(2))
    # t^2 (t+ ...): a non-squarefree minimal polynomial is rejected upstream
    n = split_exchange_sym(A, m3_unit(0, 1, GF(2).one, GF(2).zero))
    with pytest.raises(DegenerateSubalgebra):
        cubic_from_generator(A, n + A.one)  # (x - 1)^... nilpotent shift


def test_adjoint_sharp_examples():
    A = build_split_exchange(QQ)
    one_sharp, (t, s, n) = adjoint_sharp(A, A.one)
    assert one_sharp == A.one and (t, s, n) == (3, 3, 1)
    e11 = split_exchange_sym(A, m3_unit(0, 0, QQ.one, QQ.zero))
    sharp, _ = adjoint_sharp(A, e11)
    assert not sharp  # adjugate of a rank-one diagonal


def test_adjoint_matches_cofactor_oracle():
    rng = random.Random(4)
    A = build_split_exchange(GF(7))
    for _ in range(100):
        m = _rand_matrix(GF(7), rng)
        x = split_exchange_sym(A, m)
        sharp, (t, s, n) = adjoint_sharp(A, x)
        # independent cofactor expansion
        assert sharp.data[0] == m3_adjugate(m)
        # Cayley-Hamilton shape and the norm identity
        assert sharp == x * x - x.scale(t) + A.one.scale(s)
        assert x * sharp == A.one.scale(n)
        assert sharp * x == A.one.scale(n)


def test_adjoint_hermitian_random():
    rng = random.Random(5)
    B = build_hermitian(GF(3))
    ctx = B.ctx
    for _ in range(100):
        m = _rand_matrix(ctx.K, rng)
        herm = tuple(tuple(m[i][j] if i < j else
                           (ctx.conj(m[j][i]) if i > j else
                            ctx.embed_base(GF(3).from_code(rng.randrange(3))))
                           for j in range(3)) for i in range(3))
        x = AlgElem(B, herm)
        assert B.involution(x) == x
        sharp, (t, s, n) = adjoint_sharp(B, x)
        assert B.involution(sharp) == sharp
        assert x * sharp == B.one.scale(n)
        assert sharp * x == B.one.scale(n)
        assert sharp == x * x - x.scale(t) + B.one.scale(s)


def test_cubic_from_generator_minpoly():
    A = build_split_exchange(QQ)
    cm = companion_matrix((F(-6), F(11), F(-6)), QQ)  # (t-1)(t-2)(t-3)
    L = cubic_from_generator(A, split_exchange_sym(A, cm))
    assert [c for c in L.minpoly] == [F(-6), F(11), F(-6), F(1)]
    assert poly_roots(L.minpoly, QQ) == [1, 2, 3]


def test_cubic_from_basis_diagonal_f2():
    A = build_split_exchange(GF(2))
    L = diagonal_cubic(A)
    assert L.generator is None  # the split cubic over F_2 is not monogenic
    assert len(L.basis) == 3
    g = gram_matrix(A, L.basis)
    assert mat_det_field(g, GF(2))


def test_cubic_from_basis_validation():
    A = build_split_exchange(QQ)
    e01 = split_exchange_sym(A, m3_unit(0, 1, QQ.one, QQ.zero))
    e10 = split_exchange_sym(A, m3_unit(1, 0, QQ.one, QQ.zero))
    with pytest.raises(DegenerateSubalgebra):
        cubic_from_basis(A, (A.one, e01, e10))  # not commutative/closed


def test_split_normalize_identity_case():
    A = build_split_exchange(QQ)
    L = diagonal_cubic(A)
    cert = split_normalize(A, L)
    assert cert.verify(L)
    # an already-diagonal algebra needs only a permutation, det +-1
    rows = [[c for c in row] for row in cert.conjugator]
    assert mat_det_field(rows, QQ) in (QQ.one, -QQ.one)


def test_split_normalize_companion_over_Q():
    A = build_split_exchange(QQ)
    cm = companion_matrix((F(-6), F(11), F(-6)), QQ)
    L = cubic_from_generator(A, split_exchange_sym(A, cm))
    cert = split_normalize(A, L)
    assert cert.verify(L)


def test_split_normalize_not_split_over_base():
    A = build_split_exchange(GF(2))
    cm = companion_matrix((GF(2).one, GF(2).one, GF(2).zero), GF(2))  # t^3+t+1
    L = cubic_from_generator(A, split_exchange_sym(A, cm))
    with pytest.raises(NotSplitOverBase):
        split_normalize(A, L)
    # over F_8 the same cubic splits
    from dp6kit.fields import embed
    F8 = GF(2, 3)
    A8 = build_split_exchange(F8)
    cm8 = tuple(tuple(embed(x, F8) for x in row) for row in cm)
    L8 = cubic_from_generator(A8, split_exchange_sym(A8, cm8))
    assert split_normalize(A8, L8).verify(L8)


def test_ideal_to_sym():
    A = build_split_exchange(GF(2))
    one, zero = GF(2).one, GF(2).zero
    el = ideal_to_sym(A, (one, zero, zero), (zero, one, zero))
    assert el.data[0] == m3_unit(0, 1, one, zero)
    assert not A.sharp(el)  # rank <= 1
    # all 49 pairs of projective lines give 49 distinct projective points
    plane = [(one, zero, zero), (zero, one, zero), (zero, zero, one),
             (one, one, zero), (one, zero, one), (zero, one, one),
             (one, one, one)]
    seen = set()
    for u in plane:
        for w in plane:
            m = ideal_to_sym(A, u, w).data[0]
            seen.add(tuple(x.code() for row in m for x in row))
    assert len(seen) == 49


def test_hermitian_cubic_generators():
    B = build_hermitian(GF(2))
    mixed = hermitian_cubic_generator(B, 1)
    assert len(poly_roots(mixed.minpoly, GF(2))) == 1
    inert = hermitian_cubic_generator(B, 0)
    assert len(poly_roots(inert.minpoly, GF(2))) == 0
    # deterministic: the same generator is found every time
    again = hermitian_cubic_generator(B, 0)
    assert again.generator == inert.generator

"""Rank-9 algebras with unitary involution over exact fields.

Two concrete models:

* split exchange: M3(F) x M3(F) with (a, b) -> (b^t, a^t); the symmetric
  elements are the pairs (a, a^t) and identify with M3(F);
* hermitian: 3x3 matrices over a quadratic extension K/F with the
  conjugate-transpose involution; the symmetric elements are the Hermitian
  matrices, a 9-dimensional F-space.

Both expose the degree-3 structure on the symmetric space: reduced trace,
the quadratic coefficient, reduced norm, and the adjoint x -> x# with
x# = x^2 - Trd(x) x + S(x) and x x# = Nrd(x).  Structure constants on the
standard basis are computed at construction and checked for associativity,
and the involution is checked to be a unitary anti-automorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import (DegenerateSubalgebra, FieldMismatch, NoQuadraticExtension,
                     NotSplitOverBase)
from .fields import (FiniteField, GF, QQ, embed, field_arith, mat_det_field,
                     mat_inv_field, mat_kernel, mat_solve, poly_is_squarefree,
                     poly_roots, poly_trim, retract, rref)

SPLIT_EXCHANGE = "split_exchange"
HERMITIAN = "hermitian"


# ---------------------------------------------------------------------------
# quadratic extension bookkeeping for the hermitian model


class QE:
    """Element x + y sqrt(d) of Q(sqrt(d)); plain pair arithmetic."""

    __slots__ = ("x", "y", "d")

    def __init__(self, x, y, d):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QE):
            if other.d != self.d:
                raise FieldMismatch("mixed quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QE(other, 0, self.d)
        raise FieldMismatch(f"cannot combine {other!r}")

    def __add__(self, o):
        o = self._coerce(o)
        return QE(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QE(-self.x, -self.y, self.d)

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return (-self) + self._coerce(o)

    def __mul__(self, o):
        o = self._coerce(o)
        return QE(self.x * o.x + self.d * self.y * o.y,
                  self.x * o.y + self.y * o.x, self.d)

    __rmul__ = __mul__

    def inverse(self):
        n = self.x * self.x - self.d * self.y * self.y
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QE(self.x / n, -self.y / n, self.d)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def conj(self):
        return QE(self.x, -self.y, self.d)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QE(o, 0, self.d)
        return isinstance(o, QE) and o.d == self.d and o.x == self.x and o.y == self.y

    def __hash__(self):
        return hash((self.x, self.y, self.d))

    def __bool__(self):
        return bool(self.x or self.y)

    def __repr__(self):
        return f"({self.x}+{self.y}w)"


class _RatQuadExt:
    """K = Q(sqrt(d)) context: field-like object plus conj/embed/retract."""

    def __init__(self, d):
        fr = Fraction(d)
        if _is_rational_square(fr):
            raise NoQuadraticExtension(f"{d} is a square in Q")
        self.d = fr
        self.zero = QE(0, 0, fr)
        self.one = QE(1, 0, fr)
        self.delta = QE(0, 1, fr)

    def from_int(self, n):
        return QE(n, 0, self.d)

    def embed_base(self, x):
        return QE(Fraction(x), 0, self.d)

    def conj(self, z):
        return z.conj()

    def retract_base(self, z):
        if z.y:
            raise FieldMismatch(f"{z!r} is not rational")
        return z.x

    def coords(self, z):
        return (z.x, z.y)

    def descriptor(self):
        return {"kind": "rational", "d": str(self.d)}


def _is_rational_square(fr):
    if fr <= 0:
        return fr == 0
    n, d = fr.numerator, fr.denominator
    rn, rd = isqrt(n), isqrt(d)
    return rn * rn == n and rd * rd == d


class _FiniteQuadExt:
    """K = F_{q^2} over F = F_q, conjugation by the q-power Frobenius."""

    def __init__(self, F):
        self.F = F
        self.K = GF(F.p, 2 * F.k)
        self.q = F.size
        self.zero = self.K.zero
        self.one = self.K.one
        self.delta = self._pick_delta()

    def _pick_delta(self):
        # smallest-code element with a nontrivial conjugate; together with 1
        # it spans K over the embedded F
        for c in range(self.K.size):
            z = self.K.from_code(c)
            if self.conj(z) != z:
                return z
        raise AssertionError("no generator of K over F")

    def from_int(self, n):
        return self.K.from_int(n)

    def embed_base(self, x):
        return embed(x, self.K)

    def conj(self, z):
        return z ** self.q

    def retract_base(self, z):
        return retract(z, self.F)

    def coords(self, z):
        """(u, v) in F with z = u + v * delta, via the conjugate trick:
        v = (z - conj z) / (delta - conj delta), then u = z - v delta."""
        dd = self.delta - self.conj(self.delta)
        vk = (z - self.conj(z)) * dd.inverse()
        uk = z - vk * self.delta
        return (retract(uk, self.F), retract(vk, self.F))

    def descriptor(self):
        return {"kind": "finite", "q": self.F.size}


# ---------------------------------------------------------------------------
# 3x3 matrix helpers over any coefficient ring with dunder arithmetic


def m3_mul(a, b):
    return tuple(tuple(sum_three(a[i][0] * b[0][j], a[i][1] * b[1][j], a[i][2] * b[2][j])
                       for j in range(3)) for i in range(3))


def sum_three(x, y, z):
    return x + y + z


def m3_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(3)) for i in range(3))


def m3_sub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(3)) for i in range(3))


def m3_neg(a):
    return tuple(tuple(-a[i][j] for j in range(3)) for i in range(3))


def m3_scale(c, a):
    return tuple(tuple(c * a[i][j] for j in range(3)) for i in range(3))


def m3_transpose(a):
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def m3_map(f, a):
    return tuple(tuple(f(a[i][j]) for j in range(3)) for i in range(3))


def m3_trace(a):
    return a[0][0] + a[1][1] + a[2][2]


def m3_adjugate(a):
    """Classical adjugate: adj(a)[i][j] = cofactor_{ji}."""
    def cof(r, c):
        r1, r2 = [t for t in range(3) if t != r]
        c1, c2 = [t for t in range(3) if t != c]
        minor = a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]
        return minor if (r + c) % 2 == 0 else -minor
    return tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))


def m3_det(a):
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))


def m3_from_entries(entries, zero):
    return tuple(tuple(entries.get((i, j), zero) for j in range(3)) for i in range(3))


def m3_unit(i, j, one, zero):
    return m3_from_entries({(i, j): one}, zero)


def m3_eq_zero(a):
    return not any(a[i][j] for i in range(3) for j in range(3))


# ---------------------------------------------------------------------------
# the two models


class AlgElem:
    """Element of a StructureAlgebra; data is model-specific and immutable."""

    __slots__ = ("algebra", "data")

    def __init__(self, algebra, data):
        self.algebra = algebra
        self.data = data

    def _check(self, other):
        if not isinstance(other, AlgElem) or other.algebra is not self.algebra:
            raise FieldMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        A = self.algebra
        if A.kind == SPLIT_EXCHANGE:
            return AlgElem(A, (m3_add(self.data[0], other.data[0]),
                               m3_add(self.data[1], other.data[1])))
        return AlgElem(A, m3_add(self.data, other.data))

    def __sub__(self, other):
        self._check(other)
        A = self.algebra
        if A.kind == SPLIT_EXCHANGE:
            return AlgElem(A, (m3_sub(self.data[0], other.data[0]),
                               m3_sub(self.data[1], other.data[1])))
        return AlgElem(A, m3_sub(self.data, other.data))

    def __neg__(self):
        A = self.algebra
        if A.kind == SPLIT_EXCHANGE:
            return AlgElem(A, (m3_neg(self.data[0]), m3_neg(self.data[1])))
        return AlgElem(A, m3_neg(self.data))

    def __mul__(self, other):
        self._check(other)
        A = self.algebra
        if A.kind == SPLIT_EXCHANGE:
            return AlgElem(A, (m3_mul(self.data[0], other.data[0]),
                               m3_mul(self.data[1], other.data[1])))
        return AlgElem(A, m3_mul(self.data, other.data))

    def scale(self, c):
        """Scalar multiplication by a base-field element."""
        A = self.algebra
        if A.kind == SPLIT_EXCHANGE:
            return AlgElem(A, (m3_scale(c, self.data[0]), m3_scale(c, self.data[1])))
        ck = A.ctx.embed_base(c)
        return AlgElem(A, m3_scale(ck, self.data))

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and other.algebra is self.algebra
                and other.data == self.data)

    def __hash__(self):
        return hash((id(self.algebra), self.data))

    def __bool__(self):
        if self.algebra.kind == SPLIT_EXCHANGE:
            return not (m3_eq_zero(self.data[0]) and m3_eq_zero(self.data[1]))
        return not m3_eq_zero(self.data)

    def __pow__(self, n):
        out = self.algebra.one
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"AlgElem({self.data})"


class StructureAlgebra:
    """One of the two rank-9 models with its unitary involution.

    Use build_split_exchange / build_hermitian; the constructor computes
    structure constants on the standard basis and verifies associativity,
    the involution identities, and the unitary action on the center.
    """

    def __init__(self, kind, field, ctx=None):
        self.kind = kind
        self.field = field
        self.ctx = ctx
        z, o = field.zero, field.one
        if kind == SPLIT_EXCHANGE:
            zero3 = m3_from_entries({}, z)
            self.one = AlgElem(self, (m3_from_entries({(i, i): o for i in range(3)}, z),
                                      m3_from_entries({(i, i): o for i in range(3)}, z)))
            basis = []
            for side in (0, 1):
                for i in range(3):
                    for j in range(3):
                        u = m3_unit(i, j, o, z)
                        basis.append(AlgElem(self, (u, zero3) if side == 0 else (zero3, u)))
            self.basis = tuple(basis)
        else:
            kz, ko = ctx.zero, ctx.one
            self.one = AlgElem(self, m3_from_entries({(i, i): ko for i in range(3)}, kz))
            self.basis = tuple(AlgElem(self, m3_unit(i, j, ko, kz))
                               for i in range(3) for j in range(3))
        self.sym_basis = self._make_sym_basis()
        self.structure_constants = self._structure_constants()
        self._verify()

    # the involution
    def involution(self, x):
        if self.kind == SPLIT_EXCHANGE:
            a, b = x.data
            return AlgElem(self, (m3_transpose(b), m3_transpose(a)))
        conj = self.ctx.conj
        return AlgElem(self, m3_transpose(m3_map(conj, x.data)))

    def is_symmetric(self, x):
        return self.involution(x) == x

    def _make_sym_basis(self):
        z, o = self.field.zero, self.field.one
        if self.kind == SPLIT_EXCHANGE:
            out = []
            for i in range(3):
                for j in range(3):
                    u = m3_unit(i, j, o, z)
                    out.append(AlgElem(self, (u, m3_transpose(u))))
            return tuple(out)
        ctx = self.ctx
        kz, ko = ctx.zero, ctx.one
        delta, deltac = ctx.delta, ctx.conj(ctx.delta)
        out = [AlgElem(self, m3_unit(i, i, ko, kz)) for i in range(3)]
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            out.append(AlgElem(self, m3_from_entries({(i, j): ko, (j, i): ko}, kz)))
            out.append(AlgElem(self, m3_from_entries({(i, j): delta, (j, i): deltac}, kz)))
        return tuple(out)

    def _structure_constants(self):
        """Sparse multiplication table on the standard basis."""
        table = {}
        index = {b: n for n, b in enumerate(self.basis)}
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                prod = bi * bj
                terms = self._expand_in_basis(prod)
                table[(i, j)] = terms
        return table

    def _expand_in_basis(self, x):
        # basis elements are matrix units, so expansion is coordinate reading
        out = []
        if self.kind == SPLIT_EXCHANGE:
            for side in (0, 1):
                m = x.data[side]
                for i in range(3):
                    for j in range(3):
                        if m[i][j]:
                            out.append((side * 9 + i * 3 + j, m[i][j]))
        else:
            for i in range(3):
                for j in range(3):
                    if x.data[i][j]:
                        out.append((i * 3 + j, x.data[i][j]))
        return tuple(out)

    def _from_terms(self, terms):
        acc = self.zero()
        for idx, c in terms:
            b = self.basis[idx]
            if self.kind == SPLIT_EXCHANGE:
                side_data = (m3_scale(c, b.data[0]), m3_scale(c, b.data[1]))
                acc = acc + AlgElem(self, side_data)
            else:
                acc = acc + AlgElem(self, m3_scale(c, b.data))
        return acc

    def zero(self):
        if self.kind == SPLIT_EXCHANGE:
            z3 = m3_from_entries({}, self.field.zero)
            return AlgElem(self, (z3, z3))
        return AlgElem(self, m3_from_entries({}, self.ctx.zero))

    def _verify(self):
        # structure constants must reproduce the model products
        n = len(self.basis)
        for i in range(n):
            for j in range(n):
                left = self._from_terms(self.structure_constants[(i, j)])
                if left != self.basis[i] * self.basis[j]:
                    raise AssertionError("structure constants disagree with products")

        # associativity on basis triples, computed through the table
        def right_mul(terms, k):
            acc = {}
            for idx, c in terms:
                for idx2, c2 in self.structure_constants[(idx, k)]:
                    prev = acc.get(idx2)
                    acc[idx2] = c * c2 if prev is None else prev + c * c2
            return {m: v for m, v in acc.items() if v}

        def left_mul(k, terms):
            acc = {}
            for idx, c in terms:
                for idx2, c2 in self.structure_constants[(k, idx)]:
                    prev = acc.get(idx2)
                    acc[idx2] = c2 * c if prev is None else prev + c2 * c
            return {m: v for m, v in acc.items() if v}

        for i in range(n):
            for j in range(n):
                tij = self.structure_constants[(i, j)]
                for k in range(n):
                    tjk = self.structure_constants[(j, k)]
                    if right_mul(tij, k) != left_mul(i, tjk):
                        raise AssertionError("basis multiplication not associative")
        # involution: anti-automorphism of order two
        for i in range(n):
            bi = self.basis[i]
            if self.involution(self.involution(bi)) != bi:
                raise AssertionError("involution does not square to the identity")
            for j in range(n):
                bj = self.basis[j]
                if self.involution(bi * bj) != self.involution(bj) * self.involution(bi):
                    raise AssertionError("involution is not an anti-automorphism")
        # unitary: nontrivial on the center
        if self.kind == SPLIT_EXCHANGE:
            z3 = m3_from_entries({}, self.field.zero)
            o3 = m3_from_entries({(i, i): self.field.one for i in range(3)},
                                 self.field.zero)
            e0 = AlgElem(self, (o3, z3))
            if self.involution(e0) == e0:
                raise AssertionError("involution trivial on the center")
        else:
            dI = m3_from_entries({(i, i): self.ctx.delta for i in range(3)},
                                 self.ctx.zero)
            x = AlgElem(self, dI)
            if self.involution(x) == x:
                raise AssertionError("involution trivial on the center")
        # symmetric space has dimension 9 and really is fixed
        assert len(self.sym_basis) == 9
        for b in self.sym_basis:
            assert self.is_symmetric(b)

    # ------------------------------------------------------------------
    # the degree-3 structure on symmetric elements

    def _sym_matrix(self, x):
        """The 3x3 matrix carrying the degree-3 structure of a symmetric x."""
        if self.kind == SPLIT_EXCHANGE:
            return x.data[0]
        return x.data

    def _to_base(self, value):
        if self.kind == SPLIT_EXCHANGE:
            return value
        return self.ctx.retract_base(value)

    def trd_sym(self, x):
        return self._to_base(m3_trace(self._sym_matrix(x)))

    def s_sym(self, x):
        return self._to_base(m3_trace(m3_adjugate(self._sym_matrix(x))))

    def nrd_sym(self, x):
        return self._to_base(m3_det(self._sym_matrix(x)))

    def sharp(self, x):
        m = m3_adjugate(self._sym_matrix(x))
        if self.kind == SPLIT_EXCHANGE:
            return AlgElem(self, (m, m3_transpose(m)))
        return AlgElem(self, m)

    def sym_coords(self, x):
        """Coordinates of a symmetric element in the canonical 9-basis."""
        if self.kind == SPLIT_EXCHANGE:
            a = x.data[0]
            return tuple(a[i][j] for i in range(3) for j in range(3))
        ctx = self.ctx
        m = x.data
        out = [ctx.retract_base(m[0][0]), ctx.retract_base(m[1][1]),
               ctx.retract_base(m[2][2])]
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            u, v = ctx.coords(m[i][j])
            out.append(u)
            out.append(v)
        return tuple(out)

    def sym_from_coords(self, coords):
        acc = self.zero()
        for c, b in zip(coords, self.sym_basis):
            acc = acc + b.scale(c)
        return acc

    def descriptor(self):
        if self.kind == SPLIT_EXCHANGE:
            base = {"q": self.field.size} if isinstance(self.field, FiniteField) \
                else {"q": "QQ"}
            return {"kind": self.kind, **base}
        return {"kind": self.kind, **self.ctx.descriptor()}


@lru_cache(maxsize=None)
def build_split_exchange(field):
    """(M3(F) x M3(F), exchange involution); Sym identified with M3(F)."""
    return StructureAlgebra(SPLIT_EXCHANGE, field)


def build_hermitian(field, d=None):
    """3x3 matrices over the quadratic extension with conjugate transpose.

    Over a finite F_q the extension is the unique F_{q^2}; over Q the
    descriptor d must be a nonsquare rational.
    """
    return _build_hermitian_cached(field, d)


@lru_cache(maxsize=None)
def _build_hermitian_cached(field, d):
    if isinstance(field, FiniteField):
        ctx = _FiniteQuadExt(field)
    else:
        if d is None:
            raise NoQuadraticExtension("a nonsquare d is required over Q")
        ctx = _RatQuadExt(d)
    return StructureAlgebra(HERMITIAN, field, ctx)


# ---------------------------------------------------------------------------
# the trace form and cubic etale subalgebras


def trace_form(A, x, y):
    """b(x, y) = Trd(xy), symmetric and F-valued on symmetric elements."""
    prod = x * y
    if A.kind == SPLIT_EXCHANGE:
        return m3_trace(prod.data[0])
    return A.ctx.retract_base(m3_trace(prod.data))


def gram_matrix(A, elems):
    return [[trace_form(A, x, y) for y in elems] for x in elems]


@dataclass(frozen=True)
class CubicSub:
    """Cubic etale F-subalgebra of symmetric elements, with a chosen basis.

    Monogenic subalgebras record their generator and its (squarefree) minimal
    polynomial; the fully split diagonal over a tiny field is not monogenic,
    so an explicit idempotent basis is also accepted.
    """

    algebra: object
    basis: tuple
    generator: object = None
    minpoly: tuple = None

    def descriptor(self):
        if self.generator is not None:
            return {"generator_minpoly": [str(c) for c in self.minpoly]}
        return {"basis": "idempotents"}


def _sym_independent(A, elems):
    rows = [list(A.sym_coords(e)) for e in elems]
    _, pivots = rref(rows, A.field)
    return len(pivots) == len(elems)


def cubic_from_generator(A, u):
    """L = span(1, u, u^2); etale exactly when the minimal polynomial of u is
    squarefree of degree 3."""
    if not A.is_symmetric(u):
        raise DegenerateSubalgebra("generator is not a symmetric element")
    powers = [A.one, u, u * u]
    if not _sym_independent(A, powers):
        raise DegenerateSubalgebra("generator has degree < 3")
    t = A.trd_sym(u)
    s = A.s_sym(u)
    n = A.nrd_sym(u)
    f = A.field
    minpoly = poly_trim([-n, s, -t, f.one])
    # degree 3 and independent powers: the characteristic polynomial is minimal
    if not poly_is_squarefree(minpoly, f):
        raise DegenerateSubalgebra("minimal polynomial is not squarefree")
    return CubicSub(algebra=A, basis=tuple(powers), generator=u, minpoly=minpoly)


def cubic_from_basis(A, elems):
    """Explicit 3-dimensional basis: must contain 1, be commutative, closed
    under multiplication, with nondegenerate restricted trace form."""
    elems = tuple(elems)
    if len(elems) != 3 or not _sym_independent(A, elems):
        raise DegenerateSubalgebra("need three independent symmetric elements")
    rows = [list(A.sym_coords(e)) for e in elems]
    one = mat_solve([list(r) for r in zip(*rows)], list(A.sym_coords(A.one)), A.field)
    if one is None:
        raise DegenerateSubalgebra("subalgebra does not contain 1")
    for x in elems:
        for y in elems:
            if x * y != y * x:
                raise DegenerateSubalgebra("subalgebra is not commutative")
            prod = list(A.sym_coords(x * y))
            if mat_solve([list(r) for r in zip(*rows)], prod, A.field) is None:
                raise DegenerateSubalgebra("subalgebra is not closed under products")
    g = gram_matrix(A, elems)
    if not mat_det_field(g, A.field):
        raise DegenerateSubalgebra("restricted trace form is degenerate")
    return CubicSub(algebra=A, basis=elems)


def orth_complement(L):
    """The 6-dimensional orthogonal complement of L under the trace form."""
    A = L.algebra
    g = gram_matrix(A, L.basis)
    if not mat_det_field(g, A.field):
        raise DegenerateSubalgebra("restricted trace form is degenerate")
    rows = []
    for l in L.basis:
        rows.append([trace_form(A, l, b) for b in A.sym_basis])
    basis_vecs = mat_kernel(rows, 9, A.field)
    out = [A.sym_from_coords(v) for v in basis_vecs]
    assert len(out) == 6
    return out


def adjoint_sharp(A, x):
    """x# together with (Trd(x), S(x), Nrd(x)).

    x# = x^2 - Trd(x) x + S(x), x x# = Nrd(x); in the matrix models x# is
    the classical adjugate.
    """
    return A.sharp(x), (A.trd_sym(x), A.s_sym(x), A.nrd_sym(x))


def ideal_to_sym(A, u_vec, w_vec):
    """Split model: the symmetric rank-one element attached to a pair of
    lines (a line in V and a line in the dual), i.e. the matrix u w^t."""
    if A.kind != SPLIT_EXCHANGE:
        raise FieldMismatch("ideal_to_sym is defined on the split exchange model")
    m = tuple(tuple(u_vec[i] * w_vec[j] for j in range(3)) for i in range(3))
    return AlgElem(A, (m, m3_transpose(m)))


# ---------------------------------------------------------------------------
# split normalization: conjugating a split cubic subalgebra to the diagonal


@dataclass(frozen=True)
class SplitCertificate:
    """Conjugator c with c L c^{-1} diagonal; as a morphism of triples this
    is conjugation by (c, (c^{-1})^t) on the exchange model."""

    algebra: object
    conjugator: tuple  # 3x3 over the base field
    inverse: tuple

    def apply_matrix(self, m):
        return m3_mul(self.conjugator, m3_mul(m, self.inverse))

    def verify(self, L):
        for l in L.basis:
            m = self.apply_matrix(self.algebra._sym_matrix(l))
            for i in range(3):
                for j in range(3):
                    if i != j and m[i][j]:
                        return False
        return True


def _sq_mul(a, b, n, field):
    return [[sum((a[i][t] * b[t][j] for t in range(n)), field.zero)
             for j in range(n)] for i in range(n)]


def _minpoly_square(R, n, field):
    """Minimal polynomial of an n x n matrix by first dependency of powers."""
    eye = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    powers = [eye]
    for _ in range(n):
        powers.append(_sq_mul(powers[-1], R, n, field))
    flat = [[p[i][j] for i in range(n) for j in range(n)] for p in powers]
    for deg in range(1, n + 1):
        cols = [list(r) for r in zip(*flat[:deg])]
        sol = mat_solve(cols, flat[deg], field)
        if sol is not None:
            return poly_trim(list(-c for c in sol) + [field.one])
    raise AssertionError("matrix with no minimal polynomial")


def _split_roots(f, field):
    roots = poly_roots(f, field)
    if len(roots) != len(f) - 1:
        raise NotSplitOverBase(
            "minimal polynomial has an irreducible factor over the base field")
    return roots


def split_normalize(A, L):
    """Change of basis sending a split etale cubic subalgebra to the diagonal.

    Works on the exchange model, simultaneously diagonalizing the commuting
    family given by the basis of L; deterministic eigenvalue ordering makes
    the certificate reproducible.  Column-vector convention throughout.
    """
    if A.kind != SPLIT_EXCHANGE:
        raise NotSplitOverBase(
            "normalization works on the exchange model; base-change first")
    field = A.field
    mats = [A._sym_matrix(l) for l in L.basis]
    # refine the full space into common eigenlines, one basis matrix at a time
    spaces = [[[field.one if i == j else field.zero for i in range(3)]
               for j in range(3)]]  # each space: list of column vectors
    for m in mats:
        new_spaces = []
        for cols in spaces:
            n = len(cols)
            if n == 1:
                new_spaces.append(cols)
                continue
            # restriction R of m to the span: m . cols[j] = sum_i R[i][j] cols[i]
            bmat = [[cols[j][i] for j in range(n)] for i in range(3)]
            R_cols = []
            for v in cols:
                img = [sum((m[i][t] * v[t] for t in range(3)), field.zero)
                       for i in range(3)]
                sol = mat_solve(bmat, img, field)
                assert sol is not None, "subspace not invariant under L"
                R_cols.append(sol)
            R = [[R_cols[j][i] for j in range(n)] for i in range(n)]
            for lam in _split_roots(_minpoly_square(R, n, field), field):
                shifted = [[R[i][j] - (lam if i == j else field.zero)
                            for j in range(n)] for i in range(n)]
                vecs = [[sum((kv[t] * cols[t][i] for t in range(n)), field.zero)
                         for i in range(3)]
                        for kv in mat_kernel(shifted, n, field)]
                new_spaces.append(vecs)
        spaces = new_spaces
        if all(len(s) == 1 for s in spaces):
            break
    if len(spaces) != 3 or any(len(s) != 1 for s in spaces):
        raise NotSplitOverBase("could not split into three common eigenlines")
    # order eigenlines deterministically by their joint eigenvalue word
    keyed = []
    for s in spaces:
        v = s[0]
        pivot = next(i for i in range(3) if v[i])
        pinv = field_arith(v[pivot], None, "inv")
        v = [x * pinv for x in v]
        key = []
        for m in mats:
            img = [sum((m[i][t] * v[t] for t in range(3)), field.zero)
                   for i in range(3)]
            key.append(_elem_sort_key(img[pivot]))
        keyed.append((tuple(key), v))
    keyed.sort(key=lambda kv: kv[0])
    P_cols = [v for _, v in keyed]
    P = tuple(tuple(P_cols[j][i] for j in range(3)) for i in range(3))
    P_inv_rows = mat_inv_field([list(r) for r in P], field)
    if P_inv_rows is None:
        raise NotSplitOverBase("eigenvectors are not independent")
    c = tuple(tuple(r) for r in P_inv_rows)
    cert = SplitCertificate(algebra=A, conjugator=c, inverse=P)
    if not cert.verify(L):
        raise AssertionError("normalization certificate failed verification")
    return cert


def _elem_sort_key(x):
    from .fields import FFElem
    if isinstance(x, FFElem):
        return (0, x.code())
    return (1, Fraction(x))


# ---------------------------------------------------------------------------
# deterministic generators for the standard cubic subalgebras


def companion_matrix(coeffs, field):
    """Companion of the monic cubic t^3 + c2 t^2 + c1 t + c0 (coeffs c0,c1,c2)."""
    z, o = field.zero, field.one
    c0, c1, c2 = coeffs
    return ((z, z, -c0), (o, z, -c1), (z, o, -c2))


def split_exchange_sym(A, m):
    """Symmetric element of the exchange model from a 3x3 matrix over F."""
    return AlgElem(A, (m, m3_transpose(m)))


def diagonal_cubic(A):
    """The diagonal subalgebra: monogenic when the field has three distinct
    elements forming a squarefree cubic, idempotent basis otherwise."""
    f = A.field
    if A.kind == SPLIT_EXCHANGE:
        units = [split_exchange_sym(A, m3_unit(i, i, f.one, f.zero)) for i in range(3)]
    else:
        ko, kz = A.ctx.one, A.ctx.zero
        units = [AlgElem(A, m3_unit(i, i, ko, kz)) for i in range(3)]
    if (isinstance(f, FiniteField) and f.size >= 3) or f is QQ:
        vals = [f.from_int(n) for n in (0, 1, 2)] if f is QQ else \
            [f.from_code(c) for c in range(3)]
        gen = units[0].scale(vals[0]) + units[1].scale(vals[1]) + units[2].scale(vals[2])
        return cubic_from_generator(A, gen)
    return cubic_from_basis(A, units)


def hermitian_cubic_generator(A, root_counts):
    """Deterministic search for a Hermitian generator whose minimal cubic has
    the requested number of roots in the base field (3, 1 or 0).

    Candidates are walked in code order and the first match is recorded in
    the resulting CubicSub, which keeps serialized surfaces reproducible.
    """
    if A.kind != HERMITIAN:
        raise FieldMismatch("expects the hermitian model")
    f = A.field
    if not isinstance(f, FiniteField):
        raise FieldMismatch("generator search runs over finite fields")
    ctx = A.ctx
    q = f.size
    for code in range(q ** 3 * ctx.K.size ** 3):
        c = code
        diag = []
        for _ in range(3):
            diag.append(f.from_code(c % q))
            c //= q
        off = []
        for _ in range(3):
            off.append(ctx.K.from_code(c % ctx.K.size))
            c //= ctx.K.size
        entries = {(i, i): ctx.embed_base(diag[i]) for i in range(3)}
        entries[(0, 1)], entries[(1, 0)] = off[0], ctx.conj(off[0])
        entries[(0, 2)], entries[(2, 0)] = off[1], ctx.conj(off[1])
        entries[(1, 2)], entries[(2, 1)] = off[2], ctx.conj(off[2])
        u = AlgElem(A, m3_from_entries(entries, ctx.zero))
        try:
            L = cubic_from_generator(A, u)
        except DegenerateSubalgebra:
            continue
        roots = poly_roots(L.minpoly, f)
        if len(roots) == root_counts:
            return L
    raise DegenerateSubalgebra("no generator with the requested factorization")

"""Exact integer linear algebra and finite-group lattice computations.

Smith and Hermite normal forms are computed by elementary operations with
minimal-absolute-value pivoting on arbitrary-precision integers; correctness
over speed is the right trade at the ranks that occur here (<= 12).
Sublattices are always canonicalized through the Hermite form of their basis,
so equality tests and reports are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .errors import CompositionMismatch


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class IntMat:
    """Immutable integer matrix, row-major tuple of tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if data:
            self.rows = len(data)
            self.cols = len(data[0])
            if any(len(r) != self.cols for r in data):
                raise ValueError("ragged matrix")
        else:
            self.rows = rows if rows is not None else 0
            self.cols = cols if cols is not None else 0
        self.data = data

    @staticmethod
    def identity(n):
        return IntMat([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                      rows=n, cols=n)

    @staticmethod
    def zeros(r, c):
        return IntMat([[0] * c for _ in range(r)], rows=r, cols=c)

    def __mul__(self, other):
        if isinstance(other, IntMat):
            if self.cols != other.rows:
                raise CompositionMismatch(
                    f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
            out = [[sum(self.data[i][k] * other.data[k][j] for k in range(self.cols))
                    for j in range(other.cols)] for i in range(self.rows)]
            return IntMat(out, rows=self.rows, cols=other.cols)
        return IntMat([[other * x for x in row] for row in self.data],
                      rows=self.rows, cols=self.cols)

    __rmul__ = __mul__

    def __add__(self, other):
        return IntMat([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)],
                      rows=self.rows, cols=self.cols)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return (isinstance(other, IntMat) and other.rows == self.rows
                and other.cols == self.cols and other.data == self.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def transpose(self):
        return IntMat([[self.data[i][j] for i in range(self.rows)]
                       for j in range(self.cols)], rows=self.cols, cols=self.rows)

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def apply(self, vec):
        return [sum(self.data[i][k] * vec[k] for k in range(self.cols))
                for i in range(self.rows)]

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMat([r1 + r2 for r1, r2 in zip(self.data, other.data)],
                      rows=self.rows, cols=self.cols + other.cols)

    def det(self):
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pr = next((i for i in range(k + 1, n) if m[i][k]), None)
                if pr is None:
                    return 0
                m[k], m[pr] = m[pr], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self):
        return self.rows == self.cols and abs(self.det()) == 1

    def to_lists(self):
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntMat({self.to_lists()})"


def mat_from_columns(cols, nrows):
    return IntMat([[c[i] for c in cols] for i in range(nrows)],
                  rows=nrows, cols=len(cols))


def inverse_unimodular(M):
    """Exact inverse of a unimodular matrix (Gauss over Q, then integer cast)."""
    n = M.rows
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(M.data)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    assert all(x.denominator == 1 for row in out for x in row)
    return IntMat([[int(x) for x in row] for row in out], rows=n, cols=n)


def smith_normal_form(M):
    """Return (S, U, V) with U*M*V = S, S diagonal with d1 | d2 | ...,
    nonnegative diagonal, and U, V unimodular."""
    A = [list(r) for r in M.data] or [[0] * M.cols for _ in range(M.rows)]
    nr, nc = M.rows, M.cols
    if nr == 0 or nc == 0:
        return (IntMat([], rows=nr, cols=nc), IntMat.identity(nr), IntMat.identity(nc))
    U = IntMat.identity(nr).to_lists()
    V = IntMat.identity(nc).to_lists()

    def row_op(i, j, q):  # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(nr):
            A[r][i] -= q * A[r][j]
        for r in range(nc):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(nr):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(nc):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def clear_at(t):
        # make A[t][t] the only nonzero entry in its row and column
        while True:
            # minimal absolute value pivot anywhere in the remaining block
            candidates = [(abs(A[i][j]), i, j)
                          for i in range(t, nr) for j in range(t, nc) if A[i][j]]
            if not candidates:
                return False
            _, pi, pj = min(candidates)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            pivot = A[t][t]
            if pivot == 0:
                continue
            done = True
            for i in range(nr):
                if i != t and A[i][t]:
                    q = A[i][t] // pivot
                    row_op(i, t, q)
                    if A[i][t]:
                        done = False
            for j in range(nc):
                if j != t and A[t][j]:
                    q = A[t][j] // pivot
                    col_op(j, t, q)
                    if A[t][j]:
                        done = False
            if done and all(A[i][t] == 0 for i in range(nr) if i != t) \
                    and all(A[t][j] == 0 for j in range(nc) if j != t):
                return True

    n = min(nr, nc)
    rank = 0
    for t in range(n):
        if clear_at(t):
            rank = t + 1
        else:
            break
    # normalize signs
    for t in range(rank):
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b % a:
                # mix column i+1 into column i and re-clear
                col_op(i, i + 1, -1)
                clear_at(i)
                for t in range(i, rank):
                    if A[t][t] < 0:
                        A[t] = [-x for x in A[t]]
                        U[t] = [-x for x in U[t]]
                changed = True
    return (IntMat(A, rows=nr, cols=nc), IntMat(U, rows=nr, cols=nr),
            IntMat(V, rows=nc, cols=nc))


def snf_diagonal(M):
    S, _, _ = smith_normal_form(M)
    n = min(S.rows, S.cols)
    return [S.data[i][i] for i in range(n) if S.data[i][i]]


def row_hnf(M):
    """Row-style Hermite normal form (unique): row span is preserved,
    pivots positive, entries above a pivot reduced into [0, pivot)."""
    A = [list(r) for r in M.data]
    nr, nc = M.rows, M.cols
    if nr == 0 or nc == 0:
        return IntMat([], rows=0, cols=nc)
    r = 0
    for c in range(nc):
        # gcd the column below r into one entry
        while True:
            nz = [i for i in range(r, nr) if A[i][c]]
            if not nz:
                break
            pi = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[pi] = A[pi], A[r]
            done = True
            for i in range(r + 1, nr):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < nr and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == nr:
                break
    rows = [tuple(row) for row in A[:r] if any(row)]
    return IntMat(rows, rows=len(rows), cols=nc)


def column_span_canonical(M):
    """Canonical form of the column lattice of M (HNF of the transpose)."""
    return row_hnf(M.transpose())


def kernel_basis(M):
    """Columns form a Z-basis of ker(M); automatically saturated.

    Canonicalized so the result only depends on the kernel, not on M.
    """
    S, _, V = smith_normal_form(M)
    n = min(S.rows, S.cols)
    rank = sum(1 for i in range(n) if S.data[i][i])
    cols = [V.col(j) for j in range(rank, M.cols)]
    if not cols:
        return IntMat([], rows=M.cols, cols=0)
    canon = row_hnf(IntMat([list(c) for c in cols]))
    return canon.transpose()


def solve_integer(M, v):
    """One integer solution x of M x = v, or None."""
    S, U, V = smith_normal_form(M)
    w = U.apply(list(v))
    n = min(S.rows, S.cols)
    y = [0] * M.cols
    for i in range(M.rows):
        d = S.data[i][i] if i < n else 0
        if d:
            if w[i] % d:
                return None
            y[i] = w[i] // d
        elif w[i]:
            return None
    return V.apply(y)


def saturation(M):
    """Canonical basis (columns) of the saturation of the column span of M."""
    if M.cols == 0:
        return IntMat([], rows=M.rows, cols=0)
    S, U, _ = smith_normal_form(M)
    n = min(S.rows, S.cols)
    rank = sum(1 for i in range(n) if S.data[i][i])
    Uinv = inverse_unimodular(U)
    cols = [Uinv.col(i) for i in range(rank)]
    canon = row_hnf(IntMat([list(c) for c in cols]))
    return canon.transpose()


# ---------------------------------------------------------------------------
# finite groups given by multiplication tables


class FiniteGroup:
    """Finite group on hashable labels with an explicit multiplication table.

    Closure, associativity, identity and inverses are verified on
    construction; the corpus here never exceeds order 12.
    """

    def __init__(self, labels, table, generators=None):
        self.labels = tuple(labels)
        self.table = dict(table)
        lset = set(self.labels)
        if len(lset) != len(self.labels):
            raise ValueError("duplicate labels")
        for a in self.labels:
            for b in self.labels:
                if self.table[(a, b)] not in lset:
                    raise ValueError("multiplication table not closed")
        ident = None
        for e in self.labels:
            if all(self.table[(e, a)] == a == self.table[(a, e)] for a in self.labels):
                ident = e
                break
        if ident is None:
            raise ValueError("no identity element")
        self.identity = ident
        for a in self.labels:
            if not any(self.table[(a, b)] == ident for b in self.labels):
                raise ValueError("missing inverse")
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    if self.table[(self.table[(a, b)], c)] != self.table[(a, self.table[(b, c)])]:
                        raise ValueError("multiplication not associative")
        self.generators = tuple(generators) if generators is not None \
            else self._greedy_generators()

    def mul(self, a, b):
        return self.table[(a, b)]

    def inv(self, a):
        return next(b for b in self.labels if self.mul(a, b) == self.identity)

    @property
    def order(self):
        return len(self.labels)

    def _closure(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return seen

    def _greedy_generators(self):
        gens = []
        for a in self.labels:
            if a == self.identity:
                continue
            if a not in self._closure(gens):
                gens.append(a)
                if len(self._closure(gens)) == self.order:
                    break
        return tuple(gens)

    def subgroup(self, labels):
        labels = tuple(labels)
        sub = {(a, b): self.table[(a, b)] for a in labels for b in labels}
        return FiniteGroup(labels, sub)

    def all_subgroups(self):
        """Every subgroup, canonically ordered by (order, label list).

        Closures of all generating sets of size <= 3 suffice at order <= 12.
        """
        found = set()
        elems = self.labels
        for size in range(0, 4):
            for combo in itertools.combinations(elems, size):
                cl = frozenset(self._closure(combo))
                found.add(cl)
        subs = [tuple(sorted(s, key=lambda x: self.labels.index(x))) for s in found]
        subs.sort(key=lambda s: (len(s), tuple(str(x) for x in s)))
        return [self.subgroup(s) for s in subs]

    def conjugacy_classes(self):
        rest = set(self.labels)
        classes = []
        for a in self.labels:
            if a not in rest:
                continue
            cls = {self.mul(self.mul(g, a), self.inv(g)) for g in self.labels}
            classes.append(tuple(sorted(cls, key=lambda x: self.labels.index(x))))
            rest -= cls
        return classes

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


# ---------------------------------------------------------------------------
# lattices with group action


class GLattice:
    """Free Z-module of finite rank with an action of a finite group.

    The action map is verified to be a homomorphism into GL(rank, Z)
    (all matrices of determinant +-1) against the multiplication table.
    """

    def __init__(self, rank, group, action, check=True):
        self.rank = rank
        self.group = group
        self.action = dict(action)
        if check:
            for g in group.labels:
                m = self.action[g]
                if m.rows != rank or m.cols != rank:
                    raise ValueError("action matrix has wrong shape")
                if abs(m.det()) != 1:
                    raise ValueError("action matrix not invertible over Z")
            for a in group.labels:
                for b in group.labels:
                    if self.action[a] * self.action[b] != self.action[group.mul(a, b)]:
                        raise ValueError("action is not a homomorphism")

    @staticmethod
    def trivial(rank, group):
        eye = IntMat.identity(rank)
        return GLattice(rank, group, {g: eye for g in group.labels}, check=False)

    def restrict(self, subgroup):
        return GLattice(self.rank, subgroup,
                        {g: self.action[g] for g in subgroup.labels}, check=False)

    def direct_sum(self, other):
        if self.group is not other.group:
            raise CompositionMismatch("direct sum requires the same group object")
        n, m = self.rank, other.rank
        act = {}
        for g in self.group.labels:
            a, b = self.action[g], other.action[g]
            rows = [list(a.data[i]) + [0] * m for i in range(n)]
            rows += [[0] * n + list(b.data[i]) for i in range(m)]
            act[g] = IntMat(rows, rows=n + m, cols=n + m)
        return GLattice(n + m, self.group, act, check=False)


@dataclass(frozen=True)
class LatticeMap:
    """Equivariant map of G-lattices, matrix acting on column vectors."""

    source: GLattice
    target: GLattice
    matrix: IntMat

    def __post_init__(self):
        if self.matrix.rows != self.target.rank or self.matrix.cols != self.source.rank:
            raise CompositionMismatch("map matrix shape does not match the lattices")
        if self.source.group is not self.target.group:
            raise CompositionMismatch("source and target must share the group")
        for g in self.source.group.generators:
            if self.matrix * self.source.action[g] != self.target.action[g] * self.matrix:
                raise ValueError("map does not commute with the group action")


@dataclass
class ExactnessReport:
    ok: bool
    failures: list = dfield(default_factory=list)


def is_exact(maps):
    """Exactness of a chain of lattice maps at every interior node.

    Checks that consecutive maps compose to zero and that image equals
    kernel (as sublattices, compared through canonical Hermite forms).
    """
    failures = []
    for i in range(len(maps) - 1):
        f, g = maps[i], maps[i + 1]
        if f.target is not g.source and f.target.rank != g.source.rank:
            raise CompositionMismatch(f"maps {i} and {i + 1} are not composable")
        comp = g.matrix * f.matrix
        if any(x for row in comp.data for x in row):
            failures.append((i + 1, "composition of consecutive maps is nonzero"))
            continue
        image = column_span_canonical(f.matrix)
        kernel = column_span_canonical(kernel_basis(g.matrix))
        if image != kernel:
            failures.append((i + 1, "image differs from kernel"))
    return ExactnessReport(ok=not failures, failures=failures)


def fixed_submodule(L, G):
    """Canonical basis (columns) of the G-fixed sublattice of L; saturated."""
    gens = G.generators if G.generators else ()
    rows = []
    for g in gens:
        diff = L.action[g] - IntMat.identity(L.rank)
        rows.extend(diff.to_lists())
    if not rows:
        return IntMat.identity(L.rank)
    return kernel_basis(IntMat(rows))


def fixed_rank_by_traces(L, G):
    """Multiplicity of the trivial character: (1/|G|) sum of traces."""
    total = sum(sum(L.action[g].data[i][i] for i in range(L.rank)) for g in G.labels)
    assert total % G.order == 0
    return total // G.order


def h1(L, G):
    """Invariant factors of H^1(G, L), computed by exact linear algebra.

    Cocycles are coordinatized by their values on a generating set; the
    relation rows come from propagating the cocycle identity over the whole
    multiplication table.  Coboundaries are expressed in the resulting basis
    and the quotient read off a Smith form.
    """
    gens = list(G.generators)
    n = L.rank
    if not gens:
        return []
    m = len(gens)
    nm = n * m

    def block_matrix(mat, idx):
        # n x nm matrix placing mat at block idx
        rows = []
        for i in range(n):
            row = [0] * nm
            for j in range(n):
                row[idx * n + j] = mat.data[i][j]
            rows.append(row)
        return rows

    zero_rows = [[0] * nm for _ in range(n)]
    A = {G.identity: zero_rows}
    constraint_rows = []
    frontier = [G.identity]
    seen = {G.identity}
    order = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                t = G.mul(g, h)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    order.append(t)
        frontier = nxt
    # assign matrices in BFS order, then collect consistency rows for all edges
    for g in order:
        for idx, s in enumerate(gens):
            t = G.mul(g, s)
            blk = block_matrix(L.action[g], idx)
            cand = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(A[g], blk)]
            if t not in A:
                A[t] = cand
            else:
                for r1, r2 in zip(A[t], cand):
                    row = [a - b for a, b in zip(r1, r2)]
                    if any(row):
                        constraint_rows.append(row)
    Z = kernel_basis(IntMat(constraint_rows) if constraint_rows
                     else IntMat([], rows=0, cols=nm))
    if Z.cols == 0:
        return []
    # coboundary generators: m_g = (g - 1) x for x in standard basis of L
    cob_cols = []
    for j in range(n):
        col = []
        for s in gens:
            diff = L.action[s] - IntMat.identity(n)
            col.extend(diff.apply([1 if i == j else 0 for i in range(n)]))
        cob_cols.append(col)
    X_cols = []
    for col in cob_cols:
        x = solve_integer(Z, col)
        assert x is not None, "coboundary not a cocycle (bug)"
        X_cols.append(x)
    X = mat_from_columns(X_cols, Z.cols)
    diag = snf_diagonal(X)
    free = Z.cols - len(diag)
    assert free == 0, "H^1 of a finite group on a lattice must be finite"
    return sorted(d for d in diag if d > 1)


def equivariant_iso_search(L1, L2, bound=3):
    """Search for a unimodular intertwiner M with M r1(g) = r2(g) M.

    Solves the intertwining system over Z, then walks small integer
    combinations of its kernel basis (max coefficient `bound`, deterministic
    order) testing unimodularity.  Returns (matrix, bound_used) or
    (None, bound): a miss is inconclusive, not a proof of nonexistence.
    """
    if L1.group is not L2.group or L1.rank != L2.rank:
        return None, 0
    n = L1.rank
    gens = L1.group.generators or L1.group.labels
    rows = []
    for g in gens:
        r1, r2 = L1.action[g], L2.action[g]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for a in range(n):
                    for b in range(n):
                        coeff = 0
                        if a == i:
                            coeff += r1.data[b][j]
                        if b == j:
                            coeff -= r2.data[i][a]
                        if coeff:
                            row[a * n + b] += coeff
                rows.append(row)
    basis = kernel_basis(IntMat(rows) if rows else IntMat([], rows=0, cols=n * n))
    if basis.cols == 0:
        return None, 0
    cols = [basis.col(j) for j in range(basis.cols)]

    def to_mat(vec):
        return IntMat([[vec[i * n + j] for j in range(n)] for i in range(n)])

    # identity first when available, then combinations by growing sup-norm
    ident_flat = [1 if i % (n + 1) == 0 else 0 for i in range(n * n)]
    x = solve_integer(basis, ident_flat)
    if x is not None:
        return IntMat.identity(n), 0
    m = basis.cols
    for b in range(1, bound + 1):
        for combo in itertools.product(range(-b, b + 1), repeat=m):
            if max(abs(c) for c in combo) != b:
                continue
            first = next((c for c in combo if c), 0)
            if first < 0:
                continue
            vec = [sum(c * col[i] for c, col in zip(combo, cols))
                   for i in range(n * n)]
            M = to_mat(vec)
            if abs(M.det()) == 1:
                return M, b
    return None, bound

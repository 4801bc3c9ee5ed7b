import random

import pytest

from dp6kit.errors import CompositionMismatch
from dp6kit.hexagon import (hexagon_group, perm_k, perm_kl, perm_l,
                            pic_lattice, subgroups)
from dp6kit.intlattice import (FiniteGroup, GLattice, IntMat, LatticeMap,
                               equivariant_iso_search, fixed_rank_by_traces,
                               fixed_submodule, h1, is_exact, kernel_basis,
                               row_hnf, saturation, smith_normal_form,
                               solve_integer)


def _z2():
    tbl = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    return FiniteGroup(["e", "s"], tbl)


def test_snf_examples():
    S, U, V = smith_normal_form(IntMat.identity(3))
    assert S == IntMat.identity(3)
    S, U, V = smith_normal_form(IntMat([[2, 0], [0, 3]]))
    assert [S.data[i][i] for i in range(2)] == [1, 6]
    S, _, _ = smith_normal_form(IntMat.zeros(2, 2))
    assert S == IntMat.zeros(2, 2)


def test_snf_random_roundtrip():
    rng = random.Random(99)
    for _ in range(200):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        M = IntMat([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        S, U, V = smith_normal_form(M)
        assert U * M * V == S
        assert abs(U.det()) == 1 and abs(V.det()) == 1
        diag = [S.data[i][i] for i in range(min(r, c))]
        assert all(S.data[i][j] == 0 for i in range(r) for j in range(c) if i != j)
        nz = [d for d in diag if d]
        assert diag[:len(nz)] == nz and all(d > 0 for d in nz)
        for i in range(len(nz) - 1):
            assert nz[i + 1] % nz[i] == 0


def test_kernel_examples():
    assert kernel_basis(IntMat.identity(3)).cols == 0
    kb = kernel_basis(IntMat([[1, 1]]))
    assert kb.cols == 1 and kb.col(0) in ([1, -1], [-1, 1])
    M = IntMat([[2, 4], [1, 2]])
    kb = kernel_basis(M)
    assert kb.cols == 1
    assert M.apply(kb.col(0)) == [0, 0]
    # kernels are saturated: the basis vector is primitive
    from math import gcd
    assert gcd(*kb.col(0)) == 1


def test_solve_integer():
    M = IntMat([[2, 0], [0, 3]])
    assert solve_integer(M, [4, 9]) == [2, 3]
    assert solve_integer(M, [1, 0]) is None


def test_saturation():
    sat = saturation(IntMat([[2], [4]]))
    assert sat.cols == 1 and sat.col(0) in ([1, 2], [-1, -2])


def test_row_hnf_canonical():
    a = row_hnf(IntMat([[1, 2], [3, 4]]))
    b = row_hnf(IntMat([[3, 4], [1, 2]]))
    assert a == b


def test_group_verification():
    with pytest.raises(ValueError):
        FiniteGroup(["a", "b"], {("a", "a"): "a", ("a", "b"): "b",
                                 ("b", "a"): "b", ("b", "b"): "b"})


def test_fixed_submodule_examples():
    G = _z2()
    sign = GLattice(1, G, {"e": IntMat([[1]]), "s": IntMat([[-1]])})
    triv = GLattice.trivial(1, G)
    assert fixed_submodule(sign, G).cols == 0
    assert fixed_submodule(triv, G) == IntMat.identity(1)
    trivial_sub = G.subgroup(["e"])
    assert fixed_submodule(sign.restrict(trivial_sub), trivial_sub) == IntMat.identity(1)


def test_h1_examples():
    G = _z2()
    sign = GLattice(1, G, {"e": IntMat([[1]]), "s": IntMat([[-1]])})
    assert h1(sign, G) == [2]
    assert h1(GLattice.trivial(2, G), G) == []
    trivial_sub = G.subgroup(["e"])
    assert h1(sign.restrict(trivial_sub), trivial_sub) == []


def test_h1_permutation_lattices_trivial():
    # Shapiro: permutation lattices have trivial first cohomology
    for sub in subgroups():
        for lat in (perm_kl(), perm_l(), perm_k()):
            assert h1(lat.restrict(sub), sub) == []


def test_h1_pic_trivial_all_subgroups():
    for sub in subgroups():
        assert h1(pic_lattice().restrict(sub), sub) == []


def test_fixed_rank_matches_trace_average():
    for sub in subgroups():
        for lat in (pic_lattice(), perm_kl(), perm_l(), perm_k()):
            restricted = lat.restrict(sub)
            assert fixed_submodule(restricted, sub).cols == \
                fixed_rank_by_traces(restricted, sub)


def test_is_exact_examples():
    G = _z2()
    z = GLattice(0, G, {g: IntMat([], rows=0, cols=0) for g in G.labels},
                 check=False)
    triv = GLattice.trivial(1, G)
    ident = [
        LatticeMap(z, triv, IntMat([], rows=1, cols=0)),
        LatticeMap(triv, triv, IntMat([[1]])),
        LatticeMap(triv, z, IntMat([], rows=0, cols=1)),
    ]
    assert is_exact(ident).ok
    doubling = [
        LatticeMap(z, triv, IntMat([], rows=1, cols=0)),
        LatticeMap(triv, triv, IntMat([[2]])),
        LatticeMap(triv, z, IntMat([], rows=0, cols=1)),
    ]
    report = is_exact(doubling)
    assert not report.ok and report.failures


def test_is_exact_composition_mismatch():
    G = _z2()
    triv1 = GLattice.trivial(1, G)
    triv2 = GLattice.trivial(2, G)
    f = LatticeMap(triv1, triv2, IntMat([[1], [0]]))
    g = LatticeMap(triv1, triv1, IntMat([[1]]))
    with pytest.raises(CompositionMismatch):
        is_exact([f, g])


def test_equivariant_iso_search_examples():
    G = _z2()
    sign = GLattice(1, G, {"e": IntMat([[1]]), "s": IntMat([[-1]])})
    triv = GLattice.trivial(1, G)
    M, _ = equivariant_iso_search(triv, sign)
    assert M is None  # no nonzero intertwiner at all
    M, _ = equivariant_iso_search(sign, sign)
    assert M == IntMat.identity(1)


def test_hexagon_group_structure():
    G = hexagon_group()
    assert G.order == 12
    assert len(G.conjugacy_classes()) == 6
    assert len(subgroups()) == 16
    # the known subgroup census of the order-12 dihedral group
    from collections import Counter
    orders = Counter(s.order for s in subgroups())
    assert orders == Counter({1: 1, 2: 7, 3: 1, 4: 3, 6: 3, 12: 1})

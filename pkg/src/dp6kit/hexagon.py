"""The hexagon of lines on the split degree-6 del Pezzo surface.

Six lines E1, E2, E3, F1, F2, F3 with the hexagon intersection rules: the
E's are pairwise disjoint, the F's are pairwise disjoint, Ei meets Fj exactly
when i != j.  The Picard lattice uses the blow-up basis (H, E1, E2, E3) with
intersection form diag(1, -1, -1, -1) and canonical class -3H + E1 + E2 + E3,
which makes every line class and the S2 x S3 automorphism action explicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .intlattice import (FiniteGroup, GLattice, IntMat, LatticeMap,
                         equivariant_iso_search, fixed_rank_by_traces,
                         fixed_submodule, h1, is_exact, kernel_basis,
                         mat_from_columns, solve_integer)

LINE_LABELS = ("E1", "E2", "E3", "F1", "F2", "F3")

K_CLASS = (-3, 1, 1, 1)

# pairs of opposite lines and the two triangles of pairwise skew lines
PAIRS = (("E1", "F1"), ("E2", "F2"), ("E3", "F3"))
TRIANGLES = (("E1", "E2", "E3"), ("F1", "F2", "F3"))


def line_class(label):
    """Class of a line in the (H, E1, E2, E3) basis."""
    kind, i = label[0], int(label[1]) - 1
    if kind == "E":
        v = [0, 0, 0, 0]
        v[i + 1] = 1
        return tuple(v)
    j, k = [t for t in range(3) if t != i]
    v = [1, 0, 0, 0]
    v[j + 1] = -1
    v[k + 1] = -1
    return tuple(v)


def intersection(a, b):
    """Intersection number under diag(1, -1, -1, -1)."""
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]


def is_K_divisible(k_coords):
    """Whether the canonical vector is a proper multiple of a lattice vector.

    gcd of coordinates is invariant under any basis change in GL(n, Z).
    """
    g = 0
    for c in k_coords:
        g = gcd(g, c)
    return g > 1


@dataclass(frozen=True)
class HexAut:
    """Automorphism (s, sigma) of the hexagon: s exchanges Ei with Fi,
    sigma permutes the indices simultaneously on both triangles."""

    swap: bool
    perm: tuple  # (sigma(0), sigma(1), sigma(2))

    @staticmethod
    def identity():
        return HexAut(False, (0, 1, 2))

    def apply(self, label):
        kind, i = label[0], int(label[1]) - 1
        if self.swap:
            kind = "F" if kind == "E" else "E"
        return f"{kind}{self.perm[i] + 1}"

    def compose(self, other):
        """self after other."""
        return HexAut(self.swap ^ other.swap,
                      tuple(self.perm[other.perm[i]] for i in range(3)))

    def inverse(self):
        inv = [0, 0, 0]
        for i in range(3):
            inv[self.perm[i]] = i
        return HexAut(self.swap, tuple(inv))

    def order(self):
        g, n = HexAut.identity(), 0
        while True:
            g, n = g.compose(self), n + 1
            if g == HexAut.identity():
                return n

    def cycle_type(self):
        seen, cycles = set(), []
        for i in range(3):
            if i in seen:
                continue
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = self.perm[j]
                n += 1
            cycles.append(n)
        return tuple(sorted(cycles))

    @property
    def label(self):
        word = "".join(str(p + 1) for p in self.perm)
        return ("s" if self.swap else "1") + word

    def perm_word(self):
        """Images of the six line labels, in label order."""
        return [self.apply(l) for l in LINE_LABELS]

    def __repr__(self):
        return f"HexAut({self.label})"


ALL_AUTS = tuple(HexAut(s, p)
                 for s in (False, True)
                 for p in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)))

_AUT_BY_LABEL = {g.label: g for g in ALL_AUTS}


def aut_from_label(label):
    return _AUT_BY_LABEL[label]


def hex_action(g):
    """Induced 4x4 matrix on the Picard lattice (columns = basis images)."""
    img = {l: line_class(g.apply(l)) for l in LINE_LABELS}
    # H = F1 + E2 + E3
    h_img = tuple(img["F1"][t] + img["E2"][t] + img["E3"][t] for t in range(4))
    cols = [h_img, img["E1"], img["E2"], img["E3"]]
    return mat_from_columns([list(c) for c in cols], 4)


@lru_cache(maxsize=None)
def hexagon_group():
    """S2 x S3 as a FiniteGroup on the 12 automorphism labels."""
    labels = [g.label for g in ALL_AUTS]
    table = {(a.label, b.label): a.compose(b).label
             for a in ALL_AUTS for b in ALL_AUTS}
    return FiniteGroup(labels, table)


@lru_cache(maxsize=None)
def subgroups():
    """All 16 subgroups in canonical (order, label list) order."""
    subs = hexagon_group().all_subgroups()
    assert len(subs) == 16
    return tuple(subs)


@lru_cache(maxsize=None)
def pic_lattice():
    G = hexagon_group()
    action = {lbl: hex_action(aut_from_label(lbl)) for lbl in G.labels}
    return GLattice(4, G, action)


def _perm_matrix(images, basis):
    idx = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    rows = [[0] * n for _ in range(n)]
    for j, b in enumerate(basis):
        rows[idx[images[j]]][j] = 1
    return IntMat(rows)


@lru_cache(maxsize=None)
def perm_kl():
    """Z[KL/F]: the permutation lattice on the six lines."""
    G = hexagon_group()
    action = {}
    for lbl in G.labels:
        g = aut_from_label(lbl)
        action[lbl] = _perm_matrix([g.apply(b) for b in LINE_LABELS], LINE_LABELS)
    return GLattice(6, G, action)


@lru_cache(maxsize=None)
def perm_l():
    """Z[L/F]: permutation lattice on the three opposite pairs."""
    G = hexagon_group()
    basis = (0, 1, 2)
    action = {}
    for lbl in G.labels:
        g = aut_from_label(lbl)
        action[lbl] = _perm_matrix([g.perm[b] for b in basis], basis)
    return GLattice(3, G, action)


@lru_cache(maxsize=None)
def perm_k():
    """Z[K/F]: permutation lattice on the two triangles."""
    G = hexagon_group()
    basis = ("tE", "tF")
    action = {}
    for lbl in G.labels:
        g = aut_from_label(lbl)
        if g.swap:
            images = ("tF", "tE")
        else:
            images = ("tE", "tF")
        action[lbl] = _perm_matrix(list(images), basis)
    return GLattice(2, G, action)


def divisor_matrix():
    """4x6 matrix sending each line label to its Picard class."""
    return mat_from_columns([list(line_class(l)) for l in LINE_LABELS], 4)


def divisor_map(subgroup=None):
    G = subgroup if subgroup is not None else hexagon_group()
    return LatticeMap(perm_kl().restrict(G), pic_lattice().restrict(G),
                      divisor_matrix())


@lru_cache(maxsize=None)
def _t_hat_basis():
    return kernel_basis(divisor_matrix())


def t_hat(subgroup=None):
    """The rank-2 kernel of the divisor map, with its induced action.

    Returns (lattice, inclusion map into Z[KL/F]).
    """
    G = subgroup if subgroup is not None else hexagon_group()
    B = _t_hat_basis()
    kl = perm_kl().restrict(G)
    action = {}
    for lbl in G.labels:
        P = kl.action[lbl]
        cols = []
        for j in range(B.cols):
            img = P.apply(B.col(j))
            x = solve_integer(B, img)
            assert x is not None
            cols.append(x)
        action[lbl] = mat_from_columns(cols, B.cols)
    lat = GLattice(B.cols, G, action)
    incl = LatticeMap(lat, kl, B)
    return lat, incl


def _zero_lattice(G):
    return GLattice(0, G, {g: IntMat([], rows=0, cols=0) for g in G.labels},
                    check=False)


def first_sequence(subgroup=None):
    """0 -> T^ -> Z[KL/F] -> Pic -> 0 as a chain of maps with zero caps."""
    G = subgroup if subgroup is not None else hexagon_group()
    that, incl = t_hat(G)
    zero = _zero_lattice(G)
    div = divisor_map(G)
    return [
        LatticeMap(zero, that, IntMat([], rows=that.rank, cols=0)),
        incl,
        div,
        LatticeMap(div.target, zero, IntMat([], rows=0, cols=div.target.rank)),
    ]


def pair_triangle_matrix():
    """5x6 matrix: line -> (its opposite pair, its triangle)."""
    rows = [[0] * 6 for _ in range(5)]
    for j, l in enumerate(LINE_LABELS):
        i = int(l[1]) - 1
        rows[i][j] = 1
        rows[3 if l[0] == "E" else 4][j] = 1
    return IntMat(rows)


def second_sequence(subgroup=None):
    """0 -> T^ -> Z[KL/F] -> Z[L/F] + Z[K/F] -> Z -> 0."""
    G = subgroup if subgroup is not None else hexagon_group()
    that, incl = t_hat(G)
    zero = _zero_lattice(G)
    lk = perm_l().restrict(G).direct_sum(perm_k().restrict(G))
    mid = LatticeMap(perm_kl().restrict(G), lk, pair_triangle_matrix())
    zlat = GLattice.trivial(1, G)
    augdiff = LatticeMap(lk, zlat, IntMat([[1, 1, 1, -1, -1]]))
    return [
        LatticeMap(zero, that, IntMat([], rows=that.rank, cols=0)),
        incl,
        mid,
        augdiff,
        LatticeMap(zlat, zero, IntMat([], rows=0, cols=1)),
    ]


def conjugacy_class_key(g):
    return (g.swap, g.cycle_type())


def trace_table():
    """Trace of the Picard action per conjugacy class of S2 x S3."""
    out = {}
    for g in ALL_AUTS:
        m = hex_action(g)
        tr = sum(m.data[i][i] for i in range(4))
        key = conjugacy_class_key(g)
        if key in out:
            assert out[key] == tr
        else:
            out[key] = tr
    return out


def stable_iso_lattices():
    """The two stably isomorphic lattices: Pic + Z and Z[L/F] + Z[K/F]."""
    G = hexagon_group()
    left = pic_lattice().direct_sum(GLattice.trivial(1, G))
    right = perm_l().direct_sum(perm_k())
    return left, right


@lru_cache(maxsize=None)
def stable_iso_witness(bound=3):
    left, right = stable_iso_lattices()
    return equivariant_iso_search(left, right, bound=bound)


def _verify_intertwiner(M, left, right, subgroup):
    for lbl in subgroup.labels:
        if M * left.action[lbl] != right.action[lbl] * M:
            return False
    return True


def subgroup_report(index):
    """Per-subgroup record used in JSON reports and the acceptance suite."""
    G = subgroups()[index]
    pic = pic_lattice().restrict(G)
    fixed = fixed_submodule(pic, G)
    first = is_exact(first_sequence(G))
    second = is_exact(second_sequence(G))
    M, _ = stable_iso_witness()
    left, right = stable_iso_lattices()
    iso_ok = M is not None and M.is_unimodular() and _verify_intertwiner(M, left, right, G)
    return {
        "subgroup_id": index,
        "order": G.order,
        "generators": [aut_from_label(lbl).perm_word() for lbl in G.generators],
        "fixed_rank": fixed.cols,
        "fixed_rank_by_traces": fixed_rank_by_traces(pic, G),
        "h1": h1(pic, G),
        "sequences_exact": bool(first.ok and second.ok),
        "stable_iso_found": bool(iso_ok),
    }


def all_subgroup_reports():
    return [subgroup_report(i) for i in range(len(subgroups()))]


def reports_json():
    return json.dumps(all_subgroup_reports(), sort_keys=True, separators=(",", ":"))

import random
from fractions import Fraction

import pytest

from dp6kit.algebra3 import (build_split_exchange, companion_matrix,
                             cubic_from_generator, diagonal_cubic,
                             ideal_to_sym, split_exchange_sym)
from dp6kit.brauer import (QuadField, invariant_vector_K, order3_class,
                           restriction)
from dp6kit.dp6 import (build_surface, count_points, expected_frobenius_type,
                        find_lines, frobenius_on_lines, lemma_number_check,
                        predicted_count, raw_point_count, split_model_points,
                        splitting_degree, standard_twists, surface_points,
                        torus_count_check, verify_split_equivalence,
                        zeta_check)
from dp6kit.errors import (EnumerationBudgetExceeded, InconsistentObservation)
from dp6kit.fields import GF, QQ, rref
from dp6kit.hexagon import HexAut

F = Fraction


@pytest.fixture(scope="module")
def twists2():
    return standard_twists(GF(2))


@pytest.fixture(scope="module")
def twists3():
    return standard_twists(GF(3))


def _split_surface_over_Q():
    A = build_split_exchange(QQ)
    return build_surface(A, diagonal_cubic(A))


def test_build_surface_shape():
    s = _split_surface_over_Q()
    assert len(s.coord_basis) == 7
    assert len(s.quadrics) == 9
    # the identity direction is not on the surface: 1# = 1 != 0
    pt = [QQ.one] + [QQ.zero] * 6
    assert any(s.evaluate(pt))


def _cofactor_expansion_quadrics(surface):
    """Independent oracle: expand each adjugate entry as a product of the
    entry linear forms (split model: entries are base-field valued)."""
    field = surface.field
    forms = [[{} for _ in range(3)] for _ in range(3)]
    for j, b in enumerate(surface.coord_basis):
        m = b.data[0]
        for r in range(3):
            for c in range(3):
                if m[r][c]:
                    forms[r][c][j] = m[r][c]
    out = []
    for i in range(3):
        for j in range(3):
            rows = [t for t in range(3) if t != j]
            cols = [t for t in range(3) if t != i]
            quad = {}

            def add(f1, f2, sgn):
                for v1, a in f1.items():
                    for v2, b in f2.items():
                        key = (min(v1, v2), max(v1, v2))
                        term = a * b
                        if sgn < 0:
                            term = -term
                        quad[key] = quad.get(key, field.zero) + term

            add(forms[rows[0]][cols[0]], forms[rows[1]][cols[1]], +1)
            add(forms[rows[0]][cols[1]], forms[rows[1]][cols[0]], -1)
            if (i + j) % 2:
                quad = {k: -v for k, v in quad.items()}
            out.append({k: v for k, v in quad.items() if v})
    return out


def test_quadrics_match_cofactor_oracle_over_Q():
    s = _split_surface_over_Q()
    oracle = _cofactor_expansion_quadrics(s)
    assert [dict(f) for f in s.quadrics] == oracle


def test_quadrics_match_cofactor_oracle_companion_F3():
    A = build_split_exchange(GF(3))
    cm = companion_matrix(tuple(GF(3).from_int(c) for c in (1, 2, 0)), GF(3))
    L = cubic_from_generator(A, split_exchange_sym(A, cm))
    s = build_surface(A, L)
    assert [dict(f) for f in s.quadrics] == _cofactor_expansion_quadrics(s)


def test_quadrics_pointwise_hermitian(twists2):
    s = twists2["kinert-l3"]
    A = s.algebra
    rng = random.Random(8)
    for _ in range(50):
        coords = [GF(2).from_code(rng.randrange(2)) for _ in range(7)]
        direct = s.evaluate(coords)
        x = A.zero()
        for c, b in zip(coords, s.coord_basis):
            x = x + b.scale(c)
        expected = list(A.sym_coords(A.sharp(x)))
        assert direct == expected


def test_quadrics_vanish_on_rank_one_images():
    A = build_split_exchange(GF(3))
    one, zero = GF(3).one, GF(3).zero
    el = ideal_to_sym(A, (one, one, zero), (zero, one, one))
    assert not A.sharp(el)


def test_split_model_points_small():
    assert split_model_points(2) == 13
    assert split_model_points(3) == 22
    assert split_model_points(5) == 46
    assert split_model_points(2, 2) == 33  # 16 + 16 + 1
    assert split_model_points(2, 3) == 97
    with pytest.raises(EnumerationBudgetExceeded):
        split_model_points(3, 9)


def test_count_examples(twists2):
    assert raw_point_count(twists2["split"], 1) == 13
    assert raw_point_count(twists2["kinert-lsplit"], 1) == 9
    assert raw_point_count(twists2["ksplit-l3"], 1) == 7
    rec = count_points(twists2["split"], 1)
    assert rec.raw == rec.predicted == 13


def test_count_matches_point_list(twists2):
    # vectorized counting against the scalar enumeration, both exact
    for name in ("split", "ksplit-l21", "kinert-l3"):
        s = twists2[name]
        assert raw_point_count(s, 1) == len(surface_points(s, 1))
    assert raw_point_count(twists2["split"], 2) == len(surface_points(twists2["split"], 2))


def test_budget_exceeded(twists2):
    with pytest.raises(EnumerationBudgetExceeded):
        raw_point_count(twists2["split"], 7)
    with pytest.raises(EnumerationBudgetExceeded):
        raw_point_count(twists2["split"], 2, budget=100)


def test_verify_split_equivalence(twists2, twists3):
    assert verify_split_equivalence(twists2["split"], 1)
    assert verify_split_equivalence(twists3["split"], 1)
    assert verify_split_equivalence(twists2["split"], 2)


def test_splitting_degrees(twists2):
    degrees = {name: splitting_degree(s) for name, s in twists2.items()}
    assert degrees == {"split": 1, "ksplit-l21": 2, "ksplit-l3": 3,
                       "kinert-lsplit": 2, "kinert-l21": 2, "kinert-l3": 6}


def test_find_lines_configuration(twists2):
    for name, s in twists2.items():
        lr = find_lines(s)
        assert set(lr.lines) == {"E1", "E2", "E3", "F1", "F2", "F3"}
        # hexagon adjacency: Ei meets exactly the two Fj with j != i
        for i in "123":
            assert lr.adjacency[f"E{i}"] == {f"F{j}" for j in "123" if j != i}
        # opposite lines span a rank-4 space, adjacent ones rank 3
        e1 = lr.lines["E1"]
        f1, f2 = lr.lines["F1"], lr.lines["F2"]
        stack = [list(r) for r in e1.matrix] + [list(r) for r in f1.matrix]
        _, piv = rref(stack, lr.field)
        assert len(piv) == 4
        stack = [list(r) for r in e1.matrix] + [list(r) for r in f2.matrix]
        _, piv = rref(stack, lr.field)
        assert len(piv) == 3


def test_frobenius_examples(twists2):
    assert frobenius_on_lines(twists2["split"]) == HexAut.identity()
    phi = frobenius_on_lines(twists2["kinert-lsplit"])
    assert phi.swap and phi.cycle_type() == (1, 1, 1)
    phi = frobenius_on_lines(twists2["ksplit-l21"])
    assert not phi.swap and phi.cycle_type() == (1, 2)
    phi = frobenius_on_lines(twists2["kinert-l3"])
    assert phi.swap and phi.cycle_type() == (3,)
    assert phi.order() == 6


def test_expected_frobenius_types(twists2, twists3):
    for tw in (twists2, twists3):
        for s in tw.values():
            phi = frobenius_on_lines(s)
            assert (phi.swap, phi.cycle_type()) == expected_frobenius_type(s)


def test_zeta_checks_sample(twists3):
    recs = zeta_check(twists3["kinert-l21"])
    assert [r.k for r in recs] == [1, 2]
    assert all(r.ok for r in recs)
    assert recs[0].raw == predicted_count(3, 1, frobenius_on_lines(twists3["kinert-l21"]))


def test_torus_counts(twists2):
    r = torus_count_check(twists2["split"])
    assert r["u_count"] == 1 and r["torus_count"] == 1 and r["ok"]
    r = torus_count_check(twists2["kinert-lsplit"])
    assert r["u_count"] == 9 and r["ok"]  # det(2I + I) = 9 for the inversion action


def test_torus_counts_f3(twists3):
    r = torus_count_check(twists3["split"])
    assert r["u_count"] == 4 and r["ok"]  # (3 - 1)^2


def test_lemma_number_check():
    Ksplit = QuadField.split()
    K2 = QuadField(2)
    d = order3_class({7: F(1, 3), 13: F(2, 3)})
    b_nonsplit = restriction(d, K2)
    # n_S = 6 with split K is inconsistent
    with pytest.raises(InconsistentObservation):
        lemma_number_check(Ksplit, None, {"n_S": 6})
    # n_S = 6 with split B is inconsistent
    with pytest.raises(InconsistentObservation):
        lemma_number_check(K2, invariant_vector_K(K2), {"n_S": 6})
    # nonsplit K and nonsplit B with n_S = 6: fine
    assert lemma_number_check(K2, b_nonsplit, {"n_S": 6}) == "consistent"
    # split B with n_S = 2: fine
    assert lemma_number_check(K2, invariant_vector_K(K2), {"n_S": 2}) == "consistent"
    # split B with n_S = 4 violates n_S | 2
    with pytest.raises(InconsistentObservation):
        lemma_number_check(K2, invariant_vector_K(K2), {"n_S": 4})
    # a rational point forces B split
    with pytest.raises(InconsistentObservation):
        lemma_number_check(K2, b_nonsplit, {"has_rational_point": True})
    # finite-field surface: a point exists and B = 0 is consistent
    assert lemma_number_check(K2, invariant_vector_K(K2),
                              {"has_rational_point": True}) == "consistent"


def test_surface_over_Q_symbolic_only():
    s = _split_surface_over_Q()
    with pytest.raises(Exception):
        raw_point_count(s, 1)


def test_provenance_serialization(twists2):
    d = twists2["kinert-l3"].descriptor_json()
    assert d["provenance"]["kind"] == "hermitian"
    assert len(d["quadrics"]) == 9

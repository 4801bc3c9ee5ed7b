import json
from dataclasses import replace
from fractions import Fraction

import pytest

from dp6kit.brauer import (QuadField, index, invariant_vector, order,
                           order3_class, quaternion_class, restriction,
                           split_pair_K, tensor)
from dp6kit.errors import IndexMismatch, MalformedCase
from dp6kit.proofkit import (AXIOMS, COMPUTATIONS, DEGREE6_WITNESS,
                             ConicBundle, DelPezzoRankOne, FormP1xP1,
                             KernelShape, MASTER_SHAPES, SeveriBrauerSurface,
                             corollary_3or4_check, corollary_cdpgl,
                             kernel_shapes, replay_first_proof,
                             replay_second_proof, transcript,
                             verify_certificate)
from dp6kit.selftest import index6_corpus, random_surface_case

F = Fraction

STANDING = invariant_vector(0, {7: F(1, 6), 13: F(5, 6)})


def test_witness_has_index_6():
    assert index(DEGREE6_WITNESS) == 6
    assert DEGREE6_WITNESS == STANDING


def test_kernel_shapes_severi_brauer():
    d = order3_class({7: F(1, 3), 13: F(2, 3)})
    shapes = kernel_shapes(SeveriBrauerSurface(d))
    assert [s.name for s in shapes] == ["Z/3"]
    assert shapes[0].generators[0] == ("cubic", d)
    assert [s.name for s in kernel_shapes(SeveriBrauerSurface(invariant_vector()))] \
        == ["0"]
    with pytest.raises(MalformedCase):
        kernel_shapes(SeveriBrauerSurface(quaternion_class(-1, -1)))


def test_kernel_shapes_quadric_surface_field():
    K = QuadField(-1)
    # res of a quaternion class has zero corestriction: kernel collapses
    conic = restriction(quaternion_class(-1, -1), K)
    shapes = kernel_shapes(FormP1xP1(K, conic))
    assert [s.name for s in shapes] == ["0"]


def test_kernel_shapes_quadric_surface_split():
    q1, q2 = quaternion_class(-1, -1), quaternion_class(-1, 3)
    shapes = kernel_shapes(FormP1xP1(QuadField.split(), split_pair_K(q1, q2)))
    assert [s.name for s in shapes] == ["Z/2+Z/2"]
    shapes = kernel_shapes(FormP1xP1(QuadField.split(), split_pair_K(q1, q1)))
    assert [s.name for s in shapes] == ["Z/2"]
    zero = invariant_vector()
    shapes = kernel_shapes(FormP1xP1(QuadField.split(), split_pair_K(zero, zero)))
    assert [s.name for s in shapes] == ["0"]


def test_kernel_shapes_conic_bundle():
    shapes = kernel_shapes(ConicBundle(quaternion_class(-1, -1)))
    assert [s.name for s in shapes] == ["Z/2", "Z/2+Z/2"]
    assert all(t == "quaternion" for s in shapes for t, _ in s.generators)
    shapes = kernel_shapes(ConicBundle(invariant_vector()))
    assert [s.name for s in shapes] == ["0", "Z/2"]


def test_kernel_shapes_del_pezzo():
    assert [s.name for s in kernel_shapes(DelPezzoRankOne())] == ["0"]


def test_kernel_shapes_master_list_random():
    import random
    rng = random.Random(55)
    for _ in range(100):
        for s in kernel_shapes(random_surface_case(rng)):
            assert s.name in MASTER_SHAPES


def test_kernel_shape_validation():
    with pytest.raises(MalformedCase):
        KernelShape("Z/5")
    with pytest.raises(MalformedCase):
        KernelShape("Z/3", (("cubic", quaternion_class(-1, -1)),))


def test_corollary_3or4():
    q = quaternion_class(-1, -1)
    d = order3_class({7: F(1, 3), 13: F(2, 3)})
    res = corollary_3or4_check(q, d)
    assert not res.compatible and order(res.witness) == 6
    assert corollary_3or4_check(d, d).compatible
    assert corollary_3or4_check(invariant_vector(), invariant_vector()).compatible
    assert corollary_3or4_check(q, q).compatible
    # products of quaternions stay 2-torsion of index at most 2 over Q
    # (period equals index), hence in the quaternion-like bucket
    prod = tensor(quaternion_class(-1, -1), quaternion_class(2, 5))
    assert order(prod) <= 2 and index(prod) <= 2
    assert corollary_3or4_check(q, prod).compatible


def test_replay_first_proof():
    cert = replay_first_proof(STANDING)
    assert cert.contradiction
    assert verify_certificate(cert)
    kinds = {s.kind for s in cert.steps}
    assert kinds == {"VERIFIED", "AXIOM"}
    # every axiom step carries a source from the registry
    for s in cert.steps:
        if s.kind == "AXIOM":
            assert s.axiom in AXIOMS
        else:
            assert s.computation in COMPUTATIONS


def test_replay_first_proof_alternate_vector():
    A = invariant_vector(0, {7: F(1, 6), 11: F(1, 6), 13: F(2, 3)})
    assert index(A) == 6
    cert = replay_first_proof(A)
    assert cert.contradiction and verify_certificate(cert)


def test_replay_rejects_wrong_index():
    with pytest.raises(IndexMismatch):
        replay_first_proof(quaternion_class(-1, -1))
    with pytest.raises(IndexMismatch):
        replay_second_proof(order3_class({7: F(1, 3), 13: F(2, 3)}))


def test_replay_second_proof():
    cert = replay_second_proof(STANDING)
    assert cert.contradiction and verify_certificate(cert)
    # the contradiction step carries the order-6 witness
    step = next(s for s in cert.steps if s.computation == "corollary_3or4_check")
    assert step.result["witness_order"] == 6
    assert not step.result["compatible"]


def test_replays_on_corpus():
    for A in index6_corpus(10, seed=4242):
        c1 = replay_first_proof(A)
        c2 = replay_second_proof(A)
        assert c1.contradiction and verify_certificate(c1)
        assert c2.contradiction and verify_certificate(c2)


def test_certificate_tamper_detection():
    cert = replay_second_proof(STANDING)
    tampered_steps = []
    for s in cert.steps:
        if s.computation == "index":
            tampered_steps.append(replace(s, result={"index": 5}))
        else:
            tampered_steps.append(s)
    tampered = replace(cert, steps=tuple(tampered_steps))
    assert not verify_certificate(tampered)


def test_certificate_json_and_transcript():
    cert = replay_second_proof(STANDING)
    blob = cert.to_json()
    parsed = json.loads(blob)
    assert parsed["contradiction"] is True
    assert parsed["steps"][0]["kind"] == "VERIFIED"
    text = transcript(cert)
    assert "[AXIOM]" in text and "[VERIFIED]" in text and "verdict" in text


def test_corollary_cdpgl():
    good = corollary_cdpgl(replay_first_proof(STANDING))
    assert "projective linear group" in good.verdict and "3" in good.verdict
    assert verify_certificate(good)
    # a failed replay propagates: no verdict
    from dp6kit.proofkit import ProofCertificate
    failed = ProofCertificate(title="x", algebra={}, steps=(),
                              contradiction=False, verdict="stalled")
    wrapped = corollary_cdpgl(failed)
    assert "no verdict" in wrapped.verdict

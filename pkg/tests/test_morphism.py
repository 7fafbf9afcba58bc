import json
import random
from fractions import Fraction

import pytest

from toricmorph.errors import InputError
from toricmorph.fan import catalog
from toricmorph.grading import class_group, g_element_from_character
from toricmorph.morphism import (MorphismCandidate, load_morphism, morphism_from_dict,
                                 same_morphism, sample, stabilize_profile, verify)
from toricmorph.poly import HomogPoly

P1 = catalog("projective:1")
P2 = catalog("projective:2")
F1 = catalog("hirzebruch:1")
z0, z1 = HomogPoly.var(2, 0), HomogPoly.var(2, 1)
one = HomogPoly.constant(2, 1)


def cand(fan, polys, m=1):
    return MorphismCandidate(fan, m, tuple(p.degree for p in polys), tuple(polys))


def test_p1_coprime_monomials():
    for d in (1, 2, 5):
        assert verify(cand(P1, [z0 ** d, z1 ** d])).status == "morphism"


def test_p1_common_factor_witness():
    v = verify(cand(P1, [z0 * z1, z1 * z1]))
    assert v.status == "not_morphism"
    assert v.witness == (1, 0)
    assert str(v.per_collection[0].common_factor) == "z1"


def test_f1_example():
    v = verify(cand(F1, [z0, one, z1, z0 + z1]))
    assert v.status == "morphism"
    assert [c.status for c in v.per_collection] == ["clear", "clear"]


def test_irrational_common_root_has_no_point():
    q = z0 * z0 + z1 * z1
    v = verify(cand(P1, [q * z0, q * z1]))
    assert v.status == "not_morphism"
    assert v.witness is None
    assert v.per_collection[0].common_factor == q


def test_zero_polynomial_refuted():
    v = verify(cand(P1, [HomogPoly.zero(2, 2), z0 * z1]))
    assert v.status == "not_morphism"
    pt = v.witness
    assert z0.evaluate(pt) * z1.evaluate(pt) == 0


def test_m2_verification():
    w = [HomogPoly.var(3, i) for i in range(3)]
    assert verify(cand(P2, w, m=2)).status == "morphism"
    bad = cand(P2, [w[0] * w[1], w[1] * w[2], w[1] * w[1]], m=2)
    v = verify(bad)
    assert v.status == "not_morphism"
    assert all(p.evaluate(v.witness) == 0 for p in bad.polys)


def test_m2_unknown_with_tiny_budget():
    w = [HomogPoly.var(3, i) for i in range(3)]
    c = cand(P2, [w[0] ** 2 + w[1] * w[2], w[1] ** 2 + w[0] * w[2], w[2] ** 2 + w[0] ** 2],
             m=2)
    full = verify(c).status
    assert full in ("morphism", "not_morphism")
    assert verify(c, budget=0).status in (full, "unknown")


def test_m0_constant_maps():
    c = sample(P1, 0, (0, 0), bound=5, seed=4)
    assert all(p.degree == 0 and p for p in c.polys)
    assert verify(c).status == "morphism"


def test_candidate_shape_errors():
    with pytest.raises(InputError):
        MorphismCandidate(P1, 1, (1, 2), (z0, z1 * z1))
    with pytest.raises(InputError):
        MorphismCandidate(P1, 1, (1, 1), (z0, z1 * z1))
    with pytest.raises(InputError):
        MorphismCandidate(P1, 2, (1, 1), (z0, z1))


def test_same_morphism_examples():
    base = cand(P1, [z0, z1])
    assert same_morphism(base, cand(P1, [2 * z0, 2 * z1]))
    assert not same_morphism(base, cand(P1, [2 * z0, 3 * z1]))
    assert same_morphism(base, base)
    assert not same_morphism(base, cand(P1, [z0 + z1, z1]))


def test_same_morphism_with_zero_slots():
    zero = HomogPoly.zero(2, 1)
    P1P1 = catalog("product_p1_p1")
    a = cand(P1P1, [z0, z1, zero, zero])
    assert same_morphism(a, cand(P1P1, [3 * z0, 3 * z1, zero, zero]))
    assert not same_morphism(a, cand(P1P1, [3 * z0, 2 * z1, zero, zero]))
    assert not same_morphism(a, cand(P1P1, [z0, z1, z0, zero]))


def test_same_morphism_equivalence_relation():
    rng = random.Random(21)
    for fan, m, degs in ((P2, 1, (2, 2, 2)), (F1, 1, (2, 1, 2, 3))):
        cg = class_group(fan)
        for seed in range(10):
            c = sample(fan, m, degs, seed=seed)
            gs = [g_element_from_character(cg, [Fraction(rng.randint(1, 6), rng.randint(1, 6))
                                                for _ in range(cg.rank)]) for _ in range(2)]
            a, b = c.scaled(gs[0]), c.scaled(gs[1])
            assert same_morphism(c, c)
            assert same_morphism(a, c) and same_morphism(c, a)
            assert same_morphism(a, b) and same_morphism(b, a)
            assert [x.status for x in verify(a).per_collection] == \
                [x.status for x in verify(c).per_collection]


def test_sample_deterministic():
    assert sample(P2, 1, (3, 3, 3), seed=8) == sample(P2, 1, (3, 3, 3), seed=8)
    assert sample(P2, 1, (3, 3, 3), seed=8) != sample(P2, 1, (3, 3, 3), seed=9)


def test_sample_witnesses_vanish():
    for bound, expect_refutations in ((9, False), (1, True)):
        refuted = 0
        for seed in range(200):
            c = sample(P2, 1, (2, 2, 2), bound=bound, seed=seed)
            v = verify(c)
            if v.status == "not_morphism":
                refuted += 1
                assert v.witness is not None and any(v.witness)
                assert all(p.evaluate(v.witness) == 0 for p in c.polys)
        # coefficients in [-1, 1] collide often enough to exercise the witness path
        if expect_refutations:
            assert refuted > 0


def test_stabilize_profile():
    c = cand(P1, [z0 ** 3, z1 ** 3])
    prof = stabilize_profile(c, (1, 1))
    assert prof.p == (4, 4) and prof.q == (1, 1)
    prof0 = stabilize_profile(c, (0, 0))
    assert prof0.p == (3, 3) and prof0.q == (0, 0)
    c = cand(F1, [z0 * z0, z1, z0 * z1, z1 ** 3])
    prof = stabilize_profile(c, (1, 0, 1, 1))
    assert prof.p == (3, 1, 3, 4) and prof.q == (1, 0, 1, 1)
    with pytest.raises(InputError):
        stabilize_profile(c, (1, 0, 0, 0))
    with pytest.raises(InputError):
        stabilize_profile(cand(P1, [z0, z1]), (-1, -1))


def test_json_roundtrip(tmp_path):
    c = sample(F1, 1, (2, 1, 2, 3), seed=1)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_dict()))
    assert load_morphism(path) == c
    data = c.to_dict()
    data["fan"] = "hirzebruch:1"
    assert morphism_from_dict(data) == c
    data["degrees"] = [2, 1, 2, 2]
    with pytest.raises(InputError):
        morphism_from_dict(data)

from itertools import combinations

import pytest

from toricmorph.fan import Fan, catalog, projective, standard_catalog
from toricmorph.primitive import (in_some_cone, primitive_collections,
                                  y_membership_from_collections, y_membership_oracle)
from oracles import brute_primitive_collections

F1 = catalog("hirzebruch:1")
P2 = catalog("projective:2")


@pytest.mark.parametrize("fan,strata,k", [
    (P2, [(0, 1, 2)], 3),
    (F1, [(0, 2), (1, 3)], 2),
    (projective(1), [(0, 1)], 2),
])
def test_examples(fan, strata, k):
    y = primitive_collections(fan)
    assert [s.ray_indices for s in y.strata] == strata
    assert y.k == k
    assert y.y_complex_dim == fan.r - k


def test_against_brute_force():
    for fan in standard_catalog(10):
        got = [s.ray_indices for s in primitive_collections(fan).strata]
        assert got == brute_primitive_collections(fan.r, fan.max_cones)


def test_y_oracle_examples():
    assert y_membership_oracle(P2, {0, 1, 2})
    assert not y_membership_oracle(P2, {0})
    assert y_membership_oracle(F1, {0, 2})
    assert not y_membership_oracle(F1, {0, 1})


def test_collection_properties():
    for fan in standard_catalog(9):
        y = primitive_collections(fan)
        for s in y.strata:
            assert not in_some_cone(fan, s.ray_indices)
            for sub in combinations(s.ray_indices, len(s) - 1):
                assert in_some_cone(fan, sub)
        for a, b in combinations(y.strata, 2):
            assert not set(a.ray_indices) <= set(b.ray_indices)
            assert not set(b.ray_indices) <= set(a.ray_indices)
        if fan.r >= fan.dim + 1:
            assert y.k >= 2


def test_y_definitions_agree_small():
    for fan in standard_catalog(7):
        for mask in range(1 << fan.r):
            pattern = [i for i in range(fan.r) if mask >> i & 1]
            assert y_membership_oracle(fan, pattern) == y_membership_from_collections(fan, pattern)


def test_product_p1_p1():
    y = primitive_collections(catalog("product_p1_p1"))
    assert [s.ray_indices for s in y.strata] == [(0, 1), (2, 3)]

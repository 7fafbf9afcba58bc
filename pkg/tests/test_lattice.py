import random

import pytest
from hypothesis import given, settings, strategies as st

from toricmorph.lattice import (det, feasible_nonnegative, integer_kernel, matmul, matvec, snf,
                                solve_integral)
from oracles import brute_integer_solution


def assert_snf_contract(A, res):
    rows = len(A)
    cols = len(A[0]) if rows else 0
    assert matmul(matmul(res.U, A), res.V) == res.S
    assert abs(det(res.U)) == 1
    assert abs(det(res.V)) == 1
    diag = [res.S[i][i] for i in range(min(rows, cols))]
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert res.S[i][j] == 0
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[:len(nonzero)] == nonzero
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert res.invariant_factors == tuple(nonzero)


def test_snf_identity():
    res = snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert res.S == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert res.invariant_factors == (1, 1, 1)


def test_snf_two_by_two():
    # gcd of entries is 2 and |det| = 8
    A = [[2, 4], [6, 8]]
    res = snf(A)
    assert res.invariant_factors == (2, 4)
    assert_snf_contract(A, res)


def test_snf_projective_plane_rays():
    A = [[1, 0], [0, 1], [-1, -1]]
    res = snf(A)
    assert res.invariant_factors == (1, 1)
    assert len(A) - res.rank == 1


def test_snf_deterministic():
    A = [[4, 6, 2], [8, 3, -5], [0, 12, 7]]
    assert snf(A) == snf([row[:] for row in A])


def test_snf_degenerate_shapes():
    assert snf([[0, 0], [0, 0]]).invariant_factors == ()
    assert snf([[5]]).invariant_factors == (5,)
    assert snf([[-3]]).S == [[3]]
    assert_snf_contract([[0, 0, 6], [0, 4, 0]], snf([[0, 0, 6], [0, 4, 0]]))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c),
                       min_size=r, max_size=r))))
def test_snf_contract_property(A):
    assert_snf_contract(A, snf(A))


def test_solve_integral_examples():
    assert solve_integral([[1, 0], [0, 1], [-1, -1]], [1, 0, -1]) == [1, 0]
    assert solve_integral([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [4, -2, 7]) == [4, -2, 7]
    assert solve_integral([[1, 0], [-1, 0], [0, 1], [0, -1]], [1, 0, -1, 0]) is None


def test_solve_integral_rational_but_not_integral():
    assert solve_integral([[2, 0], [0, 2]], [1, 2]) is None
    assert solve_integral([[2, 4]], [6]) is not None


def test_solve_integral_against_box_search():
    rng = random.Random(7)
    for _ in range(150):
        rows, cols = rng.randint(1, 4), rng.randint(1, 3)
        A = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.5:
            x0 = [rng.randint(-3, 3) for _ in range(cols)]
            b = matvec(A, x0)
        else:
            b = [rng.randint(-4, 4) for _ in range(rows)]
        x = solve_integral(A, b)
        if x is not None:
            assert matvec(A, x) == b
        else:
            # no solution anywhere, in particular none in the box
            assert brute_integer_solution(A, b, box=6) is None


def test_integer_kernel():
    K = integer_kernel([[1, 1, 1]])
    assert len(K) == 2
    for v in K:
        assert sum(v) == 0
    assert integer_kernel([], ncols=2) == [[1, 0], [0, 1]]


@pytest.mark.parametrize("A,expected", [
    ([[1, 2], [3, 4]], -2),
    ([[0, 1], [1, 0]], -1),
    ([[2, 0, 0], [0, 3, 0], [0, 0, 4]], 24),
    ([[1, 2], [2, 4]], 0),
])
def test_det(A, expected):
    assert det(A) == expected


def test_feasible_nonnegative():
    x = feasible_nonnegative([[1, 1]], [3])
    assert x is not None and sum(x) == 3 and min(x) >= 0
    assert feasible_nonnegative([[1, 1]], [-1]) is None
    assert feasible_nonnegative([[1, -1], [1, 1]], [0, -2]) is None

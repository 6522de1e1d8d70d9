import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix as SymMatrix

from chainmodels.exactlin import (CompositionNotZero, HomologyGroup, Matrix, NotSolvable, coordinates,
                                  homology_at, integer_kernel, invariant_factors, rank, rank_rational,
                                  rational_kernel, smith_normal_form, solve_integer, solve_rational)
from oracles import determinantal_factors, snf_elementary

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)))


def is_unimodular(M):
    return abs(SymMatrix(M.to_lists()).det()) == 1


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_decomposition(rows):
    M = Matrix(rows)
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert is_unimodular(snf.U) and is_unimodular(snf.V)
    diag = snf.diagonal
    for i in range(M.nrows):
        for j in range(M.ncols):
            if i != j:
                assert snf.D[i, j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz


@settings(max_examples=150, deadline=None)
@given(matrices(4, 4))
def test_invariant_factors_match_minors(rows):
    assert sorted(invariant_factors(Matrix(rows))) == determinantal_factors(rows)
    assert sorted(invariant_factors(Matrix(rows))) == snf_elementary(rows)


def test_snf_hand_examples():
    assert smith_normal_form(Matrix([[2, 4], [6, 8]])).diagonal == [2, 4]
    assert smith_normal_form(Matrix([[0, 0], [0, 0]])).diagonal == [0, 0]
    assert invariant_factors(Matrix([[2, 0], [0, 3]])) == [1, 6]
    assert invariant_factors(Matrix.zeros(3, 0)) == []


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy(rows):
    assert rank_rational(Matrix(rows)) == SymMatrix(rows).rank()
    assert rank(Matrix(rows)) == SymMatrix(rows).rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernels(rows):
    M = Matrix(rows)
    K = rational_kernel(M)
    assert K.ncols == M.ncols - rank_rational(M)
    assert (M @ K).is_zero() if K.ncols else True
    Z = integer_kernel(M)
    assert Z.ncols == K.ncols
    if Z.ncols:
        assert (M @ Z).is_zero()
        # saturated: the lattice basis extends to a unimodular matrix, so its gcd of maximal minors is 1
        assert determinantal_factors(Z.to_lists())[-1] == 1


def test_integer_kernel_is_saturated():
    Z = integer_kernel(Matrix([[2, 4]]))
    assert Z.ncols == 1 and abs(Z[0, 0]) == 2 and abs(Z[1, 0]) == 1


def test_solve():
    A = Matrix([[2, 0], [0, 3]])
    assert solve_rational(A, [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_integer(A, [4, 9]) == [2, 3]
    with pytest.raises(NotSolvable):
        solve_integer(A, [1, 1])
    with pytest.raises(NotSolvable):
        solve_rational(Matrix([[1], [1]]), [0, 1])


def test_coordinates():
    B = Matrix([[1, 0], [1, 1], [0, 2]])
    assert coordinates(B, [2, 5, 6], integral=True) == [2, 3]
    with pytest.raises(NotSolvable):
        coordinates(B, [1, 1, 1], integral=True)


def test_homology_at():
    # RP^2 style: Z --2--> Z
    d_in = Matrix([[2]])
    d_out = Matrix.zeros(0, 1)
    assert homology_at(d_in, d_out) == HomologyGroup(0, (2,))
    assert homology_at(d_in, d_out, "Q") == HomologyGroup(0)
    assert homology_at(Matrix.zeros(2, 0), Matrix.zeros(0, 2)).betti == 2
    with pytest.raises(CompositionNotZero):
        homology_at(Matrix([[1]]), Matrix([[1]]))


def test_homology_group_rejects_bad_torsion():
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 2))
    assert str(HomologyGroup(2, (2,))) == "Z^2 + Z/2"
    assert HomologyGroup(0).is_zero


def test_random_snf_matches_elementary_oracle():
    rng = random.Random(7)
    for _ in range(200):
        m = [[rng.randint(-20, 20) for _ in range(rng.randint(1, 6))] for _ in range(1)]
        rows = [[rng.randint(-20, 20) for _ in range(5)] for _ in range(rng.randint(1, 6))]
        assert [d for d in smith_normal_form(Matrix(rows)).diagonal if d] == snf_elementary(rows)
        assert [abs(d) for d in smith_normal_form(Matrix(m)).diagonal if d] == snf_elementary(m)

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orbichar.errors import NoSolutionError
from orbichar.linalg import kernel_basis, mat_vec, rank, solve


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_basis(m):
    ker = kernel_basis(m)
    ncols = len(m[0])
    assert len(ker) == ncols - rank(m)
    for v in ker:
        assert not any(mat_vec(m, v))
    if ker:
        assert rank(ker) == len(ker)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
def test_solve_square(system):
    a, x = system
    b = mat_vec(a, x)
    if sympy.Matrix(a).rank() == len(a):
        assert solve(a, b) == [Fraction(v) for v in x]
    else:
        with pytest.raises(NoSolutionError):
            solve(a, b)


def test_solve_examples():
    assert solve([[1, 1], [1, 2]], [3, 5]) == [1, 2]
    assert solve([[2, 0], [0, 3]], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]
    with pytest.raises(NoSolutionError):
        solve([[1, 1], [2, 2]], [1, 3])
    # overdetermined but consistent
    assert solve([[1, 0], [0, 1], [1, 1]], [2, 3, 5]) == [2, 3]
    with pytest.raises(NoSolutionError):
        solve([[1, 0], [0, 1], [1, 1]], [2, 3, 6])


def test_rank_edge_cases():
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[Fraction(1, 3), Fraction(2, 3)], [1, 2]]) == 1
    assert kernel_basis([[0, 0]]) == [[1, 0], [0, 1]]

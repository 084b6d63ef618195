import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from annlat.linalg import inverse, kernel, rank, rref, solve, span_of
from annlat.matrix import Matrix

from conftest import to_sympy

small = st.integers(-3, 3)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 4))
def test_rref_and_rank_match_sympy(rows):
    m = Matrix.from_rows(rows)
    R, piv = rref(m)
    S, spiv = sympy.Matrix(rows).rref()
    assert list(piv) == list(spiv)
    assert rank(m) == len(spiv)
    if spiv:
        assert to_sympy(R) == S[: len(spiv), :]
    else:
        assert R.shape[0] == 0


@settings(max_examples=60, deadline=None)
@given(int_matrix(3, 4))
def test_kernel_is_exact_nullspace(rows):
    m = Matrix.from_rows(rows)
    ks = kernel(m)
    assert len(ks) == 4 - sympy.Matrix(rows).rank()
    for v in ks:
        assert (m @ v).is_zero()


def test_complex_kernel():
    i = (0, 1)
    m = Matrix.from_rows([[1, i], [i, -1]])
    (v,) = kernel(m)
    assert (m @ v).is_zero()


@settings(max_examples=40, deadline=None)
@given(int_matrix(3, 3))
def test_inverse_or_singular(rows):
    m = Matrix.from_rows(rows)
    if sympy.Matrix(rows).det() == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert m @ inverse(m) == Matrix.identity(3)


def test_solve_consistent_and_inconsistent():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    assert solve(m, Matrix.from_vector([1, 3])) is None
    x = solve(m, Matrix.from_vector([1, 2]))
    assert m @ x == Matrix.from_vector([1, 2])


def test_span_of_dimension():
    vs = [Matrix.from_vector(v) for v in ([1, 0, 1], [0, 1, 1], [1, 1, 2])]
    assert span_of(vs).dim == 2

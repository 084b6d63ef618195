from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from annlat.algebra import (
    characteristic_polynomial,
    corner,
    decompose_selfadjoint,
    full_matrix_algebra,
    generate_star_algebra,
    is_positive,
    maximal_commutative_subalgebra,
    range_projection,
)
from annlat.errors import NoUnit, NotAProjection, NotPositive
from annlat.fixtures import block_algebra, block_generators, fixture, fixture_generators, random_algebra
from annlat.matrix import Matrix
from annlat.policy import NumericPolicy
from annlat.scalar import ExactScalar
from annlat.sampling import random_positive, random_selfadjoint

from conftest import E, M, np_algebra_dim, np_center_dim, to_sympy

H = Fraction(1, 2)


@pytest.mark.parametrize("name,dim", [("FULL2", 4), ("DIAG3", 3), ("BLOCK21", 5), ("SCALAR2", 1), ("BLOCK211", 6)])
def test_fixture_dimensions(name, dim):
    A = fixture(name)
    n, gens = fixture_generators()[name]
    assert A.dim == dim == np_algebra_dim(gens, n)
    assert A.unit == Matrix.identity(n)


@pytest.mark.parametrize("blocks", [[(2, 1)], [(2, 2)], [(3, 1), (1, 1)], [(1, 2), (2, 1)]])
def test_block_algebra_dimension_matches_brute_force(blocks):
    N, gens = block_generators(blocks)
    A = block_algebra(blocks)
    assert A.dim == sum(n * n for n, _ in blocks) == np_algebra_dim(gens, N)
    assert len(A.center) == len(blocks) == np_center_dim(A.basis)


def test_zero_span_has_no_unit():
    with pytest.raises(NoUnit):
        generate_star_algebra(3, [Matrix.zeros(3)])


def test_unit_of_a_corner_span():
    A = generate_star_algebra(3, [E(3, 1, 2)])
    assert A.unit == E(3, 1, 1) + E(3, 2, 2)
    assert A.dim == 4


@pytest.mark.parametrize("seed", range(4))
def test_random_algebra_center_matches_oracle(seed):
    A = random_algebra(seed)
    assert len(A.center) == np_center_dim(A.basis)
    for z in A.center:
        assert all((z @ b - b @ z).is_zero() for b in A.basis)


def test_positivity_examples(FULL2):
    assert is_positive(FULL2, E(2, 1, 1))
    assert is_positive(FULL2, M([[1, 1], [1, 1]]))
    assert not is_positive(FULL2, E(2, 1, 2))
    assert not is_positive(FULL2, M([[1, 2], [2, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_positivity_matches_sympy_eigenvalues(entries):
    a = Matrix.from_rows([entries[0:3], entries[3:6], entries[6:9]])
    h = a + a.H
    A = full_matrix_algebra(3)
    eig = sympy.Matrix(to_sympy(h)).eigenvals()
    expected = all(sympy.re(sympy.N(ev, 30)) > -1e-20 for ev in eig)
    assert is_positive(A, h) == expected


def test_characteristic_polynomial():
    assert [c.re for c in characteristic_polynomial(M([[1, 1], [1, 1]]))] == [1, -2, 0]


def test_range_projection_examples(FULL2, DIAG3):
    half = M([[H, H], [H, H]])
    assert range_projection(FULL2, M([[1, 1], [1, 1]])) == half
    assert range_projection(DIAG3, Matrix.diag([2, 3, 0])) == Matrix.diag([1, 1, 0])
    assert range_projection(FULL2, Matrix.identity(2)) == Matrix.identity(2)
    with pytest.raises(NotPositive):
        range_projection(FULL2, E(2, 1, 2))


def test_center_examples(FULL2, DIAG3, BLOCK21):
    assert FULL2.center == [Matrix.identity(2)]
    assert len(DIAG3.center) == 3
    block = E(3, 1, 1) + E(3, 2, 2)
    assert len(BLOCK21.center) == 2
    from annlat.linalg import span_of
    sp = span_of([z.flat() for z in BLOCK21.center])
    assert sp.contains(block.flat()) and sp.contains(E(3, 3, 3).flat())


def test_maximal_commutative_examples(FULL2, DIAG3, BLOCK21):
    C = maximal_commutative_subalgebra(FULL2, [E(2, 1, 1)])
    assert C.dim == 2 and C.contains(E(2, 2, 2))
    assert maximal_commutative_subalgebra(DIAG3).dim == 3
    C = maximal_commutative_subalgebra(BLOCK21, [E(3, 3, 3)])
    assert C.dim == 3 and C.unit == Matrix.identity(3)


@pytest.mark.parametrize("name", ["FULL2", "BLOCK21", "BLOCK211"])
def test_maximal_commutative_is_maximal(name):
    A = fixture(name)
    C = maximal_commutative_subalgebra(A)
    assert C.is_commutative()
    # maximal: the relative commutant of C in A is C itself
    assert len(A.commutant(C.basis)) == C.dim


def test_maximal_commutative_float_backend():
    A = fixture("BLOCK211").to_float()
    C = maximal_commutative_subalgebra(A)
    assert C.dim == 4 and C.unit == A.unit


def test_decompose_selfadjoint_examples(FULL2):
    x, y = decompose_selfadjoint(FULL2, E(2, 1, 2))
    assert x == M([[0, H], [H, 0]])
    assert y == M([[0, (0, -H)], [(0, H), 0]])
    assert x + y.scale(ExactScalar(0, 1)) == E(2, 1, 2)
    assert decompose_selfadjoint(FULL2, E(2, 1, 1)) == (E(2, 1, 1), Matrix.zeros(2))
    iI = Matrix.identity(2).scale(ExactScalar(0, 1))
    assert decompose_selfadjoint(FULL2, iI) == (Matrix.zeros(2), Matrix.identity(2))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_sampled_positive_elements_are_positive(seed):
    A = fixture("BLOCK21")
    rng = np.random.default_rng(seed)
    assert is_positive(A, random_positive(A, rng))
    h = random_selfadjoint(A, rng)
    assert h.is_selfadjoint() and A.contains(h)


def test_corner_requires_projection(FULL2):
    with pytest.raises(NotAProjection):
        corner(FULL2, M([[1, 1], [0, 0]]))
    assert corner(FULL2, E(2, 1, 1)).dim == 1


def test_float_policy_generation_matches_exact():
    for name in fixture_generators():
        exact = fixture(name)
        flt = fixture(name, NumericPolicy("float"))
        assert flt.dim == exact.dim
        assert len(flt.center) == len(exact.center)

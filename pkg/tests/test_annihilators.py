from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annlat.annihilators import (
    annihilator,
    d_operator,
    double_annihilator,
    from_projection,
    ideal_closure,
    lift,
    relative_annihilator,
    whole,
    zero,
)
from annlat.errors import NotInSubalgebra, NotPositive
from annlat.fixtures import fixture
from annlat.linalg import span_of
from annlat.matrix import Matrix
from annlat.sampling import random_positive

from conftest import E, M

H = Fraction(1, 2)


def same_span(xs, ys):
    if len(xs) != len(ys):
        return False
    sp = span_of([x.flat() for x in xs]) if xs else None
    return all(sp.contains(y.flat()) for y in ys) if xs else True


def test_annihilator_examples(FULL2, DIAG3, BLOCK21):
    V = annihilator(FULL2, [E(2, 1, 1)])
    assert V.p == E(2, 2, 2) and V.dim == 1
    assert annihilator(DIAG3, [DIAG3.unit]).is_zero()
    B = annihilator(BLOCK21, [E(3, 3, 3)])
    assert B.dim == 4 and B.p == E(3, 1, 1) + E(3, 2, 2)
    assert annihilator(FULL2, []) == whole(FULL2)


def test_annihilator_space_agrees_with_corner(BLOCK21):
    # the solved space {a : a t + t a = 0} is exactly pAp
    V = annihilator(BLOCK21, [E(3, 3, 3)])
    assert same_span(V.space, V.hereditary_space)


def test_annihilator_rejects_non_positive(FULL2):
    with pytest.raises(NotPositive):
        annihilator(FULL2, [E(2, 1, 2)])
    with pytest.raises(NotPositive):
        annihilator(FULL2, [M([[1, 2], [2, 1]])])


def test_double_annihilator_examples(FULL2, DIAG3):
    assert double_annihilator(DIAG3, [Matrix.diag([2, 3, 0])]).p == Matrix.diag([1, 1, 0])
    assert double_annihilator(FULL2, [E(2, 1, 1)]).p == E(2, 1, 1)
    for A in (FULL2, DIAG3):
        assert double_annihilator(A, [A.unit]) == whole(A)


def test_relative_annihilator_examples(DIAG3, FULL2):
    B = from_projection(DIAG3, Matrix.diag([1, 1, 0]))
    R = relative_annihilator(B, [E(3, 1, 1)])
    assert R.p == E(3, 2, 2)
    W = whole(FULL2)
    assert lift(relative_annihilator(W, [E(2, 1, 1)]), FULL2) == annihilator(FULL2, [E(2, 1, 1)])
    assert relative_annihilator(B, [B.p]).is_zero()
    with pytest.raises(NotInSubalgebra):
        relative_annihilator(B, [E(3, 3, 3)])


def test_d_operator_examples(FULL2, DIAG3):
    D = d_operator(FULL2, from_projection(FULL2, E(2, 1, 1)))
    assert len(D) == 3 and all(x[0, 0].is_zero() for x in D)
    D = d_operator(DIAG3, from_projection(DIAG3, E(3, 1, 1)))
    assert same_span(D, [E(3, 2, 2), E(3, 3, 3)])
    assert len(d_operator(FULL2, zero(FULL2))) == FULL2.dim


def test_ideal_closure_stays_in_block(BLOCK21):
    ideal = ideal_closure(BLOCK21, [E(3, 1, 1)])
    assert len(ideal) == 4
    assert all(x[2, 2].is_zero() for x in ideal)


positives = st.integers(0, 2**32 - 1)


@settings(max_examples=30, deadline=None)
@given(positives, st.sampled_from(["FULL2", "BLOCK21", "BLOCK211"]))
def test_galois_connection(seed, name):
    A = fixture(name)
    rng = np.random.default_rng(seed)
    s, t = random_positive(A, rng), random_positive(A, rng)
    S, ST = annihilator(A, [s]), annihilator(A, [s, t])
    # larger set, smaller annihilator
    assert ST.p @ S.p == ST.p
    # triple annihilator collapses
    assert annihilator(A, [double_annihilator(A, [s]).p]) == S
    # S is contained in its double annihilator
    D = double_annihilator(A, [s])
    assert D.p @ s @ D.p == s


@settings(max_examples=30, deadline=None)
@given(positives, st.sampled_from(["FULL2", "DIAG3", "BLOCK21"]))
def test_annihilators_are_hereditary(seed, name):
    A = fixture(name)
    rng = np.random.default_rng(seed)
    V = annihilator(A, [random_positive(A, rng)])
    assert V.p.is_projection() and A.contains(V.p)
    for x in V.hereditary_space:
        for b in A.basis:
            assert V.contains(x @ b @ x)

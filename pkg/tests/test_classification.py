from fractions import Fraction

import numpy as np
import pytest

from annlat.annihilators import from_projection, whole
from annlat.classification import (
    EXACT_LEVEL,
    check_type_In_certificate,
    check_type_invariants,
    classify_type_In,
    decompose_types,
    equivalent_annihilators,
    factor_witness,
    find_abelian_annihilator,
    has_nonzero_abelian_annihilator,
    is_abelian_annihilator,
    is_factor,
    is_finite_projection,
    partial_isometry_oracle,
    projections_equivalent,
    rationalize,
)
from annlat.errors import NotAProjection
from annlat.fixtures import block_algebra, fixture, random_algebra, random_algebra_blocks
from annlat.matrix import Matrix

from conftest import E


def test_abelian_examples(FULL2, BLOCK21, DIAG3):
    assert is_abelian_annihilator(from_projection(FULL2, E(2, 1, 1)))
    assert not is_abelian_annihilator(from_projection(BLOCK21, E(3, 1, 1) + E(3, 2, 2)))
    assert is_abelian_annihilator(whole(DIAG3))


def test_factor_examples(FULL2, BLOCK21, SCALAR2):
    assert is_factor(FULL2) and is_factor(SCALAR2)
    assert not is_factor(BLOCK21)
    w = factor_witness(BLOCK21)
    assert w["product_zero"] and sorted((w["dim_I"], w["dim_J"])) == [1, 4]
    assert factor_witness(FULL2) is None


@pytest.mark.parametrize("name,cert", [("FULL2", E(2, 1, 1)), ("BLOCK21", E(3, 3, 3)), ("SCALAR2", Matrix.identity(2))])
def test_abelian_certificates(name, cert):
    A = fixture(name)
    found, V = has_nonzero_abelian_annihilator(A)
    assert found and V.p == cert
    c = find_abelian_annihilator(A)
    assert c and c.certificate_level == EXACT_LEVEL


@pytest.mark.parametrize("name", ["FULL2", "DIAG3", "SCALAR2"])
def test_decompose_examples(name):
    A = fixture(name)
    rep = decompose_types(A)
    assert rep.A_I == whole(A) and rep.A_II.is_zero() and rep.A_III.is_zero()
    assert rep.type_label == "I"
    assert check_type_invariants(rep).passed


@pytest.mark.parametrize("name,label", [("FULL2", "I_2"), ("DIAG3", "I_1 ⊕ I_1 ⊕ I_1"),
                                        ("BLOCK21", "I_2 ⊕ I_1"), ("SCALAR2", "I_1"),
                                        ("BLOCK211", "I_2 ⊕ I_1 ⊕ I_1")])
def test_type_In_labels(name, label):
    rep = classify_type_In(fixture(name))
    assert rep.type_label == label
    assert rep.certificate_level == EXACT_LEVEL
    assert check_type_In_certificate(rep).passed


def test_type_In_factor_family():
    rep = classify_type_In(fixture("FULL2"))
    assert sorted(V.p.sort_key() for V in rep.abelian_family) == sorted(
        p.sort_key() for p in (E(2, 1, 1), E(2, 2, 2)))
    assert rep.details["n_squared_is_dim"]


@pytest.mark.parametrize("seed", [0, 3, 7])
def test_type_In_random_algebras_match_construction(seed):
    A = random_algebra(seed)
    rep = classify_type_In(A)
    assert sorted(rep.family_sizes, reverse=True) == sorted((n for n, _ in random_algebra_blocks(seed)), reverse=True)
    assert check_type_In_certificate(rep).passed


def test_irrational_spectrum_falls_back_to_float():
    rep = classify_type_In(fixture("IRRATIONAL2"))
    assert rep.type_label == "I_1 ⊕ I_1"
    assert rep.certificate_level.startswith("float")
    assert check_type_In_certificate(rep).passed


def test_rationalize_recovers_fractions():
    a = np.array([[0.5, 1 / 3], [1 / 3, 0.25]])
    m = rationalize(a)
    assert m[0, 1].re == Fraction(1, 3)


def test_equivalence_examples(FULL2, BLOCK21):
    ok, w = equivalent_annihilators(from_projection(FULL2, E(2, 1, 1)), from_projection(FULL2, E(2, 2, 2)))
    assert ok and w.equivalent
    x = partial_isometry_oracle(FULL2, E(2, 1, 1), E(2, 2, 2))
    assert x.kind == "partial-isometry" and x.data == E(2, 1, 2)
    assert x.verify(E(2, 1, 1), E(2, 2, 2))
    ok, w = equivalent_annihilators(from_projection(BLOCK21, E(3, 1, 1)), from_projection(BLOCK21, E(3, 3, 3)))
    assert not ok and not w.equivalent
    V = from_projection(BLOCK21, E(3, 1, 1))
    assert equivalent_annihilators(V, V)[0]


def test_projection_equivalence_examples(FULL2, BLOCK21):
    assert projections_equivalent(FULL2, E(2, 1, 1), E(2, 2, 2))
    assert not projections_equivalent(FULL2, E(2, 1, 1), Matrix.identity(2))
    assert not projections_equivalent(BLOCK21, E(3, 1, 1), E(3, 3, 3))
    with pytest.raises(NotAProjection):
        projections_equivalent(FULL2, E(2, 1, 2), E(2, 2, 2))


def test_oracle_rejects_different_ranks(FULL2):
    assert partial_isometry_oracle(FULL2, E(2, 1, 1), Matrix.identity(2)) is None


def test_finite_projection_examples(FULL2, BLOCK21, DIAG3):
    assert is_finite_projection(FULL2, Matrix.identity(2))
    assert is_finite_projection(BLOCK21, E(3, 1, 1) + E(3, 2, 2))
    assert is_finite_projection(DIAG3, Matrix.zeros(3))


@pytest.mark.parametrize("n,m", [(2, 1), (3, 1), (2, 2)])
def test_matrix_factor_label(n, m):
    A = block_algebra([(n, m)])
    rep = classify_type_In(A)
    assert rep.is_factor and rep.type_label == f"I_{n}" and n * n == A.dim


def test_to_dict_is_plain_json():
    import json
    rep = classify_type_In(fixture("BLOCK21"))
    json.dumps(rep.to_dict())

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annlat.abstract import (
    AbstractOrtholattice,
    boolean_lattice,
    chain,
    classify_lattice_type,
    hexagon_o6,
    is_boolean,
    is_modular,
    lattice_center_abstract,
    mixed_lattice,
    mo2,
    nonmodular_orthomodular,
    pentagon_n5,
    verify_modular,
    verify_ortholattice,
    verify_orthomodular_exhaustive,
)
from annlat.errors import MalformedPoset, NotOrthomodular


def test_ortholattice_examples():
    assert verify_ortholattice(boolean_lattice(2)).passed
    assert verify_ortholattice(hexagon_o6()).passed


def test_involution_violation_is_malformed():
    with pytest.raises(MalformedPoset):
        AbstractOrtholattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
                             {"0": "1", "1": "0", "a": "b", "b": "b"})


def test_cycle_is_malformed():
    with pytest.raises(MalformedPoset):
        AbstractOrtholattice(["0", "a", "1"], [("0", "a"), ("a", "0"), ("a", "1")])


def test_orthomodular_examples():
    assert verify_orthomodular_exhaustive(mo2()).passed
    rep = verify_orthomodular_exhaustive(hexagon_o6())
    assert not rep.passed
    assert (rep.witness["x"], rep.witness["y"]) == ("a", "b")
    assert rep.witness["y_meet_x_perp"] == "0" and rep.witness["x_join_that"] == "a"
    for k in range(1, 5):
        assert verify_orthomodular_exhaustive(boolean_lattice(k)).passed


def test_modular_examples():
    rep = verify_modular(mo2())
    assert rep.passed
    assert rep.details["valuation"]["p"] == rep.details["valuation"]["1"] / 2
    rep = verify_modular(pentagon_n5())
    assert not rep.passed
    w = rep.witness
    assert (w["x"], w["y"], w["z"]) == ("a", "b", "c")
    for k in range(1, 5):
        assert is_modular(chain(k))


def test_center_examples():
    assert lattice_center_abstract(mo2()).details["center"] == ["0", "1"]
    B = boolean_lattice(2)
    assert lattice_center_abstract(B).details["center"] == B.elements
    P = mo2().product(boolean_lattice(1))
    center = lattice_center_abstract(P).details["center"]
    assert len(center) == 4
    with pytest.raises(NotOrthomodular):
        lattice_center_abstract(hexagon_o6())


def test_lattice_type_examples():
    assert classify_lattice_type(boolean_lattice(3)).details["label"] == "modular"
    assert classify_lattice_type(mo2()).details["label"] == "modular"
    rep = classify_lattice_type(mixed_lattice())
    assert rep.details["label"] == "mixed"
    assert rep.details["modular_summands"]
    assert classify_lattice_type(nonmodular_orthomodular()).details["label"] != "modular"


def test_nonmodular_orthomodular_fixture():
    L = nonmodular_orthomodular()
    assert L.size == 10
    assert verify_ortholattice(L).passed and verify_orthomodular_exhaustive(L).passed
    assert not is_modular(L)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_boolean_lattices(k):
    L = boolean_lattice(k)
    assert L.size == 2 ** k and is_boolean(L) and is_modular(L)


def test_mo2_is_not_boolean():
    assert not is_boolean(mo2())


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_boolean_height_is_popcount(k, data):
    L = boolean_lattice(k)
    x = data.draw(st.sampled_from(L.elements))
    y = data.draw(st.sampled_from(L.elements))
    h = L.height()
    assert h[L.join(x, y)] + h[L.meet(x, y)] == h[x] + h[y]
    assert L.perp(L.perp(x)) == x

import pytest

from annlat.abstract import is_boolean
from annlat.errors import UnknownSuite
from annlat.fixtures import RATIONAL_FIXTURES, block_algebra, fixture
from annlat.policy import NumericPolicy
from annlat.suites import SUITES, central_annihilators, central_boolean_algebra, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("name", RATIONAL_FIXTURES)
def test_suites_pass_on_fixtures(suite, name):
    rep = run_suite(suite, fixture(name), samples=10)
    assert rep.passed, rep.witness
    assert rep.name == suite


@pytest.mark.parametrize("suite", ["theorem12", "lemma5-6", "dimension", "lemma26-27"])
def test_suites_pass_on_float_backend(suite):
    rep = run_suite(suite, fixture("BLOCK21", NumericPolicy("float")), samples=10)
    assert rep.passed, rep.witness


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("theorem99", fixture("FULL2"))


@pytest.mark.parametrize("blocks,k", [([(2, 1), (1, 1)], 2), ([(1, 1), (2, 1), (1, 2)], 3)])
def test_central_annihilators_form_boolean_algebra(blocks, k):
    elems, atoms = central_annihilators(block_algebra(blocks))
    assert len(atoms) == k and len(elems) == 2 ** k
    assert is_boolean(central_boolean_algebra(elems))

"""Shared fixtures and independent numpy/sympy oracles for the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy

from annlat.fixtures import fixture
from annlat.matrix import Matrix


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator)
                          + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
                          for x in row] for row in m.entries()])


def np_rank(mats) -> int:
    if not mats:
        return 0
    M = np.array([as_np(m).ravel() for m in mats])
    return int(np.linalg.matrix_rank(M, tol=1e-8))


def np_algebra_dim(gens, n: int) -> int:
    """Dimension of the unital *-algebra generated, by brute-force words of length <= n*n."""
    gens = [as_np(g) for g in gens]
    gens = gens + [g.conj().T for g in gens]
    words = [np.eye(n, dtype=complex)]
    frontier = list(words)
    for _ in range(n * n):
        new = []
        for w, g in itertools.product(frontier, gens):
            cand = w @ g
            if np_rank(words + [cand]) > np_rank(words):
                words.append(cand)
                new.append(cand)
        if not new:
            break
        frontier = new
    return np_rank(words)


def np_center_dim(basis) -> int:
    """Dimension of {x in span(basis) : x b = b x for all b}, via SVD of the commutator map."""
    B = [as_np(b) for b in basis]
    cols = np.array([np.concatenate([(x @ b - b @ x).ravel() for b in B]) for x in B]).T
    return len(B) - int(np.linalg.matrix_rank(cols, tol=1e-8))


def as_np(m) -> np.ndarray:
    return m.to_complex() if hasattr(m, "to_complex") else np.asarray(m, dtype=complex)


@pytest.fixture(scope="session")
def FULL2():
    return fixture("FULL2")


@pytest.fixture(scope="session")
def DIAG3():
    return fixture("DIAG3")


@pytest.fixture(scope="session")
def BLOCK21():
    return fixture("BLOCK21")


@pytest.fixture(scope="session")
def SCALAR2():
    return fixture("SCALAR2")


@pytest.fixture(scope="session")
def BLOCK211():
    return fixture("BLOCK211")


def E(n, i, j):
    """One-based matrix unit, matching the usual E_ij notation."""
    return Matrix.unit(n, i - 1, j - 1)


def M(rows):
    return Matrix.from_rows(rows)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

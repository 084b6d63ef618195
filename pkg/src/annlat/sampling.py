"""Seeded random elements, positives and annihilators of an algebra."""

from __future__ import annotations

import numpy as np

from .algebra import StarAlgebra
from .annihilators import Annihilator, double_annihilator
from .matrix import FloatMatrix, Matrix


def random_coefficients(rng: np.random.Generator, k: int, *, bound: int = 3, sparse: bool = True):
    """Small Gaussian-integer coefficients; with ``sparse`` a random number of them vanish."""
    re = rng.integers(-bound, bound + 1, size=k)
    im = rng.integers(-bound, bound + 1, size=k) * rng.integers(0, 2, size=k)
    if sparse and k:
        keep = rng.integers(0, k + 1)
        mask = np.zeros(k, dtype=bool)
        mask[rng.permutation(k)[:keep]] = True
        re, im = re * mask, im * mask
    return re.tolist(), im.tolist()


def random_element(A: StarAlgebra, rng: np.random.Generator, *, sparse: bool = True):
    re, im = random_coefficients(rng, A.dim, sparse=sparse)
    if A.dim == 0:
        return A.zero
    if A.exact:
        c = Matrix(np.array(re, dtype=object), np.array(im, dtype=object), 1)
    else:
        c = FloatMatrix(np.array(re) + 1j * np.array(im), A.policy.tol)
    return A.combine(c)


def random_selfadjoint(A: StarAlgebra, rng: np.random.Generator, **kw):
    x = random_element(A, rng, **kw)
    return x + x.H


def random_positive(A: StarAlgebra, rng: np.random.Generator, **kw):
    x = random_element(A, rng, **kw)
    return x.H @ x


def random_low_rank(A: StarAlgebra, rng: np.random.Generator):
    """An element that is usually far from invertible.

    Draws one of: a sparse combination, a combination of one or two basis
    elements, or a basis element times a sparse combination.
    """
    kind = int(rng.integers(3))
    if kind == 0 or A.dim == 0:
        return random_element(A, rng)
    idx = rng.permutation(A.dim)[: int(rng.integers(1, 3))]
    x = A.basis[idx[0]]
    if kind == 1:
        for j in idx[1:]:
            x = x + A.basis[j].scale(int(rng.integers(1, 4)))
        return x
    return x @ random_element(A, rng)


def random_annihilator(A: StarAlgebra, rng: np.random.Generator) -> Annihilator:
    """Ann(Ann({x*x})) for a random, usually rank-deficient x."""
    x = random_low_rank(A, rng)
    return double_annihilator(A, [x.H @ x])


def random_in(V: Annihilator, rng: np.random.Generator):
    """A random element of V = pAp, as p a p."""
    a = random_element(V.algebra, rng, sparse=False)
    return V.p @ a @ V.p

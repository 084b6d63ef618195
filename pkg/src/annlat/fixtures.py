"""Named fixture algebras and seeded random multi-matrix algebras."""

from __future__ import annotations

import numpy as np

from .algebra import StarAlgebra, generate_star_algebra
from .matrix import Matrix
from .policy import EXACT, NumericPolicy

E = Matrix.unit


def fixture_generators() -> dict[str, tuple[int, list[Matrix]]]:
    """name -> (ambient dimension, generators) for every shipped algebra fixture."""
    return {
        "FULL2": (2, [E(2, 0, 1)]),
        "DIAG3": (3, [E(3, 0, 0), E(3, 1, 1), E(3, 2, 2)]),
        "BLOCK21": (3, [E(3, 0, 1), E(3, 2, 2)]),
        "SCALAR2": (2, [Matrix.identity(2)]),
        "BLOCK211": (4, [E(4, 0, 1), E(4, 2, 2), E(4, 3, 3)]),
        # golden-ratio spectrum: the two minimal projections are irrational
        "IRRATIONAL2": (2, [Matrix.from_rows([[1, 1], [1, 2]])]),
    }


RATIONAL_FIXTURES = ("FULL2", "DIAG3", "BLOCK21", "SCALAR2", "BLOCK211")


def fixture(name: str, policy: NumericPolicy = EXACT) -> StarAlgebra:
    n, gens = fixture_generators()[name]
    return generate_star_algebra(n, gens, policy, name)


def block_generators(blocks) -> tuple[int, list[Matrix]]:
    """Generators of the block-diagonal algebra sum_k M_{n_k} (x) 1_{m_k}."""
    N = sum(n * m for n, m in blocks)
    gens = []
    offset = 0
    for n, m in blocks:
        for i in range(n):
            j = (i + 1) % n
            g = Matrix.zeros(N)
            re = g.re.copy()
            for r in range(m):
                re[offset + r * n + i, offset + r * n + j] = 1
            gens.append(Matrix(re))
        offset += n * m
    return N, gens


def block_algebra(blocks, policy: NumericPolicy = EXACT, name: str | None = None,
                  conjugator: Matrix | None = None) -> StarAlgebra:
    N, gens = block_generators(blocks)
    if conjugator is not None:
        gens = [conjugator @ g @ conjugator.H for g in gens]
    label = name or " + ".join(f"M{n}x{m}" if m > 1 else f"M{n}" for n, m in blocks)
    return generate_star_algebra(N, gens, policy, label)


def householder(v) -> Matrix:
    """I - 2 v v* / (v* v): a unitary with Gaussian-rational entries."""
    n = len(v)
    v = Matrix.from_vector(v).reshape((n, 1))
    norm = (v.H @ v)[0, 0]
    return Matrix.identity(n) - (v @ v.H).scale(2 / norm)


def random_blocks(rng: np.random.Generator, max_ambient: int = 6) -> list[tuple[int, int]]:
    blocks = []
    room = max_ambient
    for _ in range(int(rng.integers(2, 4))):
        options = [(n, m) for n in (1, 2, 3) for m in (1, 2) if n * m <= room]
        if not options:
            break
        n, m = options[int(rng.integers(len(options)))]
        blocks.append((n, m))
        room -= n * m
    return blocks


def random_unitary(rng: np.random.Generator, N: int) -> Matrix:
    """Product of one or two Householder reflections with small Gaussian-integer vectors."""
    U = Matrix.identity(N)
    for _ in range(int(rng.integers(1, 3))):
        v = [(int(rng.integers(-2, 3)), int(rng.integers(-1, 2))) for _ in range(N)]
        if all(a == 0 and b == 0 for a, b in v):
            v[0] = (1, 0)
        U = U @ householder(v)
    return U


def random_algebra(seed: int, max_ambient: int = 6, policy: NumericPolicy = EXACT) -> StarAlgebra:
    """A block-diagonal multi-matrix algebra hidden by a random unitary change of basis."""
    rng = np.random.default_rng([seed, 7])
    blocks = random_blocks(rng, max_ambient)
    N = sum(n * m for n, m in blocks)
    return block_algebra(blocks, policy, f"random-{seed}", random_unitary(rng, N))


def random_algebra_blocks(seed: int, max_ambient: int = 6) -> list[tuple[int, int]]:
    """The block structure random_algebra(seed) was built from (for oracles)."""
    return random_blocks(np.random.default_rng([seed, 7]), max_ambient)

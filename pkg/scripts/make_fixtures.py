"""Regenerate the shipped fixture files under src/annlat/data."""

from annlat import abstract
from annlat.fixtures import fixture_generators
from annlat.io import DATA_DIR, AlgebraFile, serialize_algebra, serialize_lattice
from annlat.matrix import Matrix

E = Matrix.unit

ELEMENTS = {
    "FULL2": {"E11": E(2, 0, 0), "E12": E(2, 0, 1), "E22": E(2, 1, 1)},
    "DIAG3": {"E11": E(3, 0, 0), "E22": E(3, 1, 1), "E33": E(3, 2, 2)},
    "BLOCK21": {"E11": E(3, 0, 0), "E12": E(3, 0, 1), "E33": E(3, 2, 2), "block": E(3, 0, 0) + E(3, 1, 1)},
}

LATTICES = {
    "O6": abstract.hexagon_o6,
    "MO2": abstract.mo2,
    "N5": abstract.pentagon_n5,
    "BOOL2": lambda: abstract.boolean_lattice(2),
    "BOOL3": lambda: abstract.boolean_lattice(3),
    "BOOL4": lambda: abstract.boolean_lattice(4),
    "NONMODULAR_OML": abstract.nonmodular_orthomodular,
    "MIXED": abstract.mixed_lattice,
}


def main():
    DATA_DIR.mkdir(exist_ok=True)
    specs = dict(fixture_generators())
    # the zero span has no unit
    specs["NILPOTENT_SPAN"] = (3, [Matrix.zeros(3)])
    for name, (n, gens) in specs.items():
        f = AlgebraFile(name, n, gens, ELEMENTS.get(name, {}))
        (DATA_DIR / f"{name}.json").write_text(serialize_algebra(f))
    for name, build in LATTICES.items():
        (DATA_DIR / f"{name}.json").write_text(serialize_lattice(name, build()))


if __name__ == "__main__":
    main()

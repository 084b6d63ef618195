"""Algebra and lattice description files, and deterministic structured output.

Algebra files are JSON objects with keys ``name``, ``ambient_dim``,
``generators`` and optionally ``elements`` (named extra matrices).  Each
matrix entry is a ``["re", "im"]`` pair of rational strings such as
``["1/2", "-3"]``; a bare string or integer is read as a real entry.
The canonical layout written by :func:`serialize_algebra` puts one matrix
row per line, so round-tripping a canonical file is byte-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .abstract import AbstractOrtholattice
from .algebra import StarAlgebra, generate_star_algebra
from .annihilators import Annihilator
from .errors import MalformedPoset, ParseError
from .matrix import Matrix
from .policy import EXACT, NumericPolicy
from .reports import jsonable
from .scalar import ExactScalar, parse_fraction


@dataclass
class AlgebraFile:
    name: str
    ambient_dim: int
    generators: list[Matrix]
    elements: dict[str, Matrix] = field(default_factory=dict)

    def build(self, policy: NumericPolicy = EXACT) -> StarAlgebra:
        return generate_star_algebra(self.ambient_dim, self.generators, policy, self.name)


def _entry(value) -> ExactScalar:
    if isinstance(value, bool):
        raise ParseError(f"bad matrix entry {value!r}")
    if isinstance(value, int):
        return ExactScalar(value)
    if isinstance(value, str):
        return ExactScalar(_fraction(value))
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, (str, int)) for v in value):
        return ExactScalar(*(_fraction(v) if isinstance(v, str) else v for v in value))
    raise ParseError(f"bad matrix entry {value!r}")


def _fraction(text: str):
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def _matrix(rows, n: int, what: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"{what} must be a {n} x {n} list of rows")
    return Matrix.from_rows([[_entry(x) for x in row] for row in rows])


def parse_algebra(text: str) -> AlgebraFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("algebra file must be a JSON object")
    unknown = set(data) - {"name", "ambient_dim", "generators", "elements"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    n = data.get("ambient_dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("ambient_dim must be a positive integer")
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise ParseError("generators must be a list of matrices")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    elements = data.get("elements", {})
    if not isinstance(elements, dict):
        raise ParseError("elements must map names to matrices")
    return AlgebraFile(
        name=name,
        ambient_dim=n,
        generators=[_matrix(g, n, f"generator {k}") for k, g in enumerate(gens)],
        elements={str(k): _matrix(v, n, f"element {k}") for k, v in elements.items()},
    )


def _dump_matrix(m: Matrix, indent: str) -> str:
    rows = [json.dumps([x.to_pair() for x in row], separators=(", ", ": ")) for row in m.entries()]
    inner = (",\n" + indent + "  ").join(rows)
    return "[\n" + indent + "  " + inner + "\n" + indent + "]"


def _dump_matrix_list(mats, indent: str) -> str:
    if not mats:
        return "[]"
    body = (",\n" + indent + "  ").join(_dump_matrix(m, indent + "  ") for m in mats)
    return "[\n" + indent + "  " + body + "\n" + indent + "]"


def serialize_algebra(f: AlgebraFile) -> str:
    parts = [
        f'  "name": {json.dumps(f.name)}',
        f'  "ambient_dim": {f.ambient_dim}',
        f'  "generators": {_dump_matrix_list(f.generators, "  ")}',
    ]
    if f.elements:
        items = [f'    {json.dumps(k)}: {_dump_matrix(v, "    ")}' for k, v in f.elements.items()]
        parts.append('  "elements": {\n' + ",\n".join(items) + "\n  }")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def parse_lattice(text: str) -> tuple[str, AbstractOrtholattice]:
    """Lattice files hold ``elements``, ``leq_pairs`` and optionally ``ortho``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("elements"), list):
        raise ParseError("lattice file needs an 'elements' list")
    pairs = data.get("leq_pairs", [])
    if not isinstance(pairs, list) or any(not isinstance(p, list) for p in pairs):
        raise ParseError("leq_pairs must be a list of [lower, upper] pairs")
    ortho = data.get("ortho")
    if ortho is not None and not isinstance(ortho, dict):
        raise ParseError("ortho must map each element to its complement")
    try:
        L = AbstractOrtholattice(data["elements"], pairs, ortho)
    except KeyError as exc:
        raise MalformedPoset(f"unknown element {exc}") from None
    return str(data.get("name", "")), L


def serialize_lattice(name: str, L: AbstractOrtholattice) -> str:
    d = L.to_dict()
    parts = [f'  "name": {json.dumps(name)}', f'  "elements": {json.dumps(d["elements"])}']
    pairs = ",\n    ".join(json.dumps(p) for p in d["leq_pairs"])
    parts.append('  "leq_pairs": [\n    ' + pairs + "\n  ]" if pairs else '  "leq_pairs": []')
    if "ortho" in d:
        parts.append(f'  "ortho": {json.dumps(d["ortho"])}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def serialize_annihilator(V: Annihilator) -> dict:
    return {"algebra_name": V.algebra.name, "unit_projection": jsonable(V.p)}


def dump_structured(obj) -> str:
    """Byte-deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_algebra(path) -> AlgebraFile:
    return parse_algebra(read_text(path))


def load_lattice(path) -> tuple[str, AbstractOrtholattice]:
    return parse_lattice(read_text(path))


DATA_DIR = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    """Path of a shipped fixture file, by stem (e.g. ``FULL2`` or ``O6``)."""
    return DATA_DIR / f"{name}.json"

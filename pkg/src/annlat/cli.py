"""Command-line front end: ``annlat generate|ann|verify|classify|lattice``.

Exit codes: 0 success, 1 counterexample found, 2 parse or malformed input,
3 no unit, 4 not positive, 5 unknown suite.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from .abstract import (
    classify_lattice_type,
    is_boolean,
    lattice_center_abstract,
    verify_modular,
    verify_ortholattice,
    verify_orthomodular_exhaustive,
)
from .algebra import StarAlgebra
from .annihilators import annihilator, double_annihilator
from .classification import classify_type_In, decompose_types
from .errors import AnnlatError, ParseError, UnknownSuite
from .io import dump_structured, load_algebra, load_lattice, serialize_annihilator
from .matrix import FloatMatrix
from .policy import DEFAULT_TOL, NumericPolicy
from .reports import Report
from .suites import SUITES, run_suite

@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    mode: str = "exact"
    tol: float = DEFAULT_TOL
    seed: int = 0
    samples: int = 200
    out: str | None = None
    format: str = "text"
    suite: str | None = None
    select: list[str] = field(default_factory=list)
    double: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ParseError("--samples must be at least 1")
        if not self.tol > 0:
            raise ParseError("--tol must be positive")

    @property
    def policy(self) -> NumericPolicy:
        return NumericPolicy(self.mode, self.tol, self.seed)


def format_matrix(m) -> str:
    if isinstance(m, FloatMatrix):
        rows = [", ".join(_format_complex(z) for z in row) for row in m.a]
    else:
        rows = [", ".join(str(x) for x in row) for row in m.entries()]
    return "[" + "; ".join(rows) + "]"


def _format_complex(z: complex) -> str:
    re, im = round(z.real, 9) + 0.0, round(z.imag, 9) + 0.0
    if im == 0:
        return f"{re:g}"
    return f"{re:g}{im:+g}i"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load(cfg: RunConfig):
    if len(cfg.inputs) != 1:
        raise ParseError("exactly one --input file is expected")
    f = load_algebra(cfg.inputs[0])
    return f, f.build(cfg.policy)


# -- commands -------------------------------------------------------------------

def cmd_generate(cfg: RunConfig) -> tuple[int, dict, str]:
    f, A = _load(cfg)
    data = {
        "command": "generate",
        "algebra": A.name,
        "ambient_dim": A.ambient_dim,
        "dim": A.dim,
        "center_dim": len(A.center),
        "unital": True,
        "unit": A.unit,
    }
    text = (f"{A.name}: dim {A.dim}, center dim {len(A.center)}, unital\n"
            f"unit: {format_matrix(A.unit)}\n")
    return 0, data, text


def _selected(cfg: RunConfig, f, A: StarAlgebra) -> list:
    out = []
    for token in cfg.select:
        if token == "unit":
            out.append(A.unit)
        elif token.isdigit():
            k = int(token)
            if k >= len(f.generators):
                raise ParseError(f"generator index {k} out of range")
            out.append(A.coerce(f.generators[k]))
        elif token in f.elements:
            out.append(A.coerce(f.elements[token]))
        else:
            raise ParseError(f"unknown element {token!r}; use a generator index, 'unit' or an element name")
    return out


def cmd_annihilator(cfg: RunConfig) -> tuple[int, dict, str]:
    f, A = _load(cfg)
    S = _selected(cfg, f, A)
    V = (double_annihilator if cfg.double else annihilator)(A, S)
    p = V.p
    corner_ok = len(V.space) == V.dim and all(V.contains(x) for x in V.space)
    hereditary = corner_ok and all(V.contains(x @ b @ x) for x in V.hereditary_space for b in A.basis)
    label = "Ann(Ann(S))" if cfg.double else "Ann(S)"
    data = {
        "command": "ann",
        "algebra": A.name,
        "select": cfg.select,
        "double": cfg.double,
        "dim": V.dim,
        "hereditary": hereditary,
        "annihilator": serialize_annihilator(V),
    }
    text = (f"{label} in {A.name}: dim {V.dim}\n"
            f"unit projection: {format_matrix(p)}\n"
            f"hereditary (xAx inside, equals pAp): {_yes(hereditary)}\n")
    return (0 if hereditary else 1), data, text


def _report_text(rep: Report) -> str:
    lines = [f"{rep.name}: {'pass' if rep.passed else 'FAIL'} ({rep.checked} checks)"]
    for k in sorted(rep.details):
        lines.append(f"  {k}: {rep.details[k]}")
    if not rep.passed:
        lines.append("  witness:")
        for k, v in rep.witness.items():
            shown = format_matrix(v) if hasattr(v, "H") else (format_matrix(v.p) if hasattr(v, "p") else v)
            lines.append(f"    {k}: {shown}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[int, dict, str]:
    if cfg.suite is None:
        raise ParseError("verify needs --suite")
    if cfg.suite != "all" and cfg.suite not in SUITES:
        raise UnknownSuite(f"unknown suite {cfg.suite!r}; known: {', '.join(SUITES)}")
    names = sorted(SUITES) if cfg.suite == "all" else [cfg.suite]
    f, A = _load(cfg)
    reports = sorted((run_suite(n, A, cfg.samples) for n in names), key=lambda r: r.name)
    passed = all(r.passed for r in reports)
    data = {
        "command": "verify",
        "algebra": A.name,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "passed": passed,
        "suites": [r.to_dict() for r in reports],
    }
    text = f"{A.name} ({cfg.mode}, seed {cfg.seed}, {cfg.samples} samples)\n"
    text += "".join(_report_text(r) for r in reports)
    return (0 if passed else 1), data, text


def cmd_classify(cfg: RunConfig) -> tuple[int, dict, str]:
    f, A = _load(cfg)
    t = classify_type_In(A)
    d = decompose_types(A)
    data = {"command": "classify", "algebra": A.name, "type_In": t.to_dict(), "decomposition": d.to_dict()}

    def part(V):
        if V.is_zero():
            return "{0}"
        return "A" if V.p == V.algebra.unit else format_matrix(V.p)

    text = (f"{A.name}: factor: {_yes(t.is_factor)}; type {t.type_label}; certificate {t.certificate_level}\n"
            f"family sizes: {t.family_sizes}\n"
            f"decomposition: A_I = {part(d.A_I)}, A_II = {part(d.A_II)}, A_III = {part(d.A_III)}"
            f" (label {d.type_label}, certificate {d.certificate_level})\n")
    ok = d.details.get("invariants", False) and t.details["families_join_to_summands"]
    return (0 if ok else 1), data, text


def cmd_lattice(cfg: RunConfig) -> tuple[int, dict, str]:
    if len(cfg.inputs) != 1:
        raise ParseError("exactly one --input file is expected")
    name, L = load_lattice(cfg.inputs[0])
    data = {"command": "lattice", "lattice": name, "size": L.size}
    modular = verify_modular(L)
    data["modular"] = modular.to_dict()
    if modular.passed:
        mod_text = "modular: yes (height valuation certified)"
    else:
        w = modular.witness
        mod_text = f"modular: NO, witness ({w['x']},{w['y']},{w['z']})"
    lines = [f"{name}: {L.size} elements"]
    if L.ortho is None:
        data["ortholattice"] = None
        lines += ["ortholattice: n/a (no orthocomplement)", mod_text]
        return 0, data, "\n".join(lines) + "\n"
    ortho = verify_ortholattice(L)
    data["ortholattice"] = ortho.to_dict()
    if not ortho.passed:
        lines += [f"ortholattice: NO, {_witness(ortho)}", mod_text]
        return 0, data, "\n".join(lines) + "\n"
    om = verify_orthomodular_exhaustive(L)
    data["orthomodular"] = om.to_dict()
    if not om.passed:
        lines += [f"ortholattice: yes; orthomodular: NO, witness ({om.witness['x']},{om.witness['y']})", mod_text]
        return 0, data, "\n".join(lines) + "\n"
    center = lattice_center_abstract(L).details["center"]
    kind = classify_lattice_type(L)
    data.update(center=center, boolean=is_boolean(L), type=kind.to_dict())
    lines.append(f"ortholattice: yes; orthomodular: yes; modular: {'yes' if modular.passed else 'NO'}; center {{{','.join(center)}}}")
    lines.append(f"boolean: {_yes(data['boolean'])}")
    lines.append(f"type: {kind.details['label']}")
    if modular.passed:
        lines.append("height valuation certifies modularity")
    else:
        lines.append(mod_text)
    return 0, data, "\n".join(lines) + "\n"


def _witness(rep: Report) -> str:
    return ", ".join(f"{k}={v}" for k, v in rep.witness.items())


# (fixture stem, command, extra config) for the regression reports shipped with the tests
GOLDEN_CASES = [
    *((stem, "generate", {}) for stem in ("FULL2", "DIAG3", "BLOCK21", "SCALAR2")),
    *((stem, "classify", {}) for stem in ("FULL2", "DIAG3", "BLOCK21", "SCALAR2", "BLOCK211")),
    ("FULL2", "ann", {"select": ["E11"]}),
    ("BLOCK21", "ann", {"select": ["E33"]}),
    ("FULL2", "verify", {"suite": "theorem12", "samples": 50}),
    ("BLOCK21", "verify", {"suite": "lemma5-6", "samples": 20}),
    ("DIAG3", "verify", {"suite": "dimension", "samples": 20}),
    *((stem, "lattice", {}) for stem in ("O6", "MO2", "N5", "BOOL2", "BOOL3", "BOOL4", "MIXED")),
]

HANDLERS = {
    "generate": cmd_generate,
    "ann": cmd_annihilator,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "lattice": cmd_lattice,
}


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", required=True, metavar="FILE",
                        help="algebra or lattice description file")
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float tolerance (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="root seed; ANNLAT_SEED overrides it")
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--out", metavar="FILE", help="also write the report here")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    parser = argparse.ArgumentParser(prog="annlat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="build the algebra and summarize it")
    ann = sub.add_parser("ann", parents=[common], help="annihilator of selected elements")
    ann.add_argument("--select", default="",
                     help="comma list of generator indices, element names or 'unit'")
    ann.add_argument("--double", action="store_true", help="double annihilator instead")
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}, or 'all'")
    sub.add_parser("classify", parents=[common], help="type decomposition and type I_n label")
    sub.add_parser("lattice", parents=[common], help="check an abstract finite lattice")
    return parser


def config_from_args(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    seed = args.seed
    if environ.get("ANNLAT_SEED"):
        try:
            seed = int(environ["ANNLAT_SEED"])
        except ValueError:
            raise ParseError("ANNLAT_SEED must be an integer") from None
    return RunConfig(
        command=args.command,
        inputs=args.input,
        mode=args.mode,
        tol=args.tol,
        seed=seed,
        samples=args.samples,
        out=args.out,
        format=args.format,
        suite=getattr(args, "suite", None),
        select=[s for s in getattr(args, "select", "").split(",") if s],
        double=getattr(args, "double", False),
    )


def run(cfg: RunConfig) -> tuple[int, str]:
    code, data, text = HANDLERS[cfg.command](cfg)
    body = dump_structured(data) if cfg.format == "structured" else text
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    return code, body


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, body = run(config_from_args(args))
    except AnnlatError as exc:
        msg = exc.args[0] if exc.args else ""
        print(f"annlat: {type(exc).__name__}: {msg}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())

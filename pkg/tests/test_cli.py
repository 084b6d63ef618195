import json
import subprocess
import sys
from pathlib import Path

import pytest

from annlat.cli import GOLDEN_CASES, RunConfig, build_parser, config_from_args, main, run
from annlat.errors import ParseError
from annlat.io import data_path

GOLDEN = Path(__file__).parent / "golden"


def cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def inp(stem):
    return str(data_path(stem))


def test_generate(capsys):
    code, out, _ = cli(capsys, "generate", "--input", inp("FULL2"))
    assert code == 0 and "dim 4, center dim 1, unital" in out


def test_generate_bad_fraction(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 1, "generators": [[["1/0"]]]}')
    code, _, err = cli(capsys, "generate", "--input", str(bad))
    assert code == 2 and "ParseError" in err


def test_generate_missing_file(capsys, tmp_path):
    assert cli(capsys, "generate", "--input", str(tmp_path / "nope.json"))[0] == 2


def test_generate_no_unit(capsys):
    code, _, err = cli(capsys, "generate", "--input", inp("NILPOTENT_SPAN"))
    assert code == 3 and "NoUnit" in err


def test_ann_examples(capsys):
    code, out, _ = cli(capsys, "ann", "--input", inp("FULL2"), "--select", "E11")
    assert code == 0 and "dim 1" in out and "[0, 0; 0, 1]" in out and "hereditary" in out
    code, out, _ = cli(capsys, "ann", "--input", inp("DIAG3"), "--select", "unit")
    assert code == 0 and "dim 0" in out
    assert cli(capsys, "ann", "--input", inp("FULL2"), "--select", "E12")[0] == 4
    assert cli(capsys, "ann", "--input", inp("FULL2"), "--select", "0")[0] == 4
    assert cli(capsys, "ann", "--input", inp("FULL2"), "--select", "nosuch")[0] == 2


def test_ann_double(capsys):
    code, out, _ = cli(capsys, "ann", "--input", inp("DIAG3"), "--select", "E11,E22", "--double")
    assert code == 0 and "dim 2" in out


def test_verify_examples(capsys):
    code, out, _ = cli(capsys, "verify", "--input", inp("FULL2"), "--suite", "theorem12")
    assert code == 0 and "theorem12: pass (200 checks)" in out
    code, out, _ = cli(capsys, "verify", "--input", inp("BLOCK21"), "--suite", "lemma5-6", "--samples", "30")
    assert code == 0 and "lemma5-6: pass" in out
    code, _, err = cli(capsys, "verify", "--input", inp("FULL2"), "--suite", "theorem99")
    assert code == 5 and "UnknownSuite" in err


def test_verify_float_mode(capsys):
    code, out, _ = cli(capsys, "verify", "--input", inp("BLOCK21"), "--suite", "theorem12",
                       "--mode", "float", "--samples", "30")
    assert code == 0 and "float" in out


def test_classify_examples(capsys):
    code, out, _ = cli(capsys, "classify", "--input", inp("FULL2"))
    assert code == 0 and "factor: yes; type I_2; certificate exact" in out
    code, out, _ = cli(capsys, "classify", "--input", inp("BLOCK21"))
    assert "factor: no; type I_2 ⊕ I_1" in out
    code, out, _ = cli(capsys, "classify", "--input", inp("DIAG3"))
    assert "type I_1 ⊕ I_1 ⊕ I_1" in out


def test_lattice_examples(capsys):
    code, out, _ = cli(capsys, "lattice", "--input", inp("O6"))
    assert code == 0 and "ortholattice: yes; orthomodular: NO, witness (a,b)" in out
    _, out, _ = cli(capsys, "lattice", "--input", inp("MO2"))
    assert "orthomodular: yes; modular: yes; center {0,1}" in out
    _, out, _ = cli(capsys, "lattice", "--input", inp("BOOL3"))
    assert "boolean: yes" in out
    _, out, _ = cli(capsys, "lattice", "--input", inp("N5"))
    assert "modular: NO, witness (a,b,c)" in out


def test_lattice_on_algebra_file_is_parse_error(capsys):
    assert cli(capsys, "lattice", "--input", inp("FULL2"))[0] == 2


def test_out_file_and_structured(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = cli(capsys, "generate", "--input", inp("BLOCK21"), "--format", "structured",
                       "--out", str(out_file))
    assert code == 0 and out_file.read_text() == out
    assert json.loads(out)["dim"] == 5


def test_structured_reports_are_deterministic():
    cfg = dict(command="verify", inputs=[inp("BLOCK21")], suite="theorem15", samples=20, format="structured", seed=4)
    assert run(RunConfig(**cfg))[1] == run(RunConfig(**cfg))[1]


def test_seed_environment_override():
    args = build_parser().parse_args(["verify", "--input", "x", "--suite", "lemma1", "--seed", "3"])
    assert config_from_args(args, {}).seed == 3
    assert config_from_args(args, {"ANNLAT_SEED": "11"}).seed == 11
    with pytest.raises(ParseError):
        config_from_args(args, {"ANNLAT_SEED": "eleven"})


def test_seed_changes_sampling():
    base = dict(command="verify", inputs=[inp("BLOCK211")], suite="theorem12", samples=30, format="structured")
    a = run(RunConfig(**base, seed=1))[1]
    b = run(RunConfig(**base, seed=2))[1]
    assert json.loads(a)["passed"] and json.loads(b)["passed"]
    assert a != b


@pytest.mark.parametrize("bad", [{"samples": 0}, {"tol": 0.0}, {"tol": -1e-9}])
def test_run_config_validation(bad):
    with pytest.raises(ParseError):
        RunConfig(command="generate", inputs=["x"], **bad)


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["generate"])
    assert exc.value.code == 2


@pytest.mark.parametrize("stem,command,extra", GOLDEN_CASES,
                         ids=[f"{s}-{c}{'-' + e.get('suite', '') if e.get('suite') else ''}" for s, c, e in GOLDEN_CASES])
def test_golden_reports(stem, command, extra):
    tag = extra.get("suite", "")
    golden = GOLDEN / f"{stem}.{command}{'.' + tag if tag else ''}.json"
    _, body = run(RunConfig(command=command, inputs=[inp(stem)], format="structured", **extra))
    assert body == golden.read_text(encoding="utf-8")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "annlat.cli", "generate", "--input", inp("SCALAR2")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dim 1, center dim 1" in proc.stdout

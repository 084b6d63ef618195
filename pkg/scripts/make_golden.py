"""Regenerate tests/golden/*.json from the shipped fixtures.

Run after an intentional change to report contents:  python3 scripts/make_golden.py
"""

from pathlib import Path

from annlat.cli import GOLDEN_CASES, RunConfig, run
from annlat.io import data_path

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for stem, command, extra in GOLDEN_CASES:
        cfg = RunConfig(command=command, inputs=[str(data_path(stem))], format="structured", **extra)
        _, body = run(cfg)
        tag = extra.get("suite", "")
        (OUT / f"{stem}.{command}{'.' + tag if tag else ''}.json").write_text(body, encoding="utf-8")


if __name__ == "__main__":
    main()

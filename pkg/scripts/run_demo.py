#!/usr/bin/env python3
"""Run the shipped scenarios against the demo dataset and show the results.

Generates the dataset first if it is missing, then evaluates every scenario
file in scenarios/ and prints the outcomes and rankings tables.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path

from bedplan.cli import main as bedplan_main

REPO = Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", default="data/demo")
    parser.add_argument("--out", default="data/demo-out")
    parser.add_argument("--rank", default="pnl",
                        choices=["alpha", "beta", "pnl", "acute_share"])
    args = parser.parse_args()

    data = Path(args.data)
    if not (data / "drg_ro.csv").exists():
        subprocess.run(
            [sys.executable, str(REPO / "scripts" / "make_demo_dataset.py"),
             "--out", str(data)],
            check=True,
        )

    cli_args = [
        "run",
        "--drg-ro", str(data / "drg_ro.csv"),
        "--drg-dh", str(data / "drg_dh.csv"),
        "--beds", str(data / "beds.csv"),
        "--lea45", str(data / "lea45.txt"),
        "--lea45plus", str(data / "lea45plus.txt"),
        "--assumption", "A",
        "--population", str(data / "population.txt"),
        "--rank", args.rank,
        "--out", args.out,
    ]
    for scenario in sorted((REPO / "scenarios").glob("*.ini")):
        cli_args.extend(["--scenarios", str(scenario)])

    status = bedplan_main(cli_args)
    if status != 0:
        return status

    out = Path(args.out)
    print()
    print((out / "outcomes.csv").read_text(encoding="utf-8"))
    print((out / "rankings.csv").read_text(encoding="utf-8"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Generate a synthetic regional dataset for experimenting with the toolkit.

The numbers are seeded-random but plausibly scaled: roughly four million
residents, six hundred thousand ordinary acute admissions, and a bed stock
a little above the statutory density caps, so the shipped scenarios have
something to cut. Writes the full set of interchange files.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from bedplan.ingest import serialize_drg_table, serialize_lea_lists
from bedplan.model import (
    DrgKind,
    DrgRecord,
    DrgTable,
    LeaClassifier,
    TableRegime,
)

RESIDENTS = 4_000_000


def make_ro_record(rng: random.Random, code: str) -> DrgRecord:
    admissions = int(rng.lognormvariate(8.1, 0.85)) + 100
    one_day = int(admissions * rng.uniform(0.05, 0.45))
    multi = admissions - one_day
    mean_multi_stay = rng.uniform(2.0, 7.0)
    multi_days = int(multi * mean_multi_stay) + 2 * multi
    total_days = one_day + multi_days
    at_share = rng.uniform(0.01, 0.08)
    at_days = int(multi_days * rng.uniform(0.05, 0.20))
    return DrgRecord(
        code=code,
        kind=rng.choice([DrgKind.MEDICAL, DrgKind.SURGICAL]),
        admissions=admissions,
        total_days=total_days,
        one_day_admissions=one_day,
        threshold_days=rng.randint(8, 40),
        above_threshold_admission_share=round(at_share, 3),
        days_above_threshold=at_days,
    )


def make_dh_record(rng: random.Random, code: str) -> DrgRecord:
    admissions = int(rng.lognormvariate(7.0, 0.8)) + 20
    accesses = admissions * 2
    return DrgRecord(
        code=code,
        kind=rng.choice([DrgKind.MEDICAL, DrgKind.SURGICAL]),
        admissions=admissions,
        total_days=accesses,
        one_day_admissions=admissions,
        threshold_days=1,
        above_threshold_admission_share=0.0,
        days_above_threshold=0,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/demo", help="output directory")
    parser.add_argument("--seed", type=int, default=2008)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    codes = [f"{c:03d}" for c in rng.sample(range(1, 580), 180)]
    lea45_codes = codes[:43]
    lea45plus_codes = codes[43:108]
    other_codes = codes[108:]

    ro_codes = sorted(lea45_codes[:20] + lea45plus_codes[:30] + other_codes[:70])
    ro_table = DrgTable(
        records=tuple(make_ro_record(rng, code) for code in ro_codes),
        year="demo",
        regime=TableRegime.ACUTE_RO,
    )
    dh_codes = sorted(lea45_codes[:15] + other_codes[:30])
    dh_table = DrgTable(
        records=tuple(make_dh_record(rng, code) for code in dh_codes),
        year="demo",
        regime=TableRegime.ACUTE_DH,
    )

    classifier = LeaClassifier(
        lea45=frozenset(lea45_codes), lea45plus=frozenset(lea45plus_codes)
    )
    lea45_text, lea45plus_text = serialize_lea_lists(classifier)

    (out / "drg_ro.csv").write_text(serialize_drg_table(ro_table), encoding="utf-8")
    (out / "drg_dh.csv").write_text(serialize_drg_table(dh_table), encoding="utf-8")
    (out / "lea45.txt").write_text(lea45_text, encoding="utf-8")
    (out / "lea45plus.txt").write_text(lea45plus_text, encoding="utf-8")
    (out / "beds.csv").write_text(
        "sector;regime;care;count\n"
        "public;RO;acute;9800\n"
        "public;DH;acute;950\n"
        "private;RO;acute;2700\n"
        "public;RO;rehab;1500\n"
        "public;DH;rehab;100\n"
        "public;RO;ltc;700\n"
        "private;RO;rehab;700\n",
        encoding="utf-8",
    )
    (out / "population.txt").write_text(
        f"residents = {RESIDENTS}\n"
        "inflow_admissions = 22000\n"
        "outflow_admissions = 44000\n"
        "rehab_ro_admissions = 40000\n"
        "rehab_dh_admissions = 9000\n"
        "ltc_admissions = 12000\n",
        encoding="utf-8",
    )

    print(f"wrote demo dataset to {out}")
    print(f"  ordinary table: {len(ro_table)} DRGs, "
          f"{ro_table.total_admissions:,} admissions, "
          f"{ro_table.total_days:,} days")
    print(f"  day-hospital table: {len(dh_table)} DRGs, "
          f"{dh_table.total_admissions:,} admissions")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

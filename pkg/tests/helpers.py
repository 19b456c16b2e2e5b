"""File-level fixtures shared by CLI, service and acceptance tests.

The dataset here mirrors the in-memory fixtures in conftest.py; text forms
are produced by the package serializers so the two stay consistent.
"""

from __future__ import annotations

from pathlib import Path

from bedplan.ingest import serialize_drg_table, serialize_lea_lists
from bedplan.model import (
    DrgKind,
    DrgRecord,
    DrgTable,
    LeaClassifier,
    TableRegime,
)


def _record(code, admissions, total_days, one_day=0, kind=DrgKind.MEDICAL,
            threshold=10, at_share=0.0, at_days=0):
    return DrgRecord(
        code=code,
        kind=kind,
        admissions=admissions,
        total_days=total_days,
        one_day_admissions=one_day,
        threshold_days=threshold,
        above_threshold_admission_share=at_share,
        days_above_threshold=at_days,
    )


CLASSIFIER = LeaClassifier(
    lea45=frozenset({"006", "039"}), lea45plus=frozenset({"119", "162"})
)

RO_TABLE = DrgTable(
    records=(
        _record("006", 1000, 3000, one_day=400, kind=DrgKind.SURGICAL,
                at_share=0.05, at_days=300),
        _record("039", 500, 900, one_day=300, at_share=0.02, at_days=50),
        _record("119", 800, 2400, one_day=200, at_share=0.04, at_days=200),
        _record("162", 400, 1600, one_day=100, kind=DrgKind.SURGICAL,
                at_share=0.03, at_days=100),
        _record("127", 2000, 12000, one_day=300, at_share=0.10, at_days=2000),
        _record("430", 1200, 9000, one_day=100, at_share=0.08, at_days=1500),
    ),
    year="2008",
    regime=TableRegime.ACUTE_RO,
)

DH_TABLE = DrgTable(
    records=(
        _record("006", 600, 1300),
        _record("119", 300, 650),
        _record("127", 900, 1900),
    ),
    year="2008",
    regime=TableRegime.ACUTE_DH,
)

BEDS_TEXT = (
    "sector;regime;care;count\n"
    "public;RO;acute;230\n"
    "public;DH;acute;25\n"
    "private;RO;acute;45\n"
    "public;RO;rehab;30\n"
    "public;DH;rehab;5\n"
    "public;RO;ltc;15\n"
)

POPULATION_TEXT = (
    "residents = 100000\n"
    "inflow_admissions = 150\n"
    "outflow_admissions = 400\n"
)

BASE_SCENARIO_TEXT = "[scenario]\nname = base\nbeta = 0.875\n"


def drg_ro_text() -> str:
    return serialize_drg_table(RO_TABLE)


def drg_dh_text() -> str:
    return serialize_drg_table(DH_TABLE)


def lea_texts() -> tuple[str, str]:
    return serialize_lea_lists(CLASSIFIER)


def write_dataset(directory: Path) -> dict[str, Path]:
    """Write the demo dataset files; returns name -> path."""
    directory.mkdir(parents=True, exist_ok=True)
    lea45, lea45plus = lea_texts()
    files = {
        "drg_ro": directory / "drg_ro.csv",
        "drg_dh": directory / "drg_dh.csv",
        "beds": directory / "beds.csv",
        "lea45": directory / "lea45.txt",
        "lea45plus": directory / "lea45plus.txt",
        "population": directory / "population.txt",
        "scenario": directory / "base.ini",
    }
    files["drg_ro"].write_text(drg_ro_text(), encoding="utf-8")
    files["drg_dh"].write_text(drg_dh_text(), encoding="utf-8")
    files["beds"].write_text(BEDS_TEXT, encoding="utf-8")
    files["lea45"].write_text(lea45, encoding="utf-8")
    files["lea45plus"].write_text(lea45plus, encoding="utf-8")
    files["population"].write_text(POPULATION_TEXT, encoding="utf-8")
    files["scenario"].write_text(BASE_SCENARIO_TEXT, encoding="utf-8")
    return files


def dataset_args(files: dict[str, Path]) -> list[str]:
    return [
        "--drg-ro", str(files["drg_ro"]),
        "--drg-dh", str(files["drg_dh"]),
        "--beds", str(files["beds"]),
        "--lea45", str(files["lea45"]),
        "--lea45plus", str(files["lea45plus"]),
        "--assumption", "A",
        "--population", str(files["population"]),
    ]


def upload_payload() -> dict:
    lea45, lea45plus = lea_texts()
    return {
        "drg_ro": drg_ro_text(),
        "drg_dh": drg_dh_text(),
        "beds": BEDS_TEXT,
        "lea45": lea45,
        "lea45plus": lea45plus,
        "assumption": "A",
        "population": {
            "residents": 100_000,
            "inflow_admissions": 150,
            "outflow_admissions": 400,
        },
    }

from __future__ import annotations

import pytest

from bedplan.model import (
    BedEntry,
    BedInventory,
    Care,
    DrgKind,
    DrgRecord,
    DrgTable,
    LeaClassifier,
    Population,
    Provenance,
    Regime,
    Sector,
    TableRegime,
)

_acceptance_outcomes: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0] if marker.args else item.name
    if rep.when == "call":
        _acceptance_outcomes[label] = rep.outcome
    elif rep.when == "setup" and rep.outcome != "passed":
        _acceptance_outcomes[label] = rep.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance_outcomes):
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(
            _acceptance_outcomes[label], _acceptance_outcomes[label].upper()
        )
        terminalreporter.write_line(f"{verdict}  {label}")


def record(
    code: str,
    admissions: int,
    total_days: int,
    one_day: int = 0,
    kind: DrgKind = DrgKind.MEDICAL,
    threshold: int = 10,
    at_share: float = 0.0,
    at_days: int = 0,
) -> DrgRecord:
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


@pytest.fixture
def classifier() -> LeaClassifier:
    return LeaClassifier(
        lea45=frozenset({"006", "039"}),
        lea45plus=frozenset({"119", "162"}),
    )


@pytest.fixture
def ro_table() -> DrgTable:
    return DrgTable(
        records=(
            record("006", 1000, 3000, one_day=400, kind=DrgKind.SURGICAL,
                   at_share=0.05, at_days=300),
            record("039", 500, 900, one_day=300, at_share=0.02, at_days=50),
            record("119", 800, 2400, one_day=200, at_share=0.04, at_days=200),
            record("162", 400, 1600, one_day=100, kind=DrgKind.SURGICAL,
                   at_share=0.03, at_days=100),
            record("127", 2000, 12000, one_day=300, at_share=0.10, at_days=2000),
            record("430", 1200, 9000, one_day=100, at_share=0.08, at_days=1500),
        ),
        year="2008",
        regime=TableRegime.ACUTE_RO,
    )


@pytest.fixture
def dh_table() -> DrgTable:
    return DrgTable(
        records=(
            record("006", 600, 1300),
            record("119", 300, 650),
            record("127", 900, 1900),
        ),
        year="2008",
        regime=TableRegime.ACUTE_DH,
    )


@pytest.fixture
def beds() -> BedInventory:
    return BedInventory(
        entries={
            (Sector.PUBLIC, Regime.RO, Care.ACUTE): BedEntry(230),
            (Sector.PUBLIC, Regime.DH, Care.ACUTE): BedEntry(25),
            (Sector.PRIVATE, Regime.RO, Care.ACUTE): BedEntry(45, Provenance.ESTIMATED),
            (Sector.PRIVATE, Regime.DH, Care.ACUTE): BedEntry(0, Provenance.ESTIMATED),
            (Sector.PUBLIC, Regime.RO, Care.REHAB): BedEntry(30),
            (Sector.PUBLIC, Regime.DH, Care.REHAB): BedEntry(5),
            (Sector.PUBLIC, Regime.RO, Care.LTC): BedEntry(15),
        }
    )


@pytest.fixture
def population() -> Population:
    return Population(residents=100_000, inflow_admissions=150, outflow_admissions=400)

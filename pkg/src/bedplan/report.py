"""Report assembly and deterministic formatting.

Every number in a report traces to an engine output; the only report-side
arithmetic is formatting: rates are printed with 1 decimal (per 1,000
residents), utilization as a percentage with 1 decimal, densities with 2
decimals, money as whole euros rounded half-up, and bed counts ceiled.
Identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .analysis import GroupComparison
from .constraints import ComplianceReport
from .scenario import ScenarioOutcome, SweepResult


def money_eur(value: float) -> int:
    """Whole euros, ties rounded away from zero."""
    return int(Decimal(repr(value)).quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def ceil_beds(value: float) -> int:
    return math.ceil(value)


def fmt_rate(per_resident: float) -> str:
    """A per-resident rate as 'per 1,000 residents' with 1 decimal."""
    return f"{per_resident * 1000.0:.1f}"


def fmt_pct(fraction: float) -> str:
    return f"{fraction * 100.0:.1f}"


def fmt_density(per_1000: float) -> str:
    return f"{per_1000:.2f}"


def outcome_to_dict(outcome: ScenarioOutcome) -> dict:
    """Full-precision machine-readable form of a scenario outcome."""
    return {
        "name": outcome.name,
        "demand": {
            "ro_days": outcome.demand.ro_days,
            "dh_accesses": outcome.demand.dh_accesses,
            "ro_admissions": outcome.demand.ro_admissions,
            "dh_admissions": outcome.demand.dh_admissions,
            "admissions": outcome.demand.admissions,
            "ambul_services": outcome.demand.ambul_services,
            "rsa_days": outcome.demand.rsa_days,
            "rehab_days": outcome.demand.rehab_days,
            "avoided_admissions": outcome.demand.avoided_admissions,
        },
        "beds": {
            "ro_required": outcome.requirement.ro_beds,
            "dh_required": outcome.requirement.dh_beds,
            "acute_after": outcome.acute_beds_after,
            "rehab_ltc_after": outcome.rehab_ltc_beds_after,
            "acute_delta": outcome.bed_delta.acute,
            "rehab_ltc_delta": outcome.bed_delta.rehab_ltc,
            "total_delta": outcome.bed_delta.total,
        },
        "rates": {
            "hospitalization_rate": outcome.rates.hospitalization_rate,
            "utilization_rate": outcome.rates.utilization_rate,
            "bed_density": outcome.rates.bed_density,
            "mean_stay_days": outcome.rates.mean_stay_days,
            "over_capacity": outcome.rates.over_capacity,
        },
        "densities_per_1000": {
            "acute": outcome.acute_density_per_1000,
            "rehab_ltc": outcome.rehab_density_per_1000,
            "total": outcome.total_density_per_1000,
        },
        "acute_bed_share": outcome.acute_bed_share,
        "pnl_eur": outcome.pnl,
        "compliance": compliance_to_dict(outcome.compliance),
        "trajectory": [
            {
                "step": p.step,
                "hospitalization_rate": p.hospitalization_rate,
                "utilization_rate": p.utilization_rate,
            }
            for p in outcome.trajectory
        ],
    }


def compliance_to_dict(report: ComplianceReport) -> dict:
    return {
        "overall_pass": report.overall_pass,
        "checks": [
            {
                "name": c.name,
                "kind": c.kind.value,
                "threshold": c.threshold,
                "measured": c.measured,
                "passed": c.passed,
                "margin": c.margin,
                "complete": c.complete,
                "note": c.note,
            }
            for c in report.checks
        ],
    }


@dataclass(frozen=True)
class ReportBundle:
    """Everything a batch run produced, ready to be written out."""

    outcomes: tuple[ScenarioOutcome, ...]
    rankings: Mapping[str, tuple[str, ...]]
    failures: tuple[tuple[str, str], ...] = ()
    specialty: Mapping[str, Sequence[GroupComparison]] = field(default_factory=dict)
    primary_rank: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "outcomes": [outcome_to_dict(o) for o in self.outcomes],
            "rankings": {m: list(names) for m, names in sorted(self.rankings.items())},
            "failures": [
                {"scenario": name, "error": message} for name, message in self.failures
            ],
            "specialty_comparison": {
                scenario: [
                    {
                        "group": row.group,
                        "required_beds": row.required_beds,
                        "current_beds": row.current_beds,
                        "pct_change": row.pct_change,
                        "flagged": row.flagged,
                    }
                    for row in rows
                ]
                for scenario, rows in sorted(self.specialty.items())
            },
        }


def build_bundle(
    result: SweepResult,
    specialty: Optional[Mapping[str, Sequence[GroupComparison]]] = None,
    primary_rank: Optional[str] = None,
) -> ReportBundle:
    return ReportBundle(
        outcomes=result.outcomes,
        rankings=result.rankings,
        failures=result.failures,
        specialty=specialty or {},
        primary_rank=primary_rank,
    )


OUTCOME_COLUMNS = (
    "scenario",
    "alpha_per_1000",
    "beta_pct",
    "acute_density",
    "rehab_density",
    "total_density",
    "acute_bed_share_pct",
    "acute_beds",
    "bed_delta",
    "pnl_eur",
    "compliant",
)


def _outcome_row(o: ScenarioOutcome) -> tuple[str, ...]:
    return (
        o.name,
        fmt_rate(o.rates.hospitalization_rate),
        fmt_pct(o.rates.utilization_rate),
        fmt_density(o.acute_density_per_1000),
        fmt_density(o.rehab_density_per_1000),
        fmt_density(o.total_density_per_1000),
        fmt_pct(o.acute_bed_share),
        str(ceil_beds(o.acute_beds_after)),
        str(round_beds_delta(o)),
        str(money_eur(o.pnl)),
        "yes" if o.compliance.overall_pass else "no",
    )


def round_beds_delta(o: ScenarioOutcome) -> int:
    """Report-time bed delta: current integer stock minus the ceiled plan."""
    current = o.acute_beds_after + o.bed_delta.acute
    current_rehab = o.rehab_ltc_beds_after + o.bed_delta.rehab_ltc
    planned = ceil_beds(o.acute_beds_after) + ceil_beds(o.rehab_ltc_beds_after)
    return int(round(current + current_rehab)) - planned


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [";".join(header)]
    lines.extend(";".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def write_bundle(bundle: ReportBundle, out_dir: Path) -> list[Path]:
    """Write the bundle deterministically; returns the files written."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(name: str, content: str) -> None:
        path = out_dir / name
        path.write_text(content, encoding="utf-8", newline="\n")
        written.append(path)

    emit(
        "report.json",
        json.dumps(bundle.to_dict(), indent=2, sort_keys=True) + "\n",
    )

    outcomes = list(bundle.outcomes)
    if bundle.primary_rank:
        order = {name: i for i, name in enumerate(bundle.rankings[bundle.primary_rank])}
        outcomes.sort(key=lambda o: order[o.name])
    else:
        outcomes.sort(key=lambda o: o.name)
    emit("outcomes.csv", _table(OUTCOME_COLUMNS, [_outcome_row(o) for o in outcomes]))

    rank_rows = []
    for metric in sorted(bundle.rankings):
        for position, name in enumerate(bundle.rankings[metric], start=1):
            rank_rows.append((metric, str(position), name))
    emit("rankings.csv", _table(("metric", "position", "scenario"), rank_rows))

    compliance_rows = []
    for o in sorted(bundle.outcomes, key=lambda o: o.name):
        for c in o.compliance.checks:
            compliance_rows.append(
                (
                    o.name,
                    c.name,
                    c.kind.value,
                    "" if c.measured is None else repr(c.measured),
                    repr(c.threshold),
                    "n/a" if c.passed is None else ("pass" if c.passed else "fail"),
                    "" if c.margin is None else repr(c.margin),
                    "yes" if c.complete else "no",
                )
            )
    emit(
        "compliance.csv",
        _table(
            ("scenario", "check", "kind", "measured", "threshold", "verdict",
             "margin", "complete"),
            compliance_rows,
        ),
    )

    for o in sorted(bundle.outcomes, key=lambda o: o.name):
        rows = [
            (str(p.step), fmt_rate(p.hospitalization_rate), fmt_pct(p.utilization_rate))
            for p in o.trajectory
        ]
        emit(
            f"trajectory_{o.name}.csv",
            _table(("step", "alpha_per_1000", "beta_pct"), rows),
        )

    if bundle.specialty:
        rows = []
        for scenario in sorted(bundle.specialty):
            for row in bundle.specialty[scenario]:
                rows.append(
                    (
                        scenario,
                        row.group,
                        str(ceil_beds(row.required_beds)),
                        str(int(row.current_beds)),
                        "" if row.pct_change is None else fmt_pct(row.pct_change),
                        "yes" if row.flagged else "no",
                    )
                )
        emit(
            "specialty.csv",
            _table(
                ("scenario", "group", "required_beds", "current_beds",
                 "pct_change", "flagged"),
                rows,
            ),
        )

    if bundle.failures:
        rows = [(name, message) for name, message in bundle.failures]
        emit("failures.csv", _table(("scenario", "error"), rows))

    return written

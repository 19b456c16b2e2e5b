"""The six statutory checks a regional hospital network must satisfy.

Bed-density caps and the hospitalization-rate cap span the five admission
regimes (acute RO, acute DH, rehab RO, rehab DH, long-term care); the two
day-hospital floors are shares of admissions and beds. Equality at a
threshold passes: "not exceed" and "not fall below" are inclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .model import (
    BedInventory,
    Care,
    DomainError,
    Population,
    Provenance,
    Regime,
)


@dataclass(frozen=True)
class ConstraintThresholds:
    """Statutory limits. Densities and the rate are per 1,000 residents;
    shares are fractions. Thresholds are independent inputs: the acute and
    rehab caps are not required to add up to the total cap."""

    max_total_density: float = 4.0
    max_acute_density: float = 3.3
    max_rehab_ltc_density: float = 0.7
    max_hospitalization_rate: float = 180.0
    min_dh_admission_share: float = 0.20
    min_dh_bed_share: float = 0.10

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if value <= 0:
                raise DomainError(f"threshold {name} must be positive, got {value}")


DEFAULT_THRESHOLDS = ConstraintThresholds()


@dataclass(frozen=True)
class AdmissionsByRegime:
    """Annual admission counts per regime. ``None`` marks a regime the
    source did not report; totals treat it as zero and the dependent checks
    carry a completeness warning."""

    acute_ro: float = 0.0
    acute_dh: Optional[float] = None
    rehab_ro: Optional[float] = None
    rehab_dh: Optional[float] = None
    ltc: Optional[float] = None

    @property
    def total(self) -> float:
        return sum(
            v or 0.0
            for v in (self.acute_ro, self.acute_dh, self.rehab_ro, self.rehab_dh, self.ltc)
        )

    @property
    def dh_total(self) -> float:
        return (self.acute_dh or 0.0) + (self.rehab_dh or 0.0)

    @property
    def complete(self) -> bool:
        return None not in (self.acute_dh, self.rehab_ro, self.rehab_dh, self.ltc)


class CheckKind(enum.Enum):
    CAP = "cap"
    FLOOR = "floor"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one statutory check.

    ``passed`` is None when the measured ratio is undefined (0/0); such
    checks are not applicable and never count for or against overall
    compliance. ``margin`` is measured minus threshold, so negative margin
    means headroom under a cap."""

    name: str
    kind: CheckKind
    threshold: float
    measured: Optional[float]
    passed: Optional[bool]
    margin: Optional[float]
    complete: bool = True
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.passed is not None


@dataclass(frozen=True)
class ComplianceReport:
    checks: tuple[CheckResult, ...]

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.applicable)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _cap(name: str, measured: float, threshold: float, complete: bool = True,
         note: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        kind=CheckKind.CAP,
        threshold=threshold,
        measured=measured,
        passed=measured <= threshold,
        margin=measured - threshold,
        complete=complete,
        note=note,
    )


def _floor(name: str, measured: Optional[float], threshold: float,
           complete: bool = True, note: str = "") -> CheckResult:
    if measured is None:
        return CheckResult(
            name=name,
            kind=CheckKind.FLOOR,
            threshold=threshold,
            measured=None,
            passed=None,
            margin=None,
            complete=complete,
            note=note or "ratio undefined (0/0); check not applicable",
        )
    return CheckResult(
        name=name,
        kind=CheckKind.FLOOR,
        threshold=threshold,
        measured=measured,
        passed=measured >= threshold,
        margin=measured - threshold,
        complete=complete,
        note=note,
    )


def evaluate(
    beds: BedInventory,
    admissions: AdmissionsByRegime,
    population: Population,
    thresholds: ConstraintThresholds = DEFAULT_THRESHOLDS,
) -> ComplianceReport:
    """Run all six statutory checks against a network state."""
    if population.residents <= 0:
        raise DomainError(
            f"residents must be positive, got {population.residents}"
        )

    def per_1000(value: float) -> float:
        # One rounding only: exact integer inputs at a threshold must
        # measure exactly at the threshold.
        return value * 1000.0 / population.residents

    acute = beds.acute_beds
    rehab_ltc = beds.rehab_ltc_beds
    total_beds = acute + rehab_ltc
    dh_beds = beds.dh_beds

    total_adm = admissions.total

    # The statutory rate is the crude rate on registered admissions; when
    # mobility flows are known the rate net of them is emitted alongside,
    # since the two standards count different populations.
    rate_note = ""
    if population.inflow_admissions or population.outflow_admissions:
        net_adm = (
            total_adm
            - population.inflow_admissions
            + population.outflow_admissions
        )
        rate_note = (
            f"rate net of cross-border flows: {per_1000(net_adm):.1f} per 1,000"
        )

    # The bed-share floor depends on the DH/RO split; if any split entry is
    # estimated rather than reported the check result is marked incomplete.
    beds_estimated = beds.has_estimated_entries()

    dh_adm_share = admissions.dh_total / total_adm if total_adm > 0 else None
    dh_bed_share = dh_beds / total_beds if total_beds > 0 else None

    checks = (
        _cap("total_bed_density", per_1000(total_beds), thresholds.max_total_density),
        _cap("acute_bed_density", per_1000(acute), thresholds.max_acute_density),
        _cap(
            "rehab_ltc_bed_density",
            per_1000(rehab_ltc),
            thresholds.max_rehab_ltc_density,
        ),
        _cap(
            "hospitalization_rate",
            per_1000(total_adm),
            thresholds.max_hospitalization_rate,
            complete=admissions.complete,
            note=rate_note,
        ),
        _floor(
            "dh_admission_share",
            dh_adm_share,
            thresholds.min_dh_admission_share,
            complete=admissions.complete,
        ),
        _floor(
            "dh_bed_share",
            dh_bed_share,
            thresholds.min_dh_bed_share,
            complete=not beds_estimated,
            note="DH/RO bed split partly estimated" if beds_estimated else "",
        ),
    )
    return ComplianceReport(checks=checks)

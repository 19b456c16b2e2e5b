"""Shared value types for the capacity-planning toolkit.

Counts are integers; rates and fractions are double precision. Bed
requirements derived downstream stay fractional and are only ceiled when
a report is formatted. All types here are immutable values with no I/O.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


class DrgKind(enum.Enum):
    MEDICAL = "M"
    SURGICAL = "C"


class TableRegime(enum.Enum):
    ACUTE_RO = "acute-RO"
    ACUTE_DH = "acute-DH"


class Sector(enum.Enum):
    PUBLIC = "public"
    PRIVATE = "private"


class Regime(enum.Enum):
    RO = "RO"
    DH = "DH"


class Care(enum.Enum):
    ACUTE = "acute"
    REHAB = "rehab"
    LTC = "ltc"


class Provenance(enum.Enum):
    REPORTED = "reported"
    ESTIMATED = "estimated"


# Tolerance for cross-checking stored admission shares against counts.
# Source tables round shares to one decimal of a percent.
SHARE_CROSS_CHECK_TOLERANCE = 0.005


@dataclass(frozen=True)
class DrgRecord:
    """One aggregated case-mix row: admissions, stay days and the 1-day /
    above-threshold split used to grade appropriateness.

    The last five fields mirror columns that interchange files publish even
    though they are derivable; they are retained for cross-checks and may be
    None when a record is built programmatically.
    """

    code: str
    kind: DrgKind
    admissions: int
    total_days: int
    one_day_admissions: int
    threshold_days: int
    above_threshold_admission_share: float
    days_above_threshold: int
    mean_stay_days: Optional[float] = None
    mean_stay_below_threshold: Optional[float] = None
    one_day_share: Optional[float] = None
    share_2_3_days: Optional[float] = None
    share_4_to_threshold: Optional[float] = None

    @property
    def multi_day_admissions(self) -> int:
        return self.admissions - self.one_day_admissions

    @property
    def multi_day_days(self) -> int:
        return self.total_days - self.one_day_admissions


@dataclass(frozen=True)
class DrgTable:
    """A year's demand for one admission regime, one row per DRG."""

    records: tuple[DrgRecord, ...]
    year: str = ""
    regime: TableRegime = TableRegime.ACUTE_RO

    def __iter__(self) -> Iterator[DrgRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_admissions(self) -> int:
        return sum(r.admissions for r in self.records)

    @property
    def total_days(self) -> int:
        return sum(r.total_days for r in self.records)


@dataclass(frozen=True)
class BedEntry:
    count: int
    provenance: Provenance = Provenance.REPORTED


@dataclass(frozen=True)
class BedInventory:
    """Bed counts keyed by (sector, regime, care type).

    Entries synthesized rather than read from a source carry
    ``Provenance.ESTIMATED``; compliance checks that depend on them are
    reported with a completeness warning.
    """

    entries: Mapping[tuple[Sector, Regime, Care], BedEntry] = field(
        default_factory=dict
    )

    def count(
        self,
        sector: Optional[Sector] = None,
        regime: Optional[Regime] = None,
        care: Optional[Care] = None,
    ) -> int:
        total = 0
        for (s, r, c), entry in self.entries.items():
            if sector is not None and s is not sector:
                continue
            if regime is not None and r is not regime:
                continue
            if care is not None and c is not care:
                continue
            total += entry.count
        return total

    @property
    def acute_beds(self) -> int:
        return self.count(care=Care.ACUTE)

    @property
    def rehab_ltc_beds(self) -> int:
        return self.count(care=Care.REHAB) + self.count(care=Care.LTC)

    @property
    def dh_beds(self) -> int:
        return self.count(regime=Regime.DH)

    @property
    def total_beds(self) -> int:
        return self.count()

    def has_estimated_entries(self) -> bool:
        return any(
            e.provenance is Provenance.ESTIMATED for e in self.entries.values()
        )


@dataclass(frozen=True)
class Population:
    """Resident head count plus cross-border admission flows."""

    residents: int
    inflow_admissions: int = 0
    outflow_admissions: int = 0


@dataclass(frozen=True)
class RateSet:
    """The four summary rates of a network state.

    ``utilization_rate`` above 1 is a legal over-capacity diagnostic and is
    never clamped.
    """

    hospitalization_rate: float  # admissions per resident per year
    utilization_rate: float  # occupied fraction of bed-capacity-days
    bed_density: float  # beds per resident
    mean_stay_days: float

    @property
    def over_capacity(self) -> bool:
        return self.utilization_rate > 1.0


@dataclass(frozen=True)
class DhParameters:
    """Conventions governing day-hospital capacity arithmetic.

    A day-hospital bed turns over ``daily_turnover`` patients per service
    day, an admission is delivered in ``accesses_per_admission`` accesses,
    and ``dh_correction`` discounts nominal capacity (1.0 when planning a
    new network, 0.75 when estimating the current stock). Day hospitals run
    5 days a week, ordinary wards 7.
    """

    daily_turnover: float = 2.0
    accesses_per_admission: float = 2.0
    dh_correction: float = 1.0
    dh_service_days: float = 250.0
    ro_service_days: float = 365.0

    def __post_init__(self) -> None:
        if self.daily_turnover < 1:
            raise DomainError("daily_turnover must be >= 1")
        if self.accesses_per_admission < 1:
            raise DomainError("accesses_per_admission must be >= 1")
        if not 0 < self.dh_correction <= 1:
            raise DomainError("dh_correction must be in (0, 1]")
        if self.dh_service_days <= 0 or self.ro_service_days <= 0:
            raise DomainError("service days must be positive")


@dataclass(frozen=True)
class LeaClassifier:
    """The two inappropriateness code lists; anything in neither is OTHER."""

    lea45: frozenset[str] = frozenset()
    lea45plus: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        overlap = self.lea45 & self.lea45plus
        if overlap:
            raise DomainError(
                "codes present in both lists: " + ", ".join(sorted(overlap))
            )


@dataclass(frozen=True)
class Violation:
    """An invariant breach found in input data. Violations are data, not
    failures: validation never raises."""

    locator: str
    message: str


def _check_record(record: DrgRecord, locator: str) -> list[Violation]:
    found = []

    def bad(message: str) -> None:
        found.append(Violation(locator, message))

    if record.one_day_admissions < 0:
        bad("one-day admissions are negative")
    if record.admissions < record.one_day_admissions:
        bad(
            f"one-day admissions ({record.one_day_admissions}) exceed total "
            f"admissions ({record.admissions})"
        )
    if record.total_days < record.admissions:
        bad(
            f"total days ({record.total_days}) below admissions "
            f"({record.admissions}); every admission lasts at least one day"
        )
    if record.days_above_threshold < 0:
        bad("days above threshold are negative")
    if record.days_above_threshold > record.total_days:
        bad(
            f"days above threshold ({record.days_above_threshold}) exceed "
            f"total days ({record.total_days})"
        )
    if record.threshold_days < 1:
        bad(f"threshold is {record.threshold_days}; must be at least 1 day")
    if not 0 <= record.above_threshold_admission_share <= 1:
        bad(
            "above-threshold admission share "
            f"{record.above_threshold_admission_share} outside [0, 1]"
        )

    # Cross-checks against the retained share columns, within the rounding
    # tolerance of the source (one decimal of a percent).
    if record.one_day_share is not None and record.admissions > 0:
        derived = record.one_day_admissions / record.admissions
        if abs(record.one_day_share - derived) > SHARE_CROSS_CHECK_TOLERANCE:
            bad(
                f"stored one-day share {record.one_day_share:.4f} disagrees "
                f"with counts ({derived:.4f})"
            )
    if (
        record.one_day_share is not None
        and record.share_2_3_days is not None
        and record.share_4_to_threshold is not None
    ):
        total_share = (
            record.one_day_share
            + record.share_2_3_days
            + record.share_4_to_threshold
            + record.above_threshold_admission_share
        )
        if abs(total_share - 1.0) > SHARE_CROSS_CHECK_TOLERANCE:
            bad(f"duration shares sum to {total_share:.4f}, expected 1")
    return found


def validate_dataset(
    table: DrgTable, beds: BedInventory, population: Population
) -> list[Violation]:
    """Report every invariant breach in a loaded dataset.

    Idempotent and order-independent over records; an empty result means
    every declared invariant holds.
    """
    violations: list[Violation] = []

    seen: dict[str, int] = {}
    for record in table.records:
        seen[record.code] = seen.get(record.code, 0) + 1
        violations.extend(_check_record(record, f"drg[{record.code}]"))
    for code, n in seen.items():
        if n > 1:
            violations.append(
                Violation(f"drg[{code}]", f"DRG code appears {n} times")
            )

    for (sector, regime, care), entry in beds.entries.items():
        if entry.count < 0:
            violations.append(
                Violation(
                    f"beds[{sector.value}/{regime.value}/{care.value}]",
                    f"bed count is negative ({entry.count})",
                )
            )

    if population.residents <= 0:
        violations.append(
            Violation("population", f"residents must be positive, got {population.residents}")
        )
    if population.inflow_admissions < 0:
        violations.append(Violation("population", "inflow admissions are negative"))
    if population.outflow_admissions < 0:
        violations.append(Violation("population", "outflow admissions are negative"))

    return violations

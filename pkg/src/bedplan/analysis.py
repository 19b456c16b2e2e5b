"""Derived analytics: private day-hospital bed estimation, cross-border
admission accounting, specialty-level bed comparison, and the
planned-vs-emergency division performance index.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .equilibrium import required_ro_beds
from .model import (
    BedEntry,
    BedInventory,
    Care,
    DhParameters,
    DomainError,
    DrgTable,
    Provenance,
    Regime,
    Sector,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DhBedEstimate:
    """Day-hospital bed stock inferred from reported accesses. ``clamped``
    marks a private estimate forced up to zero because the reported public
    stock already exceeds the inferred total."""

    total_beds: float
    private_beds: float
    clamped: bool = False


def estimate_dh_bed_stock(
    total_dh_accesses: float,
    public_dh_beds: float,
    beta: float,
    params: DhParameters = DhParameters(dh_correction=0.75),
) -> DhBedEstimate:
    """Infer total and private day-hospital beds from annual accesses.

    Stock estimation uses the capacity correction (0.75 by default here);
    at correction 0.75 the estimate is exactly 4/3 of the uncorrected one.
    """
    if beta <= 0:
        raise DomainError(f"utilization rate must be positive, got {beta}")
    if total_dh_accesses < 0:
        raise DomainError("accesses must be nonnegative")
    total = total_dh_accesses / (
        params.daily_turnover
        * params.dh_correction
        * params.dh_service_days
        * beta
    )
    private = total - public_dh_beds
    clamped = private < 0
    if clamped:
        logger.warning(
            "reported public DH beds (%s) exceed the estimated total (%s); "
            "private estimate clamped to 0",
            public_dh_beds,
            total,
        )
        private = 0.0
    return DhBedEstimate(total_beds=total, private_beds=private, clamped=clamped)


def resolve_private_dh(
    inventory: BedInventory,
    private_dh_beds: int,
    includes_dh: bool,
) -> BedInventory:
    """Write an estimated private acute DH count into an inventory whose
    private figures left it pending.

    When the reported private acute total already included DH beds the
    estimate is carved out of the RO entry; otherwise it is added on top.
    """
    if private_dh_beds < 0:
        raise DomainError("private DH beds must be nonnegative")
    entries = dict(inventory.entries)
    ro_key = (Sector.PRIVATE, Regime.RO, Care.ACUTE)
    dh_key = (Sector.PRIVATE, Regime.DH, Care.ACUTE)
    if includes_dh:
        reported = entries.get(ro_key, BedEntry(0, Provenance.ESTIMATED))
        remaining = max(reported.count - private_dh_beds, 0)
        entries[ro_key] = BedEntry(remaining, Provenance.ESTIMATED)
    entries[dh_key] = BedEntry(private_dh_beds, Provenance.ESTIMATED)
    return BedInventory(entries=entries)


@dataclass(frozen=True)
class MobilityBalance:
    """Cross-border admission balance.

    ``net_served`` is exact integer arithmetic. ``dilution`` is the net
    outflow as a share of it; ``outflow_share`` is the gross outflow share,
    emitted alongside because the two ratios answer different questions.
    """

    net_served: int
    dilution: float
    outflow_share: float


def mobility_net(
    resident_admissions: int, outflow: int, inflow: int
) -> MobilityBalance:
    """Net admissions served after cross-border flows."""
    if resident_admissions < 0 or outflow < 0 or inflow < 0:
        raise DomainError("admission counts must be nonnegative")
    net_served = resident_admissions - outflow + inflow
    if net_served <= 0:
        raise DomainError(f"net served admissions not positive ({net_served})")
    return MobilityBalance(
        net_served=net_served,
        dilution=(outflow - inflow) / net_served,
        outflow_share=outflow / net_served,
    )


@dataclass(frozen=True)
class SpecialtyGrouping:
    """Maps specialties and DRG codes onto affinity groups."""

    specialty_to_group: Mapping[str, str]
    drg_to_group: Mapping[str, str]

    def group_for_drg(self, code: str) -> Optional[str]:
        return self.drg_to_group.get(code)

    def unmapped_codes(self, table: DrgTable) -> list[str]:
        return sorted(
            {r.code for r in table.records if r.code not in self.drg_to_group}
        )


@dataclass(frozen=True)
class GroupComparison:
    """Required vs current beds for one specialty group. ``pct_change`` is
    None when there are no current beds to compare against; ``flagged``
    marks surgical groups whose requirement falls far below the stock."""

    group: str
    required_beds: float
    current_beds: float
    pct_change: Optional[float]
    flagged: bool = False


def specialty_bed_comparison(
    demand_days_by_group: Mapping[str, float],
    beta: float,
    current_beds_by_group: Mapping[str, float],
    params: DhParameters = DhParameters(),
    surgical_groups: Sequence[str] = (),
    flag_threshold: float = -0.25,
) -> list[GroupComparison]:
    """Per-group ordinary-bed requirement against the current allocation."""
    if beta <= 0:
        raise DomainError(f"utilization rate must be positive, got {beta}")
    surgical = set(surgical_groups)
    groups = sorted(set(demand_days_by_group) | set(current_beds_by_group))
    rows = []
    for group in groups:
        days = demand_days_by_group.get(group, 0.0)
        current = current_beds_by_group.get(group, 0.0)
        required = required_ro_beds(days, beta, params)
        if current > 0:
            pct = (required - current) / current
            flagged = pct <= flag_threshold and group in surgical
        else:
            pct = None
            flagged = False
        rows.append(
            GroupComparison(
                group=group,
                required_beds=required,
                current_beds=current,
                pct_change=pct,
                flagged=flagged,
            )
        )
    return rows


@dataclass(frozen=True)
class DivisionWorkload:
    """One clinical division's annual stay days, split into emergency work
    and planned work by DRG, with the fraction of each DRG's planned days
    that must remain in ordinary admission."""

    emergency_days: float
    planned_days_by_drg: Mapping[str, float]
    ro_retention_by_drg: Mapping[str, float]
    observed_beds: float

    def __post_init__(self) -> None:
        if self.emergency_days < 0:
            raise DomainError("emergency days must be nonnegative")
        for code, days in self.planned_days_by_drg.items():
            if days < 0:
                raise DomainError(f"planned days for {code} must be nonnegative")
        for code, frac in self.ro_retention_by_drg.items():
            if not 0.0 <= frac <= 1.0:
                raise DomainError(
                    f"retention fraction for {code} must be in [0, 1], got {frac}"
                )


def performance_index(
    workload: DivisionWorkload,
    beta: float,
    params: DhParameters = DhParameters(),
) -> float:
    """Expected minus observed beds for a division.

    Planned days not retained in ordinary admission are served as
    day-hospital work; emergency days always stay ordinary. Positive values
    mean the division is under-bedded for its workload, negative values
    mean excess beds.
    """
    if beta <= 0:
        raise DomainError(f"utilization rate must be positive, got {beta}")
    dh_days = 0.0
    ro_days = workload.emergency_days
    for code in sorted(workload.planned_days_by_drg):
        days = workload.planned_days_by_drg[code]
        try:
            retention = workload.ro_retention_by_drg[code]
        except KeyError:
            raise DomainError(f"no retention fraction for DRG {code}") from None
        dh_days += days * (1.0 - retention)
        ro_days += days * retention
    expected = dh_days / (
        params.daily_turnover * params.dh_service_days * beta
    ) + ro_days / (params.ro_service_days * beta)
    return expected - workload.observed_beds


def restructured_ro_days_by_drg(
    table: DrgTable,
    classifier,
    rules,
) -> dict[str, float]:
    """Post-reallocation ordinary stay days per DRG.

    Distributes each bucket-level rule onto the rows that feed the bucket;
    summed over DRGs this equals the engine's aggregate ordinary days.
    """
    from .scenario import DrgClass, SourceBucket, classify

    one_day_stay = {c: 1.0 for c in DrgClass}
    multi_stay = {c: 1.0 for c in DrgClass}
    at_transfer = {c: 0.0 for c in DrgClass}
    for rule in rules:
        if rule.source is SourceBucket.RO_ONE_DAY:
            one_day_stay[rule.drg_class] = rule.stay
        elif rule.source is SourceBucket.RO_MULTI_DAY:
            multi_stay[rule.drg_class] = rule.stay
        elif rule.source is SourceBucket.ABOVE_THRESHOLD_DAYS:
            at_transfer[rule.drg_class] = rule.to_rsa + rule.to_rehab

    days: dict[str, float] = {}
    for record in table.records:
        cls = classify(record.code, classifier)
        one_day_days = float(record.one_day_admissions)
        multi_days = float(record.total_days - record.one_day_admissions)
        kept = one_day_days * one_day_stay[cls] + multi_days * multi_stay[cls]
        # The above-threshold transfer removes days from what the multi-day
        # rule left in place.
        kept -= record.days_above_threshold * multi_stay[cls] * at_transfer[cls]
        days[record.code] = days.get(record.code, 0.0) + kept
    return days

"""Pricing of bed changes and substituted services, plus the ward staffing
rule used to argue for merging small units.

Cost parameters are annual euros per bed (or euros per ambulatory service);
fractional bed deltas are priced fractionally and only rounded when a
report is formatted. Positive P&L is a saving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibrium import DemandAggregate
from .model import BedInventory, DomainError


@dataclass(frozen=True)
class CostModel:
    """Unit costs. Defaults: rehab/long-term beds at 65% of an acute bed,
    residential (RSA) beds at 30%; residential beds run 7 days a week."""

    acute_bed_pa: float = 250_000.0
    rehab_ltc_bed_pa: float = 162_500.0
    rsa_bed_pa: float = 75_000.0
    ambulatory_service: float = 200.0
    rsa_days_per_bed: float = 365.0

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if value <= 0:
                raise DomainError(f"cost {name} must be positive, got {value}")


DEFAULT_COSTS = CostModel()


@dataclass(frozen=True)
class PlannedBeds:
    """Planned bed stock by care type, fractional."""

    acute: float
    rehab_ltc: float


def bed_delta_pnl(
    before: BedInventory,
    after: PlannedBeds,
    demand: DemandAggregate,
    costs: CostModel = DEFAULT_COSTS,
) -> float:
    """Annual savings from a bed restructuring, net of the substituted
    ambulatory services and residential-care days it generates.

    Linear in every bed delta and service count.
    """
    acute_delta = before.acute_beds - after.acute
    rehab_delta = before.rehab_ltc_beds - after.rehab_ltc
    rsa_bed_equivalents = demand.rsa_days / costs.rsa_days_per_bed
    return (
        acute_delta * costs.acute_bed_pa
        + rehab_delta * costs.rehab_ltc_bed_pa
        - demand.ambul_services * costs.ambulatory_service
        - rsa_bed_equivalents * costs.rsa_bed_pa
    )


def staffing_estimate(unit_beds: int) -> tuple[int, int]:
    """(doctors, nurses) for a ward of ``unit_beds`` beds.

    The first 20-bed block needs 6 doctors and 16 nurses; each further
    started block adds 3 doctors and 16 nurses. Merging two 20-bed units
    into one 40-bed unit therefore saves exactly 3 doctors.
    """
    if unit_beds < 0:
        raise DomainError(f"unit beds must be nonnegative, got {unit_beds}")
    if unit_beds == 0:
        return (0, 0)
    blocks = math.ceil(unit_beds / 20)
    return (6 + 3 * (blocks - 1), 16 * blocks)

"""Annual-average equilibrium between hospitalization volumes, beds and rates.

An ordinary bed supplies ``utilization * ro_service_days`` patient-days a
year; a day-hospital bed supplies ``utilization * daily_turnover *
dh_correction * dh_service_days`` patient accesses. Every function here is a
pure conversion along that identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .model import DhParameters, DomainError, RateSet


@dataclass(frozen=True)
class DemandAggregate:
    """Annual demand volumes by destination after (or before) reallocation.

    ``ro_admissions``/``dh_admissions`` split the hospital admissions R so
    that regime shares stay computable; ``admissions`` is their sum.
    """

    ro_days: float = 0.0
    dh_accesses: float = 0.0
    ro_admissions: float = 0.0
    dh_admissions: float = 0.0
    ambul_services: float = 0.0
    rsa_days: float = 0.0
    rehab_days: float = 0.0
    avoided_admissions: float = 0.0

    @property
    def admissions(self) -> float:
        return self.ro_admissions + self.dh_admissions


@dataclass(frozen=True)
class BedRequirement:
    """Fractional beds needed to serve a demand at a given utilization."""

    ro_beds: float
    dh_beds: float

    @property
    def total(self) -> float:
        return self.ro_beds + self.dh_beds


class BetaSolution(NamedTuple):
    beta: float
    over_capacity: bool


def required_ro_beds(
    ro_days: float, beta: float, params: DhParameters = DhParameters()
) -> float:
    """Ordinary beds needed to deliver ``ro_days`` patient-days a year."""
    if beta <= 0:
        raise DomainError(f"utilization rate must be positive, got {beta}")
    if ro_days < 0:
        raise DomainError(f"ordinary days must be nonnegative, got {ro_days}")
    return ro_days / (params.ro_service_days * beta)


def required_dh_beds(
    dh_accesses: float, beta: float, params: DhParameters = DhParameters()
) -> float:
    """Day-hospital beds needed to deliver ``dh_accesses`` accesses a year."""
    if beta <= 0:
        raise DomainError(f"utilization rate must be positive, got {beta}")
    if dh_accesses < 0:
        raise DomainError(f"accesses must be nonnegative, got {dh_accesses}")
    return dh_accesses / (
        params.daily_turnover
        * params.dh_correction
        * params.dh_service_days
        * beta
    )


def solve_beta(
    demand: DemandAggregate,
    total_beds: float,
    params: DhParameters = DhParameters(),
) -> BetaSolution:
    """Utilization rate at which ``total_beds`` exactly serves ``demand``.

    Inverse of the two requirement functions; a result above 1 is returned
    with the over-capacity flag set, never clamped.
    """
    if total_beds <= 0:
        raise DomainError(f"total beds must be positive, got {total_beds}")
    supply_units = (
        demand.dh_accesses
        / (params.daily_turnover * params.dh_correction * params.dh_service_days)
        + demand.ro_days / params.ro_service_days
    )
    beta = supply_units / total_beds
    return BetaSolution(beta=beta, over_capacity=beta > 1.0)


def observed_rates(
    admissions: float,
    total_days: float,
    beds: float,
    residents: float,
    params: DhParameters = DhParameters(),
) -> RateSet:
    """Summary rates of an observed network state.

    Mean stay on zero admissions is defined as 0, not NaN.
    """
    if residents <= 0:
        raise DomainError(f"residents must be positive, got {residents}")
    if beds <= 0:
        raise DomainError(f"beds must be positive, got {beds}")
    return RateSet(
        hospitalization_rate=admissions / residents,
        utilization_rate=total_days / (params.ro_service_days * beds),
        bed_density=beds / residents,
        mean_stay_days=total_days / admissions if admissions > 0 else 0.0,
    )

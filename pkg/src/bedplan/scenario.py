"""Demand stratification and reallocation scenarios.

Historical acute demand is bucketed by appropriateness class (the two
inappropriateness lists vs everything else) and delivery form (day
hospital, 1-day ordinary, multi-day ordinary). A scenario applies up to
seven reallocation steps, each moving a fraction of one bucket toward
cheaper destinations, then balances the resulting demand against a bed
target: either utilization is fixed and beds are solved, or an acute bed
density is fixed and utilization is solved.

Steps act on pairwise disjoint buckets, so applying them in any order
yields the same outcome; the engine keeps bookkeeping per step and
aggregates in canonical step order so the equality is exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

from . import constraints as constraints_mod
from . import finance as finance_mod
from .equilibrium import (
    BedRequirement,
    DemandAggregate,
    required_dh_beds,
    required_ro_beds,
    solve_beta,
)
from .model import (
    BedEntry,
    BedInventory,
    Care,
    DhParameters,
    DrgTable,
    LeaClassifier,
    Population,
    Provenance,
    RateSet,
    Regime,
    Sector,
)


class ScenarioSpecError(ValueError):
    """A scenario definition is structurally invalid."""


class ScenarioInfeasibleError(ValueError):
    """A scenario's bed or utilization target cannot be met."""


class UnavailableDataError(ValueError):
    """A step sources a bucket the dataset does not report."""


FRACTION_SUM_TOLERANCE = 1e-12


class DrgClass(enum.Enum):
    LEA45 = "lea45"
    LEA45PLUS = "lea45plus"
    OTHER = "other"


class Bucket(enum.Enum):
    DH = "dh"
    RO_ONE_DAY = "ro1d-"
    RO_MULTI_DAY = "ro1d+"


class SourceBucket(enum.Enum):
    """What a step rule draws from: an admission bucket, or the pool of
    multi-day stay days beyond the per-DRG threshold (a day pool, moved
    without its admissions)."""

    DH = "dh"
    RO_ONE_DAY = "ro1d-"
    RO_MULTI_DAY = "ro1d+"
    ABOVE_THRESHOLD_DAYS = "at"

    @property
    def moves_days(self) -> bool:
        return self is SourceBucket.ABOVE_THRESHOLD_DAYS


_ADMISSION_DESTS = ("to_dh", "to_ambul", "to_amau", "stay")
_DAY_DESTS = ("to_rsa", "to_rehab", "stay")


@dataclass(frozen=True)
class StepRule:
    """One reallocation step: destination fractions for a source bucket.

    Fractions must sum to 1. Admission buckets reallocate among day
    hospital, ambulatory substitution, outright avoidance and staying put;
    the above-threshold day pool reallocates among residential care,
    rehabilitation and staying put.
    """

    step: int
    drg_class: DrgClass
    source: SourceBucket
    to_dh: float = 0.0
    to_ambul: float = 0.0
    to_rsa: float = 0.0
    to_amau: float = 0.0
    to_rehab: float = 0.0
    stay: float = 0.0

    def __post_init__(self) -> None:
        if not 1 <= self.step <= 7:
            raise ScenarioSpecError(f"step id must be 1-7, got {self.step}")
        fractions = {
            "to_dh": self.to_dh,
            "to_ambul": self.to_ambul,
            "to_rsa": self.to_rsa,
            "to_amau": self.to_amau,
            "to_rehab": self.to_rehab,
            "stay": self.stay,
        }
        for name, value in fractions.items():
            if not 0.0 <= value <= 1.0:
                raise ScenarioSpecError(
                    f"step {self.step}: fraction {name}={value} outside [0, 1]"
                )
        total = sum(fractions.values())
        if abs(total - 1.0) > FRACTION_SUM_TOLERANCE:
            raise ScenarioSpecError(
                f"step {self.step}: fractions sum to {total!r}, expected 1"
            )
        if self.source.moves_days:
            illegal = [n for n in ("to_dh", "to_ambul", "to_amau") if fractions[n] > 0]
        else:
            illegal = [n for n in ("to_rsa", "to_rehab") if fractions[n] > 0]
            if self.source is SourceBucket.DH and self.to_dh > 0:
                raise ScenarioSpecError(
                    f"step {self.step}: use 'stay' for admissions remaining "
                    "in day hospital"
                )
        if illegal:
            raise ScenarioSpecError(
                f"step {self.step}: destinations {illegal} not allowed for "
                f"source {self.source.value}"
            )

    @property
    def moved_fraction(self) -> float:
        return 1.0 - self.stay


def base_step_rules() -> dict[int, StepRule]:
    """The seven-step base reallocation, with its published fractions."""
    return {
        1: StepRule(1, DrgClass.LEA45, SourceBucket.DH, stay=0.45, to_ambul=0.55),
        2: StepRule(2, DrgClass.LEA45, SourceBucket.RO_ONE_DAY, to_dh=0.50, to_ambul=0.50),
        3: StepRule(3, DrgClass.LEA45, SourceBucket.RO_MULTI_DAY, to_dh=0.20, to_ambul=0.20, stay=0.60),
        4: StepRule(4, DrgClass.LEA45PLUS, SourceBucket.RO_ONE_DAY, to_dh=0.50, to_ambul=0.50),
        5: StepRule(5, DrgClass.LEA45PLUS, SourceBucket.RO_MULTI_DAY, to_dh=0.20, to_ambul=0.20, stay=0.60),
        6: StepRule(6, DrgClass.OTHER, SourceBucket.RO_ONE_DAY, to_dh=0.40, to_amau=0.10, stay=0.50),
        7: StepRule(7, DrgClass.OTHER, SourceBucket.ABOVE_THRESHOLD_DAYS, to_rsa=0.20, stay=0.80),
    }


BASE_STEPS = (1, 2, 3, 4, 5, 6, 7)


@dataclass(frozen=True)
class BucketCell:
    admissions: float = 0.0
    days: float = 0.0


@dataclass(frozen=True)
class StratifiedDemand:
    """Demand split by appropriateness class and delivery bucket.

    ``at_days`` is each class's pool of above-threshold stay days (a subset
    of its multi-day bucket days). When no day-hospital table was supplied
    the inappropriateness-list-extension DH bucket is flagged unavailable:
    steps may not draw from it.
    """

    cells: Mapping[tuple[DrgClass, Bucket], BucketCell]
    at_days: Mapping[DrgClass, float]
    lea45plus_dh_available: bool = True

    def cell(self, drg_class: DrgClass, bucket: Bucket) -> BucketCell:
        return self.cells.get((drg_class, bucket), BucketCell())

    def at_pool(self, drg_class: DrgClass) -> float:
        return self.at_days.get(drg_class, 0.0)


@dataclass(frozen=True)
class StepDeltas:
    """What one applied step moved out of its source bucket.

    Admissions reallocated to day hospital are carried here rather than
    written into the DH cell: they are results of the pipeline, not inputs
    to other steps, which keeps every step a function of the original
    stratification and makes step order irrelevant.
    """

    moved_to_dh: float = 0.0
    ambul_services: float = 0.0
    avoided_admissions: float = 0.0
    rsa_days: float = 0.0
    rehab_days: float = 0.0
    removed_ro_days: float = 0.0


def classify(code: str, classifier: LeaClassifier) -> DrgClass:
    if code in classifier.lea45:
        return DrgClass.LEA45
    if code in classifier.lea45plus:
        return DrgClass.LEA45PLUS
    return DrgClass.OTHER


def stratify(
    table: DrgTable,
    dh_table: Optional[DrgTable],
    classifier: LeaClassifier,
) -> StratifiedDemand:
    """Bucket acute demand by class and delivery form.

    Each ordinary DRG row splits into its 1-day admissions (one day each)
    and the multi-day remainder; above-threshold days are pooled per class.
    Day-hospital rows, when a DH table exists, land in the DH bucket whole.
    """
    cells: dict[tuple[DrgClass, Bucket], BucketCell] = {
        (c, b): BucketCell() for c in DrgClass for b in Bucket
    }
    at_days: dict[DrgClass, float] = {c: 0.0 for c in DrgClass}

    def add(key: tuple[DrgClass, Bucket], admissions: float, days: float) -> None:
        cell = cells[key]
        cells[key] = BucketCell(cell.admissions + admissions, cell.days + days)

    for record in table.records:
        cls = classify(record.code, classifier)
        one_day = record.one_day_admissions
        add((cls, Bucket.RO_ONE_DAY), one_day, float(one_day))
        add(
            (cls, Bucket.RO_MULTI_DAY),
            record.admissions - one_day,
            float(record.total_days - one_day),
        )
        at_days[cls] += record.days_above_threshold

    if dh_table is not None:
        for record in dh_table.records:
            cls = classify(record.code, classifier)
            add((cls, Bucket.DH), record.admissions, float(record.total_days))

    return StratifiedDemand(
        cells=cells,
        at_days=at_days,
        lea45plus_dh_available=dh_table is not None,
    )


_SOURCE_TO_BUCKET = {
    SourceBucket.DH: Bucket.DH,
    SourceBucket.RO_ONE_DAY: Bucket.RO_ONE_DAY,
    SourceBucket.RO_MULTI_DAY: Bucket.RO_MULTI_DAY,
}


def apply_step(
    demand: StratifiedDemand,
    rule: StepRule,
    params: DhParameters = DhParameters(),
) -> tuple[StratifiedDemand, StepDeltas]:
    """Apply one reallocation rule, returning the shrunk stratification and
    the moved volumes.

    Admission moves take days with them at the source bucket's mean stay
    (so the departing days are the moved fraction of the bucket's days);
    the above-threshold rule moves days only, leaving admissions in place.
    Moved volumes appear only in the deltas, never in another cell.
    """
    cells = dict(demand.cells)
    at_days = dict(demand.at_days)

    if rule.source.moves_days:
        pool = at_days.get(rule.drg_class, 0.0)
        moved_rsa = pool * rule.to_rsa
        moved_rehab = pool * rule.to_rehab
        moved = moved_rsa + moved_rehab
        key = (rule.drg_class, Bucket.RO_MULTI_DAY)
        cell = cells.get(key, BucketCell())
        cells[key] = BucketCell(cell.admissions, cell.days - moved)
        at_days[rule.drg_class] = pool - moved
        deltas = StepDeltas(rsa_days=moved_rsa, rehab_days=moved_rehab)
        return (
            StratifiedDemand(cells, at_days, demand.lea45plus_dh_available),
            deltas,
        )

    if (
        rule.drg_class is DrgClass.LEA45PLUS
        and rule.source is SourceBucket.DH
        and not demand.lea45plus_dh_available
        and rule.moved_fraction > 0
    ):
        raise UnavailableDataError(
            "the dataset reports no day-hospital admissions for the "
            "inappropriateness-list extension; step "
            f"{rule.step} cannot reallocate from that bucket"
        )

    bucket = _SOURCE_TO_BUCKET[rule.source]
    key = (rule.drg_class, bucket)
    cell = cells.get(key, BucketCell())

    moved_dh = cell.admissions * rule.to_dh
    moved_ambul = cell.admissions * rule.to_ambul
    moved_amau = cell.admissions * rule.to_amau
    # Departing days are the movers' share of the bucket (mean stay times
    # moved count); a bucket with no admissions moves nothing, whatever
    # days it carries.
    staying_days = cell.days * rule.stay if cell.admissions > 0 else cell.days

    cells[key] = BucketCell(cell.admissions * rule.stay, staying_days)
    if bucket is Bucket.RO_MULTI_DAY and cell.admissions > 0:
        # The above-threshold pool belongs to the departing days too; shrink
        # it proportionally so it never exceeds the bucket's remaining days.
        at_days[rule.drg_class] = at_days.get(rule.drg_class, 0.0) * rule.stay

    deltas = StepDeltas(
        moved_to_dh=moved_dh,
        ambul_services=moved_ambul,
        avoided_admissions=moved_amau,
        # Day-hospital cell days are accesses-side bookkeeping, not part of
        # the ordinary-day pool.
        removed_ro_days=0.0 if bucket is Bucket.DH else cell.days - staying_days,
    )
    return StratifiedDemand(cells, at_days, demand.lea45plus_dh_available), deltas


def aggregate(
    demand: StratifiedDemand,
    deltas_by_step: Mapping[int, StepDeltas],
    params: DhParameters = DhParameters(),
) -> DemandAggregate:
    """Collapse a stratification plus step bookkeeping into annual volumes.

    Every admission delivered as day hospital, whether it stayed there or
    was reallocated in, generates ``accesses_per_admission`` accesses.
    Sums run in a fixed order so the result is bit-identical however the
    steps were sequenced.
    """
    ro_admissions = 0.0
    ro_days = 0.0
    dh_admissions = 0.0
    for cls in DrgClass:
        for bucket in (Bucket.RO_ONE_DAY, Bucket.RO_MULTI_DAY):
            cell = demand.cell(cls, bucket)
            ro_admissions += cell.admissions
            ro_days += cell.days
        dh_admissions += demand.cell(cls, Bucket.DH).admissions

    ambul = rsa = rehab = avoided = 0.0
    for step in sorted(deltas_by_step):
        d = deltas_by_step[step]
        dh_admissions += d.moved_to_dh
        ambul += d.ambul_services
        rsa += d.rsa_days
        rehab += d.rehab_days
        avoided += d.avoided_admissions

    return DemandAggregate(
        ro_days=ro_days,
        dh_accesses=params.accesses_per_admission * dh_admissions,
        ro_admissions=ro_admissions,
        dh_admissions=dh_admissions,
        ambul_services=ambul,
        rsa_days=rsa,
        rehab_days=rehab,
        avoided_admissions=avoided,
    )


@dataclass(frozen=True)
class ScenarioSpec:
    """A named scenario: which steps run, how their fractions differ from
    the base rules, and the balancing target.

    Exactly one of ``beta`` (fixed utilization, beds solved) and
    ``acute_density`` (fixed acute beds per 1,000 residents, utilization
    solved) must be set. ``rehab_density`` fixes post-restructuring rehab
    and long-term-care beds per 1,000 residents; when absent the current
    stock is kept. ``rsa_share`` re-splits the day-pool step's transferred
    days between residential care and rehabilitation.
    """

    name: str
    steps: tuple[int, ...] = BASE_STEPS
    overrides: tuple[StepRule, ...] = ()
    beta: Optional[float] = None
    acute_density: Optional[float] = None
    rehab_density: Optional[float] = None
    rsa_share: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(
            self,
            "overrides",
            tuple(sorted(self.overrides, key=lambda r: r.step)),
        )
        if not self.name:
            raise ScenarioSpecError("scenario name must be nonempty")
        if len(set(self.steps)) != len(self.steps):
            raise ScenarioSpecError(f"duplicate step ids in {self.steps}")
        override_ids = [r.step for r in self.overrides]
        if len(set(override_ids)) != len(override_ids):
            raise ScenarioSpecError("two overrides target the same step")
        for step in self.steps:
            if not 1 <= step <= 7:
                raise ScenarioSpecError(f"step id must be 1-7, got {step}")
        if (self.beta is None) == (self.acute_density is None):
            raise ScenarioSpecError(
                "exactly one of beta and acute_density must be set"
            )
        if self.rsa_share is not None and not 0.0 <= self.rsa_share <= 1.0:
            raise ScenarioSpecError(
                f"rsa_share must be in [0, 1], got {self.rsa_share}"
            )
        self.effective_rules()  # fail fast on conflicting overrides

    @property
    def solve_mode(self) -> str:
        return "beta" if self.beta is not None else "density"

    def effective_rules(self) -> tuple[StepRule, ...]:
        """Included rules in application order, overrides and the RSA/rehab
        re-split applied, with disjoint-source validation."""
        rules = base_step_rules()
        for override in self.overrides:
            rules[override.step] = override
        selected = [rules[step] for step in self.steps]

        if self.rsa_share is not None:
            for i, rule in enumerate(selected):
                if rule.source.moves_days:
                    transfer = rule.to_rsa + rule.to_rehab
                    selected[i] = replace(
                        rule,
                        to_rsa=transfer * self.rsa_share,
                        to_rehab=transfer * (1.0 - self.rsa_share),
                    )

        seen: set[tuple[DrgClass, SourceBucket]] = set()
        for rule in selected:
            source = (rule.drg_class, rule.source)
            if source in seen:
                raise ScenarioSpecError(
                    f"two steps draw from the same bucket {source}"
                )
            seen.add(source)
        for rule in selected:
            if (
                rule.source is SourceBucket.ABOVE_THRESHOLD_DAYS
                and (rule.drg_class, SourceBucket.RO_MULTI_DAY) in seen
            ):
                raise ScenarioSpecError(
                    "a scenario may not reallocate both the multi-day "
                    f"admissions and the above-threshold days of {rule.drg_class.value}"
                )
        return tuple(selected)


@dataclass(frozen=True)
class TrajectoryPoint:
    """System rates after the steps up to and including ``step`` (0 is the
    unmodified network); computed in canonical step order."""

    step: int
    hospitalization_rate: float
    utilization_rate: float


@dataclass(frozen=True)
class BedDelta:
    """Current minus planned beds; positive numbers are cuts."""

    acute: float
    rehab_ltc: float

    @property
    def total(self) -> float:
        return self.acute + self.rehab_ltc


@dataclass(frozen=True)
class ScenarioOutcome:
    name: str
    demand: DemandAggregate
    requirement: BedRequirement
    acute_beds_after: float
    rehab_ltc_beds_after: float
    rates: RateSet
    bed_delta: BedDelta
    compliance: constraints_mod.ComplianceReport
    pnl: float
    residents: int
    trajectory: tuple[TrajectoryPoint, ...] = ()

    @property
    def total_beds_after(self) -> float:
        return self.acute_beds_after + self.rehab_ltc_beds_after

    @property
    def acute_bed_share(self) -> float:
        total = self.total_beds_after
        return self.acute_beds_after / total if total > 0 else 0.0

    @property
    def acute_density_per_1000(self) -> float:
        return self.acute_beds_after / self.residents * 1000.0

    @property
    def rehab_density_per_1000(self) -> float:
        return self.rehab_ltc_beds_after / self.residents * 1000.0

    @property
    def total_density_per_1000(self) -> float:
        return self.total_beds_after / self.residents * 1000.0


@dataclass(frozen=True)
class DemandDataset:
    """The demand side of a planning dataset."""

    ro_table: DrgTable
    dh_table: Optional[DrgTable]
    classifier: LeaClassifier


def _solve_target(
    spec: ScenarioSpec,
    agg: DemandAggregate,
    residents: int,
    params: DhParameters,
) -> tuple[float, BedRequirement, float]:
    """Return (beta, per-regime requirement, planned acute beds)."""
    if spec.beta is not None:
        beta = spec.beta
        if beta <= 0:
            raise ScenarioInfeasibleError(
                f"scenario {spec.name!r}: utilization target {beta} not positive"
            )
        req = BedRequirement(
            ro_beds=required_ro_beds(agg.ro_days, beta, params),
            dh_beds=required_dh_beds(agg.dh_accesses, beta, params),
        )
        return beta, req, req.total

    target_beds = spec.acute_density / 1000.0 * residents
    if target_beds <= 0:
        raise ScenarioInfeasibleError(
            f"scenario {spec.name!r}: acute bed target {target_beds} not positive"
        )
    beta = solve_beta(agg, target_beds, params).beta
    if beta > 0:
        req = BedRequirement(
            ro_beds=required_ro_beds(agg.ro_days, beta, params),
            dh_beds=required_dh_beds(agg.dh_accesses, beta, params),
        )
    else:
        req = BedRequirement(ro_beds=0.0, dh_beds=0.0)
    return beta, req, target_beds


def _post_inventory(
    requirement: BedRequirement,
    rehab_after: float,
    current: BedInventory,
    rehab_from_target: bool,
) -> BedInventory:
    """Planned network as an inventory for the statutory checks.

    The checks are sector-blind; planned acute entries are booked under one
    sector and flagged estimated since the public/private split of a planned
    network is not modeled.
    """
    entries: dict[tuple[Sector, Regime, Care], BedEntry] = {
        (Sector.PUBLIC, Regime.RO, Care.ACUTE): BedEntry(
            math.ceil(requirement.ro_beds), Provenance.ESTIMATED
        ),
        (Sector.PUBLIC, Regime.DH, Care.ACUTE): BedEntry(
            math.ceil(requirement.dh_beds), Provenance.ESTIMATED
        ),
    }
    if rehab_from_target:
        entries[(Sector.PUBLIC, Regime.RO, Care.REHAB)] = BedEntry(
            math.ceil(rehab_after), Provenance.ESTIMATED
        )
    else:
        for key, entry in current.entries.items():
            if key[2] in (Care.REHAB, Care.LTC):
                entries[key] = entry
    return BedInventory(entries=entries)


def run_scenario(
    dataset: DemandDataset,
    spec: ScenarioSpec,
    current_beds: BedInventory,
    population: Population,
    thresholds: constraints_mod.ConstraintThresholds = constraints_mod.DEFAULT_THRESHOLDS,
    costs: Optional[finance_mod.CostModel] = None,
    params: DhParameters = DhParameters(),
    non_acute: Optional[constraints_mod.AdmissionsByRegime] = None,
) -> ScenarioOutcome:
    """Run one scenario end to end: stratify, reallocate, balance supply,
    check the statutory constraints and price the bed change."""
    costs = costs or finance_mod.CostModel()
    rules = spec.effective_rules()

    demand = stratify(dataset.ro_table, dataset.dh_table, dataset.classifier)
    deltas_by_step: dict[int, StepDeltas] = {}
    for rule in rules:
        demand, deltas = apply_step(demand, rule, params)
        deltas_by_step[rule.step] = deltas

    agg = aggregate(demand, deltas_by_step, params)
    beta, requirement, acute_after = _solve_target(
        spec, agg, population.residents, params
    )

    if spec.rehab_density is not None:
        rehab_after = spec.rehab_density / 1000.0 * population.residents
    else:
        rehab_after = float(current_beds.rehab_ltc_beds)

    rates = RateSet(
        hospitalization_rate=agg.admissions / population.residents,
        utilization_rate=beta,
        bed_density=(acute_after + rehab_after) / population.residents,
        mean_stay_days=agg.ro_days / agg.ro_admissions if agg.ro_admissions > 0 else 0.0,
    )

    bed_delta = BedDelta(
        acute=current_beds.acute_beds - acute_after,
        rehab_ltc=current_beds.rehab_ltc_beds - rehab_after,
    )

    non_acute = non_acute or constraints_mod.AdmissionsByRegime()
    admissions_after = constraints_mod.AdmissionsByRegime(
        acute_ro=agg.ro_admissions,
        acute_dh=agg.dh_admissions,
        rehab_ro=non_acute.rehab_ro,
        rehab_dh=non_acute.rehab_dh,
        ltc=non_acute.ltc,
    )
    compliance = constraints_mod.evaluate(
        _post_inventory(
            requirement, rehab_after, current_beds, spec.rehab_density is not None
        ),
        admissions_after,
        population,
        thresholds,
    )

    pnl = finance_mod.bed_delta_pnl(
        current_beds,
        finance_mod.PlannedBeds(acute=acute_after, rehab_ltc=rehab_after),
        agg,
        costs,
    )

    trajectory = _trajectory(dataset, spec, rules, population, params)

    return ScenarioOutcome(
        name=spec.name,
        demand=agg,
        requirement=requirement,
        acute_beds_after=acute_after,
        rehab_ltc_beds_after=rehab_after,
        rates=rates,
        bed_delta=bed_delta,
        compliance=compliance,
        pnl=pnl,
        residents=population.residents,
        trajectory=trajectory,
    )


def _trajectory(
    dataset: DemandDataset,
    spec: ScenarioSpec,
    rules: Sequence[StepRule],
    population: Population,
    params: DhParameters,
) -> tuple[TrajectoryPoint, ...]:
    """Cumulative (rate, utilization) after each step in canonical order."""
    ordered = sorted(rules, key=lambda r: r.step)
    points = []
    demand = stratify(dataset.ro_table, dataset.dh_table, dataset.classifier)
    deltas_by_step: dict[int, StepDeltas] = {}

    def point(step: int) -> TrajectoryPoint:
        agg = aggregate(demand, deltas_by_step, params)
        beta, _, _ = _solve_target(spec, agg, population.residents, params)
        return TrajectoryPoint(
            step=step,
            hospitalization_rate=agg.admissions / population.residents,
            utilization_rate=beta,
        )

    points.append(point(0))
    for rule in ordered:
        demand, deltas = apply_step(demand, rule, params)
        deltas_by_step[rule.step] = deltas
        points.append(point(rule.step))
    return tuple(points)


RANKING_METRICS = ("alpha", "beta", "pnl", "acute_share")


def _metric_value(outcome: ScenarioOutcome, metric: str) -> float:
    if metric == "alpha":
        return outcome.rates.hospitalization_rate
    if metric == "beta":
        return outcome.rates.utilization_rate
    if metric == "pnl":
        return outcome.pnl
    if metric == "acute_share":
        return outcome.acute_bed_share
    raise ScenarioSpecError(f"unknown ranking metric {metric!r}")


@dataclass(frozen=True)
class SweepResult:
    """Outcomes of a scenario batch plus an independent ranking per metric.

    Rankings list scenario names best first: ascending values except for
    savings, which rank descending; ties break on name ascending. Failed
    scenarios are excluded from rankings and listed with their error.
    """

    outcomes: tuple[ScenarioOutcome, ...]
    rankings: Mapping[str, tuple[str, ...]]
    failures: tuple[tuple[str, str], ...] = ()


def rank_outcomes(
    outcomes: Sequence[ScenarioOutcome], metric: str
) -> tuple[str, ...]:
    descending = metric == "pnl"
    ordered = sorted(
        outcomes,
        key=lambda o: (
            -_metric_value(o, metric) if descending else _metric_value(o, metric),
            o.name,
        ),
    )
    return tuple(o.name for o in ordered)


def sweep(
    dataset: DemandDataset,
    specs: Sequence[ScenarioSpec],
    current_beds: BedInventory,
    population: Population,
    thresholds: constraints_mod.ConstraintThresholds = constraints_mod.DEFAULT_THRESHOLDS,
    costs: Optional[finance_mod.CostModel] = None,
    params: DhParameters = DhParameters(),
    non_acute: Optional[constraints_mod.AdmissionsByRegime] = None,
) -> SweepResult:
    """Evaluate a batch of scenarios and rank the successful ones."""
    if not specs:
        raise ScenarioSpecError("sweep needs at least one scenario")
    outcomes: list[ScenarioOutcome] = []
    failures: list[tuple[str, str]] = []
    for spec in specs:
        try:
            outcomes.append(
                run_scenario(
                    dataset,
                    spec,
                    current_beds,
                    population,
                    thresholds,
                    costs,
                    params,
                    non_acute,
                )
            )
        except (ScenarioInfeasibleError, ScenarioSpecError, UnavailableDataError) as exc:
            failures.append((spec.name, str(exc)))
    rankings = {m: rank_outcomes(outcomes, m) for m in RANKING_METRICS}
    return SweepResult(
        outcomes=tuple(outcomes),
        rankings=rankings,
        failures=tuple(failures),
    )

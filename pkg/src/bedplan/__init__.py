"""Hospital-network capacity planning toolkit.

Stratifies historical hospitalization demand by appropriateness class,
applies parameterized reallocation scenarios, solves bed/utilization
equilibria, checks the statutory constraints, and prices the resulting
bed changes.
"""

from .analysis import (
    DhBedEstimate,
    DivisionWorkload,
    MobilityBalance,
    SpecialtyGrouping,
    estimate_dh_bed_stock,
    mobility_net,
    performance_index,
    specialty_bed_comparison,
)
from .constraints import (
    DEFAULT_THRESHOLDS,
    AdmissionsByRegime,
    ComplianceReport,
    ConstraintThresholds,
    evaluate,
)
from .equilibrium import (
    BedRequirement,
    DemandAggregate,
    observed_rates,
    required_dh_beds,
    required_ro_beds,
    solve_beta,
)
from .finance import CostModel, PlannedBeds, bed_delta_pnl, staffing_estimate
from .ingest import (
    IngestError,
    PrivateBedAssumption,
    parse_bed_inventory,
    parse_drg_table,
    parse_lea_lists,
    parse_scenario,
    serialize_scenario,
)
from .model import (
    BedEntry,
    BedInventory,
    Care,
    DhParameters,
    DomainError,
    DrgKind,
    DrgRecord,
    DrgTable,
    LeaClassifier,
    Population,
    Provenance,
    RateSet,
    Regime,
    Sector,
    TableRegime,
    Violation,
    validate_dataset,
)
from .scenario import (
    BASE_STEPS,
    DemandDataset,
    DrgClass,
    ScenarioInfeasibleError,
    ScenarioOutcome,
    ScenarioSpec,
    ScenarioSpecError,
    SourceBucket,
    StepRule,
    StratifiedDemand,
    UnavailableDataError,
    apply_step,
    base_step_rules,
    run_scenario,
    stratify,
    sweep,
)

__version__ = "0.1.0"

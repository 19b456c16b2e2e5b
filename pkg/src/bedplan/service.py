"""Stateless planning service over immutable dataset snapshots.

A snapshot is created by uploading the interchange files in a JSON body;
its id is a hash of the upload, so identical datasets share an id and an
optional storage directory gives restart recovery without a database.
Evaluation endpoints mirror the engine field-for-field and serialize
numbers in full precision; formatting is the client's job.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import ingest, report
from .constraints import (
    DEFAULT_THRESHOLDS,
    AdmissionsByRegime,
    ConstraintThresholds,
    evaluate as evaluate_constraints,
)
from .finance import DEFAULT_COSTS, CostModel
from .model import (
    BedInventory,
    DomainError,
    Population,
    TableRegime,
    validate_dataset,
)
from .scenario import (
    DemandDataset,
    ScenarioInfeasibleError,
    ScenarioSpec,
    ScenarioSpecError,
    SourceBucket,
    StepRule,
    UnavailableDataError,
    base_step_rules,
    run_scenario,
    sweep,
)

MAX_UPLOAD_BYTES = 50 * 1024 * 1024


class PopulationBody(BaseModel):
    residents: int
    inflow_admissions: int = 0
    outflow_admissions: int = 0


class NonAcuteBody(BaseModel):
    rehab_ro_admissions: Optional[int] = None
    rehab_dh_admissions: Optional[int] = None
    ltc_admissions: Optional[int] = None


class ThresholdsBody(BaseModel):
    max_total_density: float = DEFAULT_THRESHOLDS.max_total_density
    max_acute_density: float = DEFAULT_THRESHOLDS.max_acute_density
    max_rehab_ltc_density: float = DEFAULT_THRESHOLDS.max_rehab_ltc_density
    max_hospitalization_rate: float = DEFAULT_THRESHOLDS.max_hospitalization_rate
    min_dh_admission_share: float = DEFAULT_THRESHOLDS.min_dh_admission_share
    min_dh_bed_share: float = DEFAULT_THRESHOLDS.min_dh_bed_share


class CostsBody(BaseModel):
    acute_bed_pa: float = DEFAULT_COSTS.acute_bed_pa
    rehab_ltc_bed_pa: float = DEFAULT_COSTS.rehab_ltc_bed_pa
    rsa_bed_pa: float = DEFAULT_COSTS.rsa_bed_pa
    ambulatory_service: float = DEFAULT_COSTS.ambulatory_service
    rsa_days_per_bed: float = DEFAULT_COSTS.rsa_days_per_bed


class DatasetUpload(BaseModel):
    drg_ro: str
    drg_dh: Optional[str] = None
    beds: str
    lea45: str = ""
    lea45plus: str = ""
    assumption: Literal["A", "B"]
    population: PopulationBody
    non_acute: Optional[NonAcuteBody] = None
    thresholds: Optional[ThresholdsBody] = None
    costs: Optional[CostsBody] = None


class StepOverrideBody(BaseModel):
    step: int
    source: Optional[str] = None
    to_dh: float = 0.0
    to_ambul: float = 0.0
    to_rsa: float = 0.0
    to_amau: float = 0.0
    to_rehab: float = 0.0
    stay: float = 0.0


class ScenarioSpecBody(BaseModel):
    name: str
    steps: list[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5, 6, 7])
    overrides: list[StepOverrideBody] = Field(default_factory=list)
    beta: Optional[float] = None
    acute_density: Optional[float] = None
    rehab_density: Optional[float] = None
    rsa_share: Optional[float] = None

    def to_spec(self) -> ScenarioSpec:
        base = base_step_rules()
        rules = []
        for o in self.overrides:
            if o.source is not None:
                tokens = o.source.split()
                if len(tokens) != 2 or tokens[1] not in {s.value for s in SourceBucket}:
                    raise ScenarioSpecError(f"bad source {o.source!r}")
                drg_class = ingest._CLASS_NAMES.get(tokens[0])
                if drg_class is None:
                    raise ScenarioSpecError(f"bad source {o.source!r}")
                source = ingest._SOURCE_NAMES[tokens[1]]
            else:
                if not 1 <= o.step <= 7:
                    raise ScenarioSpecError(f"step id must be 1-7, got {o.step}")
                drg_class = base[o.step].drg_class
                source = base[o.step].source
            rules.append(
                StepRule(
                    step=o.step,
                    drg_class=drg_class,
                    source=source,
                    to_dh=o.to_dh,
                    to_ambul=o.to_ambul,
                    to_rsa=o.to_rsa,
                    to_amau=o.to_amau,
                    to_rehab=o.to_rehab,
                    stay=o.stay,
                )
            )
        return ScenarioSpec(
            name=self.name,
            steps=tuple(self.steps),
            overrides=tuple(rules),
            beta=self.beta,
            acute_density=self.acute_density,
            rehab_density=self.rehab_density,
            rsa_share=self.rsa_share,
        )


class SweepBody(BaseModel):
    scenarios: list[ScenarioSpecBody]


@dataclass(frozen=True)
class SessionSnapshot:
    """An immutable loaded dataset; every derived result cites its id."""

    snapshot_id: str
    dataset: DemandDataset
    beds: BedInventory
    population: Population
    non_acute: AdmissionsByRegime
    thresholds: ConstraintThresholds
    costs: CostModel
    loaded_at: float


def _build_snapshot(upload: DatasetUpload, snapshot_id: str) -> tuple[SessionSnapshot, list]:
    ro_table = ingest.parse_drg_table(upload.drg_ro, TableRegime.ACUTE_RO)
    dh_table = (
        ingest.parse_drg_table(upload.drg_dh, TableRegime.ACUTE_DH)
        if upload.drg_dh is not None
        else None
    )
    beds = ingest.parse_bed_inventory(
        upload.beds, ingest.PrivateBedAssumption(upload.assumption)
    )
    classifier = ingest.parse_lea_lists(upload.lea45, upload.lea45plus)
    population = Population(
        residents=upload.population.residents,
        inflow_admissions=upload.population.inflow_admissions,
        outflow_admissions=upload.population.outflow_admissions,
    )
    non_acute_body = upload.non_acute or NonAcuteBody()
    non_acute = AdmissionsByRegime(
        rehab_ro=non_acute_body.rehab_ro_admissions,
        rehab_dh=non_acute_body.rehab_dh_admissions,
        ltc=non_acute_body.ltc_admissions,
    )
    thresholds_body = upload.thresholds or ThresholdsBody()
    thresholds = ConstraintThresholds(**thresholds_body.model_dump())
    costs_body = upload.costs or CostsBody()
    costs = CostModel(**costs_body.model_dump())

    violations = validate_dataset(ro_table, beds, population)
    if dh_table is not None:
        violations.extend(validate_dataset(dh_table, BedInventory(), population))

    snapshot = SessionSnapshot(
        snapshot_id=snapshot_id,
        dataset=DemandDataset(ro_table=ro_table, dh_table=dh_table, classifier=classifier),
        beds=beds,
        population=population,
        non_acute=non_acute,
        thresholds=thresholds,
        costs=costs,
        loaded_at=time.time(),
    )
    return snapshot, violations


def create_app(storage_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="bedplan planner service")
    snapshots: dict[str, SessionSnapshot] = {}

    @app.middleware("http")
    async def reject_oversized(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and length.isdigit() and int(length) > MAX_UPLOAD_BYTES:
            return JSONResponse(
                status_code=413, content={"detail": "upload exceeds 50 MB"}
            )
        return await call_next(request)

    def get_snapshot(snapshot_id: str) -> SessionSnapshot:
        snapshot = snapshots.get(snapshot_id)
        if snapshot is None and storage_dir is not None:
            path = storage_dir / f"{snapshot_id}.json"
            if path.exists():
                upload = DatasetUpload.model_validate_json(
                    path.read_text(encoding="utf-8")
                )
                snapshot, _ = _build_snapshot(upload, snapshot_id)
                snapshots[snapshot_id] = snapshot
        if snapshot is None:
            raise HTTPException(status_code=404, detail="unknown snapshot id")
        return snapshot

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/datasets")
    def load_dataset(upload: DatasetUpload) -> dict:
        payload = upload.model_dump_json()
        snapshot_id = hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
        try:
            snapshot, violations = _build_snapshot(upload, snapshot_id)
        except (ingest.IngestError, DomainError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if violations:
            raise HTTPException(
                status_code=400,
                detail={
                    "violations": [
                        {"locator": v.locator, "message": v.message}
                        for v in violations
                    ]
                },
            )
        snapshots[snapshot_id] = snapshot
        if storage_dir is not None:
            storage_dir.mkdir(parents=True, exist_ok=True)
            (storage_dir / f"{snapshot_id}.json").write_text(
                payload, encoding="utf-8"
            )
        return {"snapshot_id": snapshot_id, "validation": {"violations": []}}

    @app.post("/datasets/{snapshot_id}/evaluate")
    def evaluate(snapshot_id: str, body: ScenarioSpecBody) -> dict:
        snapshot = get_snapshot(snapshot_id)
        try:
            spec = body.to_spec()
            outcome = run_scenario(
                snapshot.dataset,
                spec,
                snapshot.beds,
                snapshot.population,
                snapshot.thresholds,
                snapshot.costs,
                non_acute=snapshot.non_acute,
            )
        except (ScenarioSpecError, ScenarioInfeasibleError, UnavailableDataError) as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        result = report.outcome_to_dict(outcome)
        result["snapshot_id"] = snapshot_id
        return result

    @app.post("/datasets/{snapshot_id}/sweep")
    def run_sweep(snapshot_id: str, body: SweepBody) -> dict:
        snapshot = get_snapshot(snapshot_id)
        if not body.scenarios:
            raise HTTPException(status_code=422, detail="no scenarios given")
        try:
            specs = [s.to_spec() for s in body.scenarios]
        except ScenarioSpecError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        result = sweep(
            snapshot.dataset,
            specs,
            snapshot.beds,
            snapshot.population,
            snapshot.thresholds,
            snapshot.costs,
            non_acute=snapshot.non_acute,
        )
        return {
            "snapshot_id": snapshot_id,
            "outcomes": [report.outcome_to_dict(o) for o in result.outcomes],
            "rankings": {m: list(names) for m, names in sorted(result.rankings.items())},
            "failures": [
                {"scenario": name, "error": message}
                for name, message in result.failures
            ],
        }

    @app.get("/datasets/{snapshot_id}/compliance")
    def compliance(snapshot_id: str) -> dict:
        snapshot = get_snapshot(snapshot_id)
        dh_table = snapshot.dataset.dh_table
        admissions = AdmissionsByRegime(
            acute_ro=float(snapshot.dataset.ro_table.total_admissions),
            acute_dh=float(dh_table.total_admissions) if dh_table is not None else None,
            rehab_ro=snapshot.non_acute.rehab_ro,
            rehab_dh=snapshot.non_acute.rehab_dh,
            ltc=snapshot.non_acute.ltc,
        )
        result = evaluate_constraints(
            snapshot.beds, admissions, snapshot.population, snapshot.thresholds
        )
        payload = report.compliance_to_dict(result)
        payload["snapshot_id"] = snapshot_id
        return payload

    return app


app = create_app()

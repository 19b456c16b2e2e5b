"""Command-line driver: ``bedplan validate`` checks a dataset, ``bedplan
run`` evaluates scenario files and writes a report bundle.

Exit codes: 0 success, 1 I/O error, 2 validation or parse failure,
3 scenario-spec error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, ingest, report
from .constraints import (
    DEFAULT_THRESHOLDS,
    AdmissionsByRegime,
    ConstraintThresholds,
)
from .finance import DEFAULT_COSTS, CostModel
from .model import BedInventory, DrgTable, Population, TableRegime, validate_dataset
from .scenario import (
    RANKING_METRICS,
    DemandDataset,
    ScenarioSpec,
    ScenarioSpecError,
    sweep,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_SPEC = 3


@dataclass
class LoadedInputs:
    dataset: DemandDataset
    beds: BedInventory
    population: Population
    non_acute: AdmissionsByRegime
    thresholds: ConstraintThresholds
    costs: CostModel


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--drg-ro", required=True, help="acute ordinary DRG table")
    parser.add_argument("--drg-dh", help="acute day-hospital DRG table")
    parser.add_argument("--beds", required=True, help="bed inventory file")
    parser.add_argument("--lea45", required=True, help="inappropriateness list")
    parser.add_argument("--lea45plus", required=True, help="extension list")
    parser.add_argument(
        "--assumption",
        required=True,
        choices=["A", "B"],
        help="whether reported private bed totals include DH beds (A) or not (B)",
    )
    parser.add_argument("--population", required=True, help="population file")
    parser.add_argument("--thresholds", help="statutory thresholds file")
    parser.add_argument("--costs", help="cost model file")


def _load_inputs(args: argparse.Namespace) -> LoadedInputs:
    ro_table = ingest.parse_drg_table(_read(args.drg_ro), TableRegime.ACUTE_RO)
    dh_table: Optional[DrgTable] = None
    if args.drg_dh:
        dh_table = ingest.parse_drg_table(_read(args.drg_dh), TableRegime.ACUTE_DH)
    beds = ingest.parse_bed_inventory(
        _read(args.beds), ingest.PrivateBedAssumption(args.assumption)
    )
    classifier = ingest.parse_lea_lists(_read(args.lea45), _read(args.lea45plus))
    pop_inputs = ingest.parse_population(_read(args.population))
    thresholds = (
        ingest.parse_thresholds(_read(args.thresholds))
        if args.thresholds
        else DEFAULT_THRESHOLDS
    )
    costs = ingest.parse_costs(_read(args.costs)) if args.costs else DEFAULT_COSTS
    non_acute = AdmissionsByRegime(
        rehab_ro=pop_inputs.rehab_ro_admissions,
        rehab_dh=pop_inputs.rehab_dh_admissions,
        ltc=pop_inputs.ltc_admissions,
    )
    return LoadedInputs(
        dataset=DemandDataset(ro_table=ro_table, dh_table=dh_table, classifier=classifier),
        beds=beds,
        population=pop_inputs.population,
        non_acute=non_acute,
        thresholds=thresholds,
        costs=costs,
    )


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        inputs = _load_inputs(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ingest.IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    violations = validate_dataset(
        inputs.dataset.ro_table, inputs.beds, inputs.population
    )
    if inputs.dataset.dh_table is not None:
        violations.extend(
            validate_dataset(inputs.dataset.dh_table, BedInventory(), inputs.population)
        )
    for violation in violations:
        print(f"{violation.locator}: {violation.message}")
    if violations:
        print(f"{len(violations)} violation(s) found", file=sys.stderr)
        return EXIT_VALIDATION
    print("dataset is valid")
    return EXIT_OK


def _load_specialty_inputs(
    args: argparse.Namespace,
) -> Optional[tuple[analysis.SpecialtyGrouping, dict[str, float], set[str]]]:
    if not args.grouping or not args.group_beds:
        return None
    grouping_map: dict[str, str] = {}
    drg_map: dict[str, str] = {}
    for number, line in enumerate(_read(args.grouping).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 2:
            raise ingest.IngestError("expected 'specialty_or_drg;group'", number)
        key, group = parts
        if key.isdigit():
            drg_map[key] = group
        else:
            grouping_map[key] = group
    grouping = analysis.SpecialtyGrouping(
        specialty_to_group=grouping_map, drg_to_group=drg_map
    )
    beds_by_group: dict[str, float] = {}
    for number, line in enumerate(_read(args.group_beds).splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 2:
            raise ingest.IngestError("expected 'group;beds'", number)
        beds_by_group[parts[0]] = float(parts[1])
    surgical = set(args.surgical_groups.split(",")) if args.surgical_groups else set()
    return grouping, beds_by_group, surgical


def cmd_run(args: argparse.Namespace) -> int:
    try:
        inputs = _load_inputs(args)
        scenario_texts = [(path, _read(path)) for path in args.scenarios]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ingest.IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    violations = validate_dataset(
        inputs.dataset.ro_table, inputs.beds, inputs.population
    )
    if violations:
        for violation in violations:
            print(f"{violation.locator}: {violation.message}", file=sys.stderr)
        return EXIT_VALIDATION

    specs: list[ScenarioSpec] = []
    try:
        for path, text in scenario_texts:
            specs.append(ingest.parse_scenario(text))
    except ScenarioSpecError as exc:
        print(f"error in {path}: {exc}", file=sys.stderr)
        return EXIT_SPEC

    result = sweep(
        inputs.dataset,
        specs,
        inputs.beds,
        inputs.population,
        inputs.thresholds,
        inputs.costs,
        non_acute=inputs.non_acute,
    )

    specialty: dict[str, list[analysis.GroupComparison]] = {}
    try:
        specialty_inputs = _load_specialty_inputs(args)
    except (OSError, ingest.IngestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if specialty_inputs is not None:
        grouping, beds_by_group, surgical = specialty_inputs
        for outcome in result.outcomes:
            spec = next(s for s in specs if s.name == outcome.name)
            days_by_drg = analysis.restructured_ro_days_by_drg(
                inputs.dataset.ro_table,
                inputs.dataset.classifier,
                spec.effective_rules(),
            )
            days_by_group: dict[str, float] = {}
            for code in sorted(days_by_drg):
                group = grouping.group_for_drg(code)
                if group is not None:
                    days_by_group[group] = days_by_group.get(group, 0.0) + days_by_drg[code]
            specialty[outcome.name] = analysis.specialty_bed_comparison(
                days_by_group,
                outcome.rates.utilization_rate,
                beds_by_group,
                surgical_groups=surgical,
            )

    bundle = report.build_bundle(result, specialty=specialty, primary_rank=args.rank)
    written = report.write_bundle(bundle, Path(args.out))

    for name, message in result.failures:
        print(f"scenario {name} failed: {message}", file=sys.stderr)
    print(f"wrote {len(written)} file(s) to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bedplan",
        description="Hospital-network capacity planning toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="check a dataset's invariants")
    _add_dataset_args(validate)
    validate.set_defaults(func=cmd_validate)

    run = sub.add_parser("run", help="evaluate scenarios and write reports")
    _add_dataset_args(run)
    run.add_argument(
        "--scenarios",
        action="append",
        required=True,
        help="scenario file (repeatable)",
    )
    run.add_argument(
        "--rank",
        choices=list(RANKING_METRICS),
        help="order the outcomes table by this ranking",
    )
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--grouping", help="specialty grouping file (optional)")
    run.add_argument(
        "--group-beds", help="current beds per specialty group (optional)"
    )
    run.add_argument(
        "--surgical-groups",
        help="comma-separated surgical group names for the inappropriateness flag",
    )
    run.set_defaults(func=cmd_run)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

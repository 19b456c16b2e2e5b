from __future__ import annotations

import logging

import pytest
from hypothesis import given, strategies as st

from bedplan.constraints import ConstraintThresholds
from bedplan.finance import CostModel
from bedplan.ingest import (
    IngestError,
    PrivateBedAssumption,
    parse_bed_inventory,
    parse_costs,
    parse_drg_table,
    parse_lea_lists,
    parse_population,
    parse_scenario,
    parse_thresholds,
    serialize_bed_inventory,
    serialize_drg_table,
    serialize_lea_lists,
    serialize_scenario,
)
from bedplan.model import (
    Care,
    DrgKind,
    Provenance,
    Regime,
    Sector,
    TableRegime,
)
from bedplan.scenario import DrgClass, ScenarioSpec, ScenarioSpecError, SourceBucket, StepRule

HEADER = (
    "code;mc;admissions;days;mean_days;mean_days_below_threshold;threshold;"
    "one_day_admissions;pct_1d;pct_2_3d;pct_4d_to_threshold;"
    "pct_above_threshold;days_above_threshold\n"
)


class TestParseDrgTable:
    def test_basic_row(self):
        text = HEADER + "470;C;120;360;3.0;2.5;10;30;25.0;30.0;35.0;10.0;36\n"
        table = parse_drg_table(text)
        assert len(table) == 1
        rec = table.records[0]
        assert rec.code == "470"
        assert rec.kind is DrgKind.SURGICAL
        assert rec.admissions == 120
        assert rec.total_days == 360
        assert rec.one_day_admissions == 30
        assert rec.threshold_days == 10
        assert rec.one_day_share == 0.25
        assert rec.above_threshold_admission_share == 0.10
        assert rec.days_above_threshold == 36

    def test_empty_file(self):
        assert len(parse_drg_table("")) == 0
        assert len(parse_drg_table("   \n\n")) == 0

    def test_non_numeric_field_has_line_number(self):
        text = HEADER + "470;C;12a;360;;;10;30;;;;0;0\n"
        with pytest.raises(IngestError, match="line 2"):
            parse_drg_table(text)

    def test_duplicate_code_named(self):
        text = (
            HEADER
            + "470;C;12;36;;;10;3;;;;0;0\n"
            + "470;M;10;30;;;10;3;;;;0;0\n"
        )
        with pytest.raises(IngestError, match="470"):
            parse_drg_table(text)

    def test_missing_header(self):
        with pytest.raises(IngestError, match="header"):
            parse_drg_table("470;C;12;36;;;10;3;;;;0;0\n")

    def test_decimal_comma_and_point_both_accepted(self):
        comma = HEADER + "470;C;1234;3600;1.234,5;;10;30;;;;12,5;36\n"
        point = HEADER + "470;C;1234;3600;1234.5;;10;30;;;;12.5;36\n"
        a = parse_drg_table(comma).records[0]
        b = parse_drg_table(point).records[0]
        assert a.mean_stay_days == b.mean_stay_days == 1234.5
        assert a.above_threshold_admission_share == b.above_threshold_admission_share == 0.125

    def test_thousands_groups_in_counts(self):
        text = HEADER + "470;C;1.234;3.600;;;10;30;;;;0;0\n"
        rec = parse_drg_table(text).records[0]
        assert rec.admissions == 1234
        assert rec.total_days == 3600

    def test_wrong_column_count(self):
        with pytest.raises(IngestError, match="13 columns"):
            parse_drg_table(HEADER + "470;C;12\n")

    def test_bytes_accepted_and_row_order_preserved(self):
        text = HEADER + "2;M;5;10;;;3;1;;;;0;0\n1;M;5;10;;;3;1;;;;0;0\n"
        table = parse_drg_table(text.encode("utf-8"))
        assert [r.code for r in table.records] == ["2", "1"]


class TestParseBedInventory:
    def test_reported_public_rows(self):
        text = "public;DH;acute;985\npublic;RO;acute;12015\n"
        inv = parse_bed_inventory(text, PrivateBedAssumption.EXCLUDES_DH)
        assert inv.entries[(Sector.PUBLIC, Regime.DH, Care.ACUTE)].count == 985
        assert (
            inv.entries[(Sector.PUBLIC, Regime.DH, Care.ACUTE)].provenance
            is Provenance.REPORTED
        )
        assert inv.acute_beds == 13000

    def test_mode_a_marks_private_estimated_pending(self):
        text = "private;RO;acute;2500\n"
        inv = parse_bed_inventory(text, PrivateBedAssumption.INCLUDES_DH)
        entry = inv.entries[(Sector.PRIVATE, Regime.RO, Care.ACUTE)]
        assert entry.count == 2500
        assert entry.provenance is Provenance.ESTIMATED
        pending = inv.entries[(Sector.PRIVATE, Regime.DH, Care.ACUTE)]
        assert pending.count == 0
        assert pending.provenance is Provenance.ESTIMATED

    def test_mode_b_keeps_private_reported(self):
        text = "private;RO;acute;2500\n"
        inv = parse_bed_inventory(text, PrivateBedAssumption.EXCLUDES_DH)
        entry = inv.entries[(Sector.PRIVATE, Regime.RO, Care.ACUTE)]
        assert entry.provenance is Provenance.REPORTED

    def test_zero_inventory_valid(self):
        inv = parse_bed_inventory(
            "public;RO;acute;0\n", PrivateBedAssumption.EXCLUDES_DH
        )
        assert inv.total_beds == 0

    def test_negative_count_rejected(self):
        with pytest.raises(IngestError, match="negative"):
            parse_bed_inventory(
                "public;RO;acute;-10\n", PrivateBedAssumption.EXCLUDES_DH
            )

    def test_unknown_tokens_rejected(self):
        with pytest.raises(IngestError, match="sector"):
            parse_bed_inventory("clinic;RO;acute;1\n", PrivateBedAssumption.EXCLUDES_DH)
        with pytest.raises(IngestError, match="regime"):
            parse_bed_inventory("public;XX;acute;1\n", PrivateBedAssumption.EXCLUDES_DH)
        with pytest.raises(IngestError, match="care"):
            parse_bed_inventory("public;RO;spa;1\n", PrivateBedAssumption.EXCLUDES_DH)


class TestParseLeaLists:
    def test_counts_and_membership(self):
        codes45 = [f"{i:03d}" for i in range(1, 44)]
        codes65 = [f"{i:03d}" for i in range(100, 165)]
        classifier = parse_lea_lists(
            "\n".join(codes45) + "\n", "\n".join(codes65) + "\n"
        )
        assert len(classifier.lea45) == 43
        assert len(classifier.lea45plus) == 65

    def test_comments_and_blanks_ignored(self):
        classifier = parse_lea_lists("# header\n006\n\n039 # inline\n", "119\n")
        assert classifier.lea45 == frozenset({"006", "039"})

    def test_empty_lists_classify_everything_other(self):
        classifier = parse_lea_lists("", "")
        assert classifier.lea45 == frozenset()
        assert classifier.lea45plus == frozenset()

    def test_code_in_both_lists_rejected(self):
        with pytest.raises(IngestError, match="006"):
            parse_lea_lists("006\n", "006\n")

    def test_unusual_sizes_warn(self, caplog):
        with caplog.at_level(logging.WARNING):
            parse_lea_lists("006\n", "119\n")
        assert any("customarily" in r.message for r in caplog.records)


share_values = st.one_of(st.none(), st.floats(0, 1, allow_nan=False))


@st.composite
def drg_tables(draw):
    n = draw(st.integers(0, 6))
    records = []
    codes = draw(
        st.lists(
            st.text(alphabet="0123456789", min_size=1, max_size=3),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    for code in codes:
        admissions = draw(st.integers(0, 100_000))
        one_day = draw(st.integers(0, admissions))
        total_days = draw(st.integers(admissions, admissions * 30 + 1))
        from bedplan.model import DrgRecord

        records.append(
            DrgRecord(
                code=code,
                kind=draw(st.sampled_from(list(DrgKind))),
                admissions=admissions,
                total_days=total_days,
                one_day_admissions=one_day,
                threshold_days=draw(st.integers(1, 60)),
                above_threshold_admission_share=draw(st.floats(0, 1, allow_nan=False)),
                days_above_threshold=draw(st.integers(0, total_days)),
                mean_stay_days=draw(st.one_of(st.none(), st.floats(0, 100, allow_nan=False))),
                mean_stay_below_threshold=draw(
                    st.one_of(st.none(), st.floats(0, 100, allow_nan=False))
                ),
                one_day_share=draw(share_values),
                share_2_3_days=draw(share_values),
                share_4_to_threshold=draw(share_values),
            )
        )
    from bedplan.model import DrgTable

    return DrgTable(records=tuple(records), regime=TableRegime.ACUTE_RO)


@given(drg_tables())
def test_drg_table_round_trip_is_identity(table):
    assert parse_drg_table(serialize_drg_table(table)) == table


@st.composite
def bed_files(draw):
    keys = draw(
        st.lists(
            st.tuples(
                st.sampled_from(list(Sector)),
                st.sampled_from(list(Regime)),
                st.sampled_from(list(Care)),
            ),
            max_size=8,
            unique=True,
        )
    )
    lines = [
        f"{s.value};{r.value};{c.value};{draw(st.integers(0, 100_000))}"
        for (s, r, c) in keys
    ]
    return "\n".join(lines) + "\n" if lines else ""


@given(bed_files(), st.sampled_from(list(PrivateBedAssumption)))
def test_bed_inventory_round_trip_is_identity(text, assumption):
    inventory = parse_bed_inventory(text, assumption)
    again = parse_bed_inventory(serialize_bed_inventory(inventory), assumption)
    assert again == inventory


@given(
    st.lists(st.text(alphabet="0123456789", min_size=1, max_size=3), max_size=10, unique=True)
)
def test_lea_round_trip_is_identity(codes):
    half = len(codes) // 2
    from bedplan.model import LeaClassifier

    classifier = LeaClassifier(
        lea45=frozenset(codes[:half]), lea45plus=frozenset(codes[half:])
    )
    text45, text45plus = serialize_lea_lists(classifier)
    assert parse_lea_lists(text45, text45plus) == classifier


@st.composite
def scenario_specs(draw):
    name = draw(st.text(alphabet="abcdefghijklmnopqrstuvwxyz0123456789_-", min_size=1, max_size=12))
    steps = tuple(
        draw(st.lists(st.sampled_from(range(1, 8)), min_size=1, max_size=7, unique=True))
    )
    overrides = []
    for step in draw(st.lists(st.sampled_from(sorted(steps)), max_size=3, unique=True)):
        weights = draw(
            st.lists(st.integers(0, 10), min_size=4, max_size=4).filter(
                lambda w: sum(w) > 0
            )
        )
        total = sum(weights)
        from bedplan.scenario import base_step_rules

        base = base_step_rules()[step]
        if base.source is SourceBucket.ABOVE_THRESHOLD_DAYS:
            overrides.append(
                StepRule(
                    step=step,
                    drg_class=base.drg_class,
                    source=base.source,
                    to_rsa=weights[0] / total,
                    to_rehab=weights[1] / total,
                    stay=(weights[2] + weights[3]) / total,
                )
            )
        else:
            kwargs = dict(
                to_ambul=weights[1] / total,
                to_amau=weights[2] / total,
                stay=weights[3] / total,
            )
            if base.source is SourceBucket.DH:
                kwargs["stay"] = (weights[0] + weights[3]) / total
            else:
                kwargs["to_dh"] = weights[0] / total
            overrides.append(
                StepRule(step=step, drg_class=base.drg_class, source=base.source, **kwargs)
            )
    solve_beta = draw(st.booleans())
    return ScenarioSpec(
        name=name,
        steps=steps,
        overrides=tuple(overrides),
        beta=draw(st.floats(0.1, 1.2)) if solve_beta else None,
        acute_density=None if solve_beta else draw(st.floats(0.5, 5.0)),
        rehab_density=draw(st.one_of(st.none(), st.floats(0.1, 1.0))),
        rsa_share=draw(st.one_of(st.none(), st.floats(0, 1))),
    )


@given(scenario_specs())
def test_scenario_round_trip_is_identity(spec):
    assert parse_scenario(serialize_scenario(spec)) == spec


class TestScenarioFiles:
    def test_minimal_file(self):
        spec = parse_scenario("[scenario]\nname = base\nbeta = 0.875\n")
        assert spec.name == "base"
        assert spec.steps == (1, 2, 3, 4, 5, 6, 7)
        assert spec.beta == 0.875

    def test_step_override_defaults_source_by_id(self):
        text = (
            "[scenario]\nname = push\nbeta = 0.875\n\n"
            "[step 1]\nstay = 0.2\nto_ambul = 0.8\n"
        )
        spec = parse_scenario(text)
        (rule,) = spec.overrides
        assert rule.drg_class is DrgClass.LEA45
        assert rule.source is SourceBucket.DH
        assert rule.to_ambul == 0.8

    def test_fraction_sum_error(self):
        text = "[scenario]\nname = bad\nbeta = 0.8\n\n[step 2]\nto_dh = 0.5\n"
        with pytest.raises(ScenarioSpecError, match="sum"):
            parse_scenario(text)

    def test_missing_target_error(self):
        with pytest.raises(ScenarioSpecError, match="exactly one"):
            parse_scenario("[scenario]\nname = none\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ScenarioSpecError, match="unknown key"):
            parse_scenario(
                "[scenario]\nname = x\nbeta = 0.8\n\n[step 2]\nto_dhx = 1.0\n"
            )

    def test_comments_allowed(self):
        spec = parse_scenario(
            "[scenario]\nname = base ; trailing\nsteps = 1 2 3\nbeta = 0.875\n"
        )
        assert spec.steps == (1, 2, 3)


class TestKeyValueFiles:
    def test_population(self):
        inputs = parse_population(
            "residents = 4076546\ninflow_admissions = 22459\n"
            "outflow_admissions = 44313\nltc_admissions = 9000\n"
        )
        assert inputs.population.residents == 4076546
        assert inputs.population.inflow_admissions == 22459
        assert inputs.ltc_admissions == 9000
        assert inputs.rehab_ro_admissions is None

    def test_population_requires_residents(self):
        with pytest.raises(IngestError, match="residents"):
            parse_population("inflow_admissions = 5\n")

    def test_thresholds_defaults_and_overrides(self):
        thresholds = parse_thresholds("max_acute_density = 3.0\n")
        assert thresholds.max_acute_density == 3.0
        assert thresholds.max_total_density == ConstraintThresholds().max_total_density

    def test_costs(self):
        costs = parse_costs("acute_bed_pa = 260000\nambulatory_service = 180\n")
        assert costs.acute_bed_pa == 260_000
        assert costs.ambulatory_service == 180
        assert costs.rsa_bed_pa == CostModel().rsa_bed_pa

    def test_unknown_key(self):
        with pytest.raises(IngestError, match="unknown"):
            parse_costs("bed_price = 100\n")

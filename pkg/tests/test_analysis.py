from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from bedplan.analysis import (
    DivisionWorkload,
    SpecialtyGrouping,
    estimate_dh_bed_stock,
    mobility_net,
    performance_index,
    resolve_private_dh,
    restructured_ro_days_by_drg,
    specialty_bed_comparison,
)
from bedplan.model import (
    BedEntry,
    BedInventory,
    Care,
    DhParameters,
    DomainError,
    DrgTable,
    LeaClassifier,
    Provenance,
    Regime,
    Sector,
)
from bedplan.scenario import base_step_rules, stratify, aggregate, apply_step

from conftest import record

STOCK_PARAMS = DhParameters(dh_correction=0.75)


class TestDhBedEstimate:
    def test_direct_evaluation(self):
        estimate = estimate_dh_bed_stock(432_000, 985, 0.8, STOCK_PARAMS)
        assert estimate.total_beds == 1440.0
        assert estimate.private_beds == pytest.approx(455.0)
        assert not estimate.clamped

    def test_public_exceeding_total_clamps(self):
        estimate = estimate_dh_bed_stock(100_000, 985, 0.8, STOCK_PARAMS)
        assert estimate.total_beds < 985
        assert estimate.private_beds == 0.0
        assert estimate.clamped

    def test_correction_ratio_is_four_thirds(self):
        corrected = estimate_dh_bed_stock(432_000, 0, 0.8, STOCK_PARAMS)
        planning = estimate_dh_bed_stock(432_000, 0, 0.8, DhParameters())
        assert corrected.total_beds == planning.total_beds * 4 / 3

    def test_rejects_nonpositive_beta(self):
        with pytest.raises(DomainError):
            estimate_dh_bed_stock(1000, 10, 0.0)


class TestResolvePrivateDh:
    def test_mode_including_dh_carves_out_of_ro(self):
        inventory = BedInventory(
            entries={
                (Sector.PRIVATE, Regime.RO, Care.ACUTE): BedEntry(
                    2500, Provenance.ESTIMATED
                ),
            }
        )
        resolved = resolve_private_dh(inventory, 23, includes_dh=True)
        assert resolved.entries[(Sector.PRIVATE, Regime.RO, Care.ACUTE)].count == 2477
        assert resolved.entries[(Sector.PRIVATE, Regime.DH, Care.ACUTE)].count == 23

    def test_mode_excluding_dh_adds_on_top(self):
        inventory = BedInventory(
            entries={(Sector.PRIVATE, Regime.RO, Care.ACUTE): BedEntry(2500)}
        )
        resolved = resolve_private_dh(inventory, 23, includes_dh=False)
        assert resolved.entries[(Sector.PRIVATE, Regime.RO, Care.ACUTE)].count == 2500
        assert resolved.entries[(Sector.PRIVATE, Regime.DH, Care.ACUTE)].count == 23


class TestMobility:
    def test_regional_figures_are_bit_exact(self):
        balance = mobility_net(625_048, 44_313, 22_459)
        assert balance.net_served == 603_194

    def test_zero_mobility(self):
        balance = mobility_net(1000, 0, 0)
        assert balance.net_served == 1000
        assert balance.dilution == 0.0
        assert balance.outflow_share == 0.0

    def test_both_ratios_emitted(self):
        balance = mobility_net(625_048, 44_313, 22_459)
        assert balance.dilution == pytest.approx(21_854 / 603_194)
        assert balance.dilution == pytest.approx(0.0362, abs=5e-5)
        assert balance.outflow_share == pytest.approx(44_313 / 603_194)

    def test_rejects_nonpositive_net(self):
        with pytest.raises(DomainError):
            mobility_net(10, 20, 5)
        with pytest.raises(DomainError):
            mobility_net(-1, 0, 0)


class TestSpecialtyComparison:
    def test_negative_change_flags_surgical_groups(self):
        rows = specialty_bed_comparison(
            {"surgery": 75 * 365 * 0.875},
            0.875,
            {"surgery": 100.0},
            surgical_groups=["surgery"],
        )
        (row,) = rows
        assert row.required_beds == pytest.approx(75.0)
        assert row.pct_change == pytest.approx(-0.25)
        assert row.flagged

    def test_medical_groups_not_flagged(self):
        rows = specialty_bed_comparison(
            {"medicine": 50 * 365 * 0.875}, 0.875, {"medicine": 100.0}
        )
        assert not rows[0].flagged

    def test_equal_requirement_is_zero_change(self):
        rows = specialty_bed_comparison(
            {"g": 100 * 365 * 0.8}, 0.8, {"g": 100.0}
        )
        assert rows[0].pct_change == pytest.approx(0.0)
        assert not rows[0].flagged

    def test_empty_demand_is_full_cut(self):
        rows = specialty_bed_comparison({}, 0.8, {"g": 50.0})
        assert rows[0].required_beds == 0.0
        assert rows[0].pct_change == pytest.approx(-1.0)

    def test_zero_current_beds_not_applicable(self):
        rows = specialty_bed_comparison({"new": 1000.0}, 0.8, {})
        assert rows[0].pct_change is None

    def test_grouping_maps(self):
        grouping = SpecialtyGrouping(
            specialty_to_group={"Pneumology": "General Medicine"},
            drg_to_group={"088": "General Medicine"},
        )
        assert grouping.group_for_drg("088") == "General Medicine"
        assert grouping.group_for_drg("001") is None
        table = DrgTable(records=(record("088", 1, 2), record("001", 1, 2)))
        assert grouping.unmapped_codes(table) == ["001"]


class TestPerformanceIndex:
    def test_worked_example(self):
        workload = DivisionWorkload(
            emergency_days=36_500,
            planned_days_by_drg={"127": 25_000},
            ro_retention_by_drg={"127": 0.6},
            observed_beds=150,
        )
        pi = performance_index(workload, 1.0)
        assert pi == pytest.approx(25_000 * 0.4 / 500 + 51_500 / 365 - 150)
        assert pi == pytest.approx(11.0958904109589, abs=1e-9)

    def test_full_retention_reduces_to_pure_ordinary(self):
        total_days = 50_000.0
        beta = 0.8
        workload = DivisionWorkload(
            emergency_days=10_000,
            planned_days_by_drg={"a": 25_000, "b": 15_000},
            ro_retention_by_drg={"a": 1.0, "b": 1.0},
            observed_beds=total_days / (365 * beta),
        )
        assert performance_index(workload, beta) == pytest.approx(0.0, abs=1e-9)

    def test_excess_beds_is_negative(self):
        workload = DivisionWorkload(
            emergency_days=365,
            planned_days_by_drg={},
            ro_retention_by_drg={},
            observed_beds=100,
        )
        assert performance_index(workload, 1.0) < 0

    def test_missing_retention_is_an_error(self):
        workload = DivisionWorkload(
            emergency_days=0,
            planned_days_by_drg={"127": 100},
            ro_retention_by_drg={},
            observed_beds=0,
        )
        with pytest.raises(DomainError, match="127"):
            performance_index(workload, 0.8)

    @given(
        emergency=st.floats(0, 1e6),
        planned=st.floats(0, 1e6),
        retention=st.floats(0, 1),
        beta=st.floats(0.05, 1.2),
        beds=st.floats(0, 1e4),
        more_beds=st.floats(0.1, 100),
        more_days=st.floats(0.1, 1e5),
    )
    def test_monotonicity(self, emergency, planned, retention, beta, beds,
                          more_beds, more_days):
        def pi(emg, obs):
            return performance_index(
                DivisionWorkload(
                    emergency_days=emg,
                    planned_days_by_drg={"x": planned},
                    ro_retention_by_drg={"x": retention},
                    observed_beds=obs,
                ),
                beta,
            )

        assert pi(emergency, beds + more_beds) < pi(emergency, beds)
        assert pi(emergency + more_days, beds) > pi(emergency, beds)


class TestRestructuredDays:
    def test_matches_engine_aggregate(self, ro_table, dh_table, classifier):
        rules = tuple(base_step_rules().values())
        days_by_drg = restructured_ro_days_by_drg(ro_table, classifier, rules)
        demand = stratify(ro_table, dh_table, classifier)
        deltas = {}
        for rule in rules:
            demand, d = apply_step(demand, rule)
            deltas[rule.step] = d
        agg = aggregate(demand, deltas)
        assert sum(days_by_drg.values()) == pytest.approx(agg.ro_days, rel=1e-9)

    def test_untouched_without_rules(self, ro_table, classifier):
        days = restructured_ro_days_by_drg(ro_table, classifier, ())
        for rec in ro_table.records:
            assert days[rec.code] == rec.total_days

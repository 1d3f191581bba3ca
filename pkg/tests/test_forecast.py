"""Roadmap curve, sizing model and calibration tests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdcsim.forecast import (
    CalibrationError,
    ReferenceDesign,
    RoadmapCurve,
    RoadmapRangeError,
    RoadmapSet,
    SdcDesign,
    TABLE2_TARGETS,
    calibrate,
    cell_errors,
    forecast,
    load_default_roadmaps,
    roadmap_value,
    size_compute,
    size_cost,
    size_mass,
    solve_annual_factor,
)
from sdcsim.workload import UC1_SCOUT, UC2_CLIENT, demand


@pytest.fixture(scope="module")
def maps() -> RoadmapSet:
    return load_default_roadmaps()


class TestRoadmapValue:
    def test_reference_year_returns_reference_value(self, maps):
        curve = maps.efficiency["gpu_equivalent"]
        assert curve.ref_year == 2032
        assert curve.ref_value == 0.44
        assert roadmap_value(curve, 2032) == 0.44

    def test_two_point_solve(self):
        """The exponential through 0.44@2032 and 0.02@2040 has annual factor
        (0.02/0.44)^(1/8) ~ 0.679."""
        f = solve_annual_factor(2032, 0.44, 2040, 0.02)
        assert f == pytest.approx((0.02 / 0.44) ** 0.125, rel=1e-12)
        assert f == pytest.approx(0.679, abs=1e-3)
        curve = RoadmapCurve("eff", 2032, 0.44, f)
        assert roadmap_value(curve, 2040) == pytest.approx(0.02, rel=1e-12)

    def test_factor_one_is_constant(self):
        curve = RoadmapCurve("flat", 2030, 5.0, 1.0)
        assert roadmap_value(curve, 2050) == 5.0

    def test_out_of_range_year_rejected(self, maps):
        curve = maps.efficiency["gpu_equivalent"]
        with pytest.raises(RoadmapRangeError):
            roadmap_value(curve, 2023)
        with pytest.raises(RoadmapRangeError):
            roadmap_value(curve, 2061)


class TestSizeCompute:
    def test_uc1_envelope(self, maps):
        """500 W at 0.44 W/TFLOPS: raw ratio 1136.4, table convention 1.14."""
        design = SdcDesign(2032, 500.0, destination="leo")
        raw = size_compute(design, maps)
        assert raw == pytest.approx(500.0 / 0.44, rel=1e-12)
        assert raw / 1000.0 == pytest.approx(1.14, rel=0.01)

    def test_uc2_envelope(self, maps):
        design = SdcDesign(2032, 2000.0, destination="geo")
        raw = size_compute(design, maps)
        assert raw == pytest.approx(4000.0, rel=1e-9)
        assert raw / 1000.0 == pytest.approx(3.95, rel=0.02)

    def test_ratio_identity(self, maps):
        """A power budget equal to the efficiency figure yields exactly 1 TFLOPS."""
        design = SdcDesign(2032, 0.44, destination="leo")
        assert size_compute(design, maps) == pytest.approx(1.0, rel=1e-12)

    def test_fraction_scales(self, maps):
        full = size_compute(SdcDesign(2032, 500.0), maps)
        half = size_compute(SdcDesign(2032, 500.0, compute_power_fraction=0.5), maps)
        assert half == pytest.approx(full / 2.0, rel=1e-12)


class TestSizeMass:
    def test_uc1_16_kg(self, maps):
        design = SdcDesign(2032, 500.0, destination="leo")
        mass = size_mass(design, size_compute(design, maps), maps)
        assert mass == pytest.approx(16.0, rel=0.05)

    def test_uc2_63_kg(self, maps):
        design = SdcDesign(2032, 2000.0, destination="geo")
        mass = size_mass(design, size_compute(design, maps), maps)
        assert mass == pytest.approx(63.0, rel=0.05)

    def test_uc3_68_kg(self, maps):
        design = SdcDesign(2040, 300.0, destination="lunar_surface")
        mass = size_mass(design, size_compute(design, maps), maps)
        assert mass == pytest.approx(68.0, rel=0.05)

    def test_zero_power_zero_compute_leaves_bus_mass(self, maps):
        """Degenerate sizing collapses to the fixed bus exactly."""
        design = SdcDesign(2032, 1e-9, destination="leo")
        assert size_mass(design, 0.0, maps) == pytest.approx(
            maps.bus_mass_kg["leo"], abs=1e-9
        )


class TestSizeCost:
    def test_uc1_cost_figures(self, maps):
        design = SdcDesign(2032, 500.0, destination="leo")
        raw = size_compute(design, maps)
        mass = size_mass(design, raw, maps)
        cost = size_cost(design, mass, raw, maps)
        assert cost.cost_of_power_eur_per_w == pytest.approx(99.0, rel=0.05)
        assert cost.cost_of_compute_eur_per_tflops == pytest.approx(43504.0, rel=0.05)
        assert cost.total_cost_eur == pytest.approx(49.5e3, rel=0.05)

    def test_uc3_cost_figures(self, maps):
        design = SdcDesign(2040, 300.0, destination="lunar_surface")
        raw = size_compute(design, maps)
        mass = size_mass(design, raw, maps)
        cost = size_cost(design, mass, raw, maps)
        assert cost.cost_of_power_eur_per_w == pytest.approx(21606.0, rel=0.05)
        assert cost.cost_of_compute_eur_per_tflops == pytest.approx(447000.0, rel=0.05)
        assert cost.total_cost_eur == pytest.approx(6.48e6, rel=0.05)

    def test_zero_curves_zero_cost(self, maps):
        import dataclasses

        zero = dataclasses.replace(
            maps,
            hardware_cost=RoadmapCurve("hw", 2032, 1e-300, 1.0),
            launch_cost={
                k: RoadmapCurve("launch", 2032, 1e-300, 1.0)
                for k in maps.launch_cost
            },
            fixed_integration_cost_eur=0.0,
        )
        design = SdcDesign(2032, 500.0)
        raw = size_compute(design, zero)
        mass = size_mass(design, raw, zero)
        cost = size_cost(design, mass, raw, zero)
        assert cost.total_cost_eur == pytest.approx(0.0, abs=1e-250)
        assert cost.cost_of_power_eur_per_w == pytest.approx(0.0, abs=1e-250)
        assert cost.cost_of_compute_eur_per_tflops == pytest.approx(0.0, abs=1e-250)


class TestForecast:
    def test_uc1_no_shortfall(self, maps):
        fom = forecast(SdcDesign(2032, 500.0, destination="leo"), demand(UC1_SCOUT), maps)
        assert fom.available_compute_tflops == pytest.approx(1.14, rel=0.01)
        assert fom.required_compute_tflops == pytest.approx(0.2283, abs=0.0005)
        assert not fom.compute_shortfall

    def test_uc2_no_shortfall(self, maps):
        fom = forecast(
            SdcDesign(2032, 2000.0, destination="geo"), demand(UC2_CLIENT), maps
        )
        assert fom.available_compute_tflops == pytest.approx(3.95, rel=0.02)
        assert fom.required_compute_tflops == pytest.approx(3.62, rel=1e-9)
        assert not fom.compute_shortfall

    def test_undersized_design_flags_shortfall(self, maps):
        fom = forecast(SdcDesign(2032, 1.0, destination="geo"), demand(UC2_CLIENT), maps)
        assert fom.compute_shortfall

    def test_cost_identity_exact(self, maps):
        """cost_of_power x power == cost_of_compute x available == total."""
        for design in (
            SdcDesign(2032, 500.0, destination="leo"),
            SdcDesign(2032, 2000.0, destination="geo"),
            SdcDesign(2040, 300.0, destination="lunar_surface"),
            SdcDesign(2045, 1234.0, destination="leo"),
        ):
            fom = forecast(design, None, maps)
            assert fom.cost_of_power_eur_per_w * design.total_power_w == pytest.approx(
                fom.total_cost_eur, rel=1e-12
            )
            assert (
                fom.cost_of_compute_eur_per_tflops * fom.available_compute_tflops
                == pytest.approx(fom.total_cost_eur, rel=1e-12)
            )

    @given(
        power=st.floats(1.0, 1e5, allow_subnormal=False),
        year=st.integers(2024, 2060),
        dest=st.sampled_from(["leo", "geo", "lunar_surface"]),
    )
    @settings(max_examples=60, deadline=None)
    def test_doubling_power_doubles_compute(self, power, year, dest):
        maps = load_default_roadmaps()
        base = forecast(SdcDesign(year, power, destination=dest), None, maps)
        double = forecast(SdcDesign(year, 2 * power, destination=dest), None, maps)
        assert double.available_compute_tflops == pytest.approx(
            2 * base.available_compute_tflops, rel=1e-12
        )
        assert double.satellite_mass_kg > base.satellite_mass_kg
        assert double.total_cost_eur > base.total_cost_eur

    def test_year_monotonicity(self, maps):
        """Improvement factors below one: efficiency falls, available grows."""
        effs = []
        avail = []
        for year in range(2032, 2041):
            fom = forecast(SdcDesign(year, 500.0), None, maps)
            effs.append(fom.compute_efficiency_w_per_tflops)
            avail.append(fom.available_compute_tflops)
        assert all(a > b for a, b in zip(effs, effs[1:]))
        assert all(a < b for a, b in zip(avail, avail[1:]))
        assert effs[0] == pytest.approx(0.44, rel=1e-12)
        assert effs[-1] == pytest.approx(0.02, rel=1e-9)

    def test_destination_dominance(self, maps):
        """Lunar-surface launch euros dominate: cost of power far above LEO."""
        leo = forecast(SdcDesign(2040, 300.0, destination="leo"), None, maps)
        lunar = forecast(SdcDesign(2040, 300.0, destination="lunar_surface"), None, maps)
        assert lunar.cost_of_power_eur_per_w > leo.cost_of_power_eur_per_w
        ratio = lunar.cost_of_power_eur_per_w / leo.cost_of_power_eur_per_w
        assert ratio > 50

    def test_uncalibrated_compute_type_rejected(self, maps):
        with pytest.raises(CalibrationError, match="no efficiency roadmap"):
            forecast(SdcDesign(2032, 500.0, compute_type="fpga"), None, maps)

    def test_design_validation(self):
        with pytest.raises(RoadmapRangeError):
            SdcDesign(2020, 500.0)
        with pytest.raises(ValueError):
            SdcDesign(2032, 0.0)
        with pytest.raises(ValueError):
            SdcDesign(2032, 500.0, compute_type="abacus")
        with pytest.raises(ValueError):
            SdcDesign(2032, 500.0, destination="mars")
        with pytest.raises(ValueError):
            SdcDesign(2032, 500.0, compute_power_fraction=0.0)


class TestCalibrate:
    def test_reference_targets_within_5_percent(self):
        maps = calibrate(TABLE2_TARGETS)
        worst = 0.0
        for row in TABLE2_TARGETS:
            for cell, err in cell_errors(row, maps).items():
                assert err <= 0.05, f"{row.name}.{cell} error {err:.4f}"
                worst = max(worst, err)
        assert worst > 0  # the printed numbers are rounded, exact zero is wrong

    def test_shipped_defaults_equal_recalibration(self, maps):
        assert calibrate(TABLE2_TARGETS).to_dict() == maps.to_dict()

    def test_single_exact_model_target_zero_residual(self, maps):
        """A row generated by the model itself recalibrates with zero error:
        the bus mass and launch cost absorb whatever the anchors miss."""
        design = SdcDesign(2040, 300.0, destination="lunar_surface")
        fom = forecast(design, None, maps)
        row = ReferenceDesign(
            name="generated",
            year=design.year,
            total_power_w=design.total_power_w,
            destination=design.destination,
            available_compute_tflops=fom.available_compute_tflops,
            satellite_mass_kg=fom.satellite_mass_kg,
            efficiency_w_per_tflops=fom.compute_efficiency_w_per_tflops,
            cost_of_power_eur_per_w=fom.cost_of_power_eur_per_w,
            cost_of_compute_eur_per_tflops=fom.cost_of_compute_eur_per_tflops,
        )
        recal = calibrate((row,))
        for cell, err in cell_errors(row, recal).items():
            assert err < 1e-9, f"{cell} residual {err}"

    def test_efficiency_two_point_solve_in_calibration(self, maps):
        """Two consistent rows at 2032 and 2040 recover the 0.44-to-0.02
        exponential, annual factor ~0.679, with zero residual."""

        def model_row(name, year):
            design = SdcDesign(year, 500.0, destination="leo")
            fom = forecast(design, None, maps)
            return ReferenceDesign(
                name, year, 500.0, "leo",
                fom.available_compute_tflops, fom.satellite_mass_kg,
                fom.compute_efficiency_w_per_tflops, fom.cost_of_power_eur_per_w,
                fom.cost_of_compute_eur_per_tflops,
            )

        rows = (model_row("a", 2032), model_row("b", 2040))
        assert rows[1].efficiency_w_per_tflops == pytest.approx(0.02, rel=1e-9)
        recal = calibrate(rows)
        curve = recal.efficiency["gpu_equivalent"]
        assert curve.annual_factor == pytest.approx(0.679512, abs=1e-6)
        for row in rows:
            assert max(cell_errors(row, recal).values()) < 1e-9

    def test_infeasible_targets_listed(self):
        """A satellite mass below the power-system mass alone implies a
        negative bus and names the offending cell."""
        bad = (ReferenceDesign("bad", 2032, 2000.0, "leo", 4.0, 10.0, 0.5, 97.0, 49276.0),)
        with pytest.raises(CalibrationError, match="bad.*negative bus"):
            calibrate(bad)

    def test_empty_targets_rejected(self):
        with pytest.raises(CalibrationError):
            calibrate(())


class TestRoadmapSetSerialization:
    def test_round_trip(self, maps):
        again = RoadmapSet.from_dict(maps.to_dict())
        assert again.to_dict() == maps.to_dict()
        assert again.efficiency["gpu_equivalent"].ref_value == 0.44

    def test_shipped_file_contains_battery_roadmap(self, maps):
        assert maps.battery.metric == "battery_specific_energy_wh_per_kg"
        assert maps.battery.ref_value > 0

"""Imaging data-rate and compute-demand model tests."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdcsim.workload import (
    SEGMENTATION_INTENSITY,
    UC1_SCOUT,
    UC2_CLIENT,
    UC3_ROVERS,
    ComputeIntensity,
    ImagingWorkload,
    compute_demand,
    demand,
    image_data_rate,
    intensity_from_per_pixel_cost,
    object_stream_rate,
    stream_rate,
    uc1_mothership,
)


def imaging(**kw):
    base = dict(
        swath_km=290.0, ground_resolution_m=100.0, channels=3, bits_per_channel=8,
        interval_s=40.0, intensity=SEGMENTATION_INTENSITY,
    )
    base.update(kw)
    return ImagingWorkload(**base)


class TestImageDataRate:
    def test_scout_stream_630_kbytes_per_s(self):
        """(290 km / 100 m)^2 pixels x 3 bytes / 40 s = 0.63075 MB/s."""
        rate = image_data_rate(UC1_SCOUT)
        assert rate == pytest.approx(0.63075, rel=1e-12)
        assert rate == pytest.approx(0.630, rel=0.01)

    def test_inverse_square_in_resolution(self):
        """10x finer resolution means 100x the data rate."""
        coarse = image_data_rate(imaging(ground_resolution_m=100.0))
        fine = image_data_rate(imaging(ground_resolution_m=10.0))
        assert fine == pytest.approx(100.0 * coarse, rel=1e-12)

    def test_single_pixel_image(self):
        w = imaging(
            swath_km=0.001, ground_resolution_m=1.0, channels=1, bits_per_channel=8,
            interval_s=1.0,
        )
        assert image_data_rate(w) == pytest.approx(1e-6, rel=1e-12)

    def test_resolution_coarser_than_swath_rejected(self):
        with pytest.raises(ValueError, match="exceeds swath"):
            image_data_rate(imaging(swath_km=0.05, ground_resolution_m=100.0))

    def test_object_workload_rejected(self):
        with pytest.raises(ValueError, match="fixed object size"):
            image_data_rate(imaging(object_size_MB=50.0))


class TestObjectStreamRate:
    def test_uc2_50_mb_every_20_s(self):
        assert object_stream_rate(UC2_CLIENT) == pytest.approx(2.5, rel=1e-12)

    def test_uc3_3_mb_per_minute(self):
        assert object_stream_rate(UC3_ROVERS) == pytest.approx(0.05, rel=1e-12)

    def test_zero_size_objects(self):
        assert object_stream_rate(imaging(object_size_MB=0.0)) == 0.0

    def test_imaging_workload_rejected(self):
        with pytest.raises(ValueError, match="no fixed object size"):
            object_stream_rate(imaging())


class TestComputeDemand:
    def test_uc1_scout_228_gflops(self):
        d = compute_demand(0.63075, 362.0, 1)
        assert d.compute_gflops == pytest.approx(228.33, abs=0.05)
        assert d.compute_gflops == pytest.approx(228.0, rel=0.01)

    def test_uc2_905_gflops_per_client_and_4_client_aggregate(self):
        d = compute_demand(2.5, 362.0, 4)
        assert d.compute_gflops == pytest.approx(905.0, rel=1e-12)
        assert d.aggregate_compute_gflops == pytest.approx(3620.0, rel=1e-12)

    def test_uc3_20_rovers(self):
        """20 x 0.05 MB/s x 362 GFLOP/MB = 362 GFLOPS, commonly rounded to
        roughly 0.3 TFLOPS."""
        d = compute_demand(0.05, 362.0, 20)
        assert d.aggregate_compute_gflops == pytest.approx(362.0, rel=1e-12)
        assert d.aggregate_compute_gflops / 1000.0 == pytest.approx(0.3, rel=0.25)

    @given(
        rate=st.floats(0, 1e3, allow_subnormal=False),
        intensity=st.floats(0, 1e3, allow_subnormal=False),
        n=st.integers(1, 100),
    )
    @settings(max_examples=80, deadline=None)
    def test_linearity(self, rate, intensity, n):
        d = compute_demand(rate, intensity, n)
        assert d.compute_gflops == rate * intensity
        assert d.aggregate_compute_gflops == pytest.approx(
            d.compute_gflops * n, rel=1e-12
        )
        doubled = compute_demand(2 * rate, intensity, n)
        assert doubled.compute_gflops == 2 * d.compute_gflops


class TestIntensityConversion:
    def test_272_kflop_per_pixel(self):
        """272 kFLOP / 3 bytes = 90.7 GFLOP/MB, low end of the envelope."""
        assert intensity_from_per_pixel_cost(272.0, 3, 8) == pytest.approx(
            90.67, abs=0.01
        )
        assert intensity_from_per_pixel_cost(272.0, 3, 8) == pytest.approx(91, rel=0.01)

    def test_1900_kflop_per_pixel(self):
        assert intensity_from_per_pixel_cost(1900.0, 3, 8) == pytest.approx(
            633.33, abs=0.01
        )
        assert intensity_from_per_pixel_cost(1900.0, 3, 8) == pytest.approx(633, rel=0.01)

    def test_unit_identity(self):
        """3 kFLOP/px at 3 bytes/px is exactly 1 GFLOP/MB."""
        assert intensity_from_per_pixel_cost(3.0, 3, 8) == 1.0

    def test_mean_is_midpoint_of_envelope(self):
        mid = (
            intensity_from_per_pixel_cost(272.0, 3, 8)
            + intensity_from_per_pixel_cost(1900.0, 3, 8)
        ) / 2.0
        assert SEGMENTATION_INTENSITY.mean_gflop_per_mb == pytest.approx(mid, rel=1e-12)
        assert SEGMENTATION_INTENSITY.mean_gflop_per_mb == pytest.approx(362.0, rel=1e-6)

    @given(
        kflop=st.floats(1, 1e4),
        channels=st.integers(1, 8),
        bits=st.sampled_from([8, 12, 16]),
        swath=st.floats(1, 500),
        res=st.floats(1, 500),
        interval=st.floats(1, 100),
    )
    @settings(max_examples=60, deadline=None)
    def test_round_trip_with_image_rate(self, kflop, channels, bits, swath, res, interval):
        """Whole-image cost equals pixels x per-pixel cost: rate x intensity
        must agree with the direct pixel arithmetic within 1e-9 relative."""
        if res > swath * 1000:
            return
        w = imaging(
            swath_km=swath, ground_resolution_m=res, channels=channels,
            bits_per_channel=bits, interval_s=interval,
        )
        rate = image_data_rate(w)
        intensity = intensity_from_per_pixel_cost(kflop, channels, bits)
        pixels = (swath * 1000 / res) ** 2
        direct_gflops = pixels * kflop / 1e6 / interval  # kFLOP -> GFLOP
        assert rate * intensity == pytest.approx(direct_gflops, rel=1e-9)


class TestPresets:
    def test_mothership_default_matches_scout_demand(self):
        """The default region-of-interest fraction makes the detailed-scan
        demand equal the scout demand."""
        scout = demand(UC1_SCOUT)
        mship = demand(uc1_mothership())
        assert mship.compute_gflops == pytest.approx(scout.compute_gflops, rel=1e-9)

    def test_mothership_roi_scales(self):
        full = demand(uc1_mothership(roi_fraction=1.0))
        tenth = demand(uc1_mothership(roi_fraction=0.1))
        assert full.compute_gflops == pytest.approx(10 * tenth.compute_gflops, rel=1e-9)

    def test_uc2_object_is_double_the_scout_frame(self):
        """50 MB objects are twice the 25.23 MB scout frame."""
        frame_mb = image_data_rate(UC1_SCOUT) * UC1_SCOUT.interval_s
        assert frame_mb == pytest.approx(25.23, abs=0.01)
        assert UC2_CLIENT.object_size_MB == pytest.approx(2 * frame_mb, rel=0.01)

    def test_stream_rate_dispatch(self):
        assert stream_rate(UC1_SCOUT) == image_data_rate(UC1_SCOUT)
        assert stream_rate(UC2_CLIENT) == object_stream_rate(UC2_CLIENT)


class TestValidation:
    def test_intensity_ordering_enforced(self):
        with pytest.raises(ValueError, match="min <= mean <= max"):
            ComputeIntensity(100.0, 90.0, 200.0)

    def test_positive_fields_enforced(self):
        with pytest.raises(ValueError):
            imaging(swath_km=-1.0)
        with pytest.raises(ValueError):
            imaging(channels=0)
        with pytest.raises(ValueError):
            imaging(interval_s=0.0)

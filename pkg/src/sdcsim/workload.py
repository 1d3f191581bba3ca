"""Quantitative models of the imaging use cases: data rates and compute demand.

Conventions: MB means 10^6 bytes throughout, compute intensity is GFLOP per MB
of input data, and demand in GFLOPS is simply stream rate times intensity.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ComputeIntensity:
    """Processing cost per megabyte of input, as a min/mean/max envelope."""

    min_gflop_per_mb: float
    mean_gflop_per_mb: float
    max_gflop_per_mb: float

    def __post_init__(self) -> None:
        if self.min_gflop_per_mb <= 0:
            raise ValueError("intensity values must be positive")
        if not (
            self.min_gflop_per_mb <= self.mean_gflop_per_mb <= self.max_gflop_per_mb
        ):
            raise ValueError(
                "intensity must satisfy min <= mean <= max, got "
                f"{self.min_gflop_per_mb}/{self.mean_gflop_per_mb}/{self.max_gflop_per_mb}"
            )


@dataclass(frozen=True)
class ImagingWorkload:
    """Sensor/product parameters for one data stream.

    When object_size_MB is set, products are fixed-size objects emitted every
    interval_s and the imaging formula is bypassed; otherwise the rate follows
    from swath, ground resolution, channels and bit depth.
    """

    swath_km: float
    ground_resolution_m: float
    channels: int
    bits_per_channel: int
    interval_s: float
    intensity: ComputeIntensity
    n_sources: int = 1
    object_size_MB: float | None = None

    def __post_init__(self) -> None:
        if min(self.swath_km, self.ground_resolution_m, self.interval_s) <= 0:
            raise ValueError("swath, resolution and interval must be positive")
        if self.channels < 1 or self.bits_per_channel < 1:
            raise ValueError("channels and bits_per_channel must be positive")
        if self.n_sources < 1:
            raise ValueError("n_sources must be positive")
        if self.object_size_MB is not None and self.object_size_MB < 0:
            raise ValueError("object_size_MB must be >= 0")


@dataclass(frozen=True)
class WorkloadDemand:
    data_rate_MBps: float
    aggregate_data_rate_MBps: float
    compute_gflops: float
    aggregate_compute_gflops: float
    n_sources: int


def image_data_rate(w: ImagingWorkload) -> float:
    """Raw image stream rate in MB/s from the imaging geometry."""
    if w.object_size_MB is not None:
        raise ValueError("workload has a fixed object size; use object_stream_rate")
    if w.ground_resolution_m > w.swath_km * 1000.0:
        raise ValueError(
            f"resolution {w.ground_resolution_m} m exceeds swath {w.swath_km} km"
        )
    pixels = (w.swath_km * 1000.0 / w.ground_resolution_m) ** 2
    bytes_per_image = pixels * w.channels * w.bits_per_channel / 8.0
    return bytes_per_image / 1e6 / w.interval_s


def object_stream_rate(w: ImagingWorkload) -> float:
    """Stream rate in MB/s for fixed-size products on a recurrence interval."""
    if w.object_size_MB is None:
        raise ValueError("workload has no fixed object size; use image_data_rate")
    return w.object_size_MB / w.interval_s


def stream_rate(w: ImagingWorkload) -> float:
    if w.object_size_MB is not None:
        return object_stream_rate(w)
    return image_data_rate(w)


def compute_demand(
    rate_MBps: float, intensity_gflop_per_mb: float, n_sources: int = 1
) -> WorkloadDemand:
    """GFLOPS needed to keep up with one stream, and the n_sources aggregate."""
    if rate_MBps < 0 or intensity_gflop_per_mb < 0:
        raise ValueError("rate and intensity must be >= 0")
    if n_sources < 1:
        raise ValueError("n_sources must be positive")
    per_source = rate_MBps * intensity_gflop_per_mb
    return WorkloadDemand(
        data_rate_MBps=rate_MBps,
        aggregate_data_rate_MBps=rate_MBps * n_sources,
        compute_gflops=per_source,
        aggregate_compute_gflops=per_source * n_sources,
        n_sources=n_sources,
    )


def demand(w: ImagingWorkload, which: str = "mean") -> WorkloadDemand:
    """Demand for a workload at its min/mean/max intensity."""
    intensity = {
        "min": w.intensity.min_gflop_per_mb,
        "mean": w.intensity.mean_gflop_per_mb,
        "max": w.intensity.max_gflop_per_mb,
    }[which]
    return compute_demand(stream_rate(w), intensity, w.n_sources)


def intensity_from_per_pixel_cost(
    kflop_per_pixel: float, channels: int, bits_per_channel: int
) -> float:
    """Convert a per-pixel processing cost to GFLOP per MB of input.

    kFLOP/pixel divided by bytes/pixel is kFLOP/byte, which is numerically
    GFLOP/MB under the decimal-MB convention.
    """
    if kflop_per_pixel <= 0:
        raise ValueError("kflop_per_pixel must be positive")
    if channels < 1 or bits_per_channel < 1:
        raise ValueError("channels and bits_per_channel must be positive")
    bytes_per_pixel = channels * bits_per_channel / 8.0
    return kflop_per_pixel / bytes_per_pixel


# Segmentation-network cost envelope used by all three use cases: 272 kFLOP to
# 1.9 MFLOP per RGB8 pixel, i.e. about 91 to 633 GFLOP/MB.
SEGMENTATION_INTENSITY = ComputeIntensity(
    min_gflop_per_mb=intensity_from_per_pixel_cost(272.0, 3, 8),
    mean_gflop_per_mb=(
        intensity_from_per_pixel_cost(272.0, 3, 8)
        + intensity_from_per_pixel_cost(1900.0, 3, 8)
    )
    / 2.0,
    max_gflop_per_mb=intensity_from_per_pixel_cost(1900.0, 3, 8),
)

# Wide-area scout stream: 290 km swath at 100 m ground resolution, RGB8, one
# full frame every 40 s of along-track motion.
UC1_SCOUT = ImagingWorkload(
    swath_km=290.0,
    ground_resolution_m=100.0,
    channels=3,
    bits_per_channel=8,
    interval_s=40.0,
    intensity=SEGMENTATION_INTENSITY,
)

UC1_DEFAULT_ROI_FRACTION = 0.01


def uc1_mothership(roi_fraction: float = UC1_DEFAULT_ROI_FRACTION) -> ImagingWorkload:
    """Detailed-scan stream: the 10 m follow-up sensor revisits only the regions
    of interest flagged by the scout, modeled as a fraction of the full frame."""
    if not 0.0 < roi_fraction <= 1.0:
        raise ValueError("roi_fraction must be in (0, 1]")
    full = ImagingWorkload(
        swath_km=290.0,
        ground_resolution_m=10.0,
        channels=3,
        bits_per_channel=8,
        interval_s=40.0,
        intensity=SEGMENTATION_INTENSITY,
    )
    roi_mb = image_data_rate(full) * full.interval_s * roi_fraction
    return replace(full, object_size_MB=roi_mb)


# Scaled future segmentation feed: products of twice the scout frame size
# (50 MB) every 20 s from each of four connected client satellites.
UC2_CLIENT = ImagingWorkload(
    swath_km=290.0,
    ground_resolution_m=100.0,
    channels=3,
    bits_per_channel=8,
    interval_s=20.0,
    intensity=SEGMENTATION_INTENSITY,
    n_sources=4,
    object_size_MB=50.0,
)

# Rover mapping products: small and infrequent, 3 MB per minute from each of
# 20 concurrently operating rovers.
UC3_ROVERS = ImagingWorkload(
    swath_km=1.0,
    ground_resolution_m=1.0,
    channels=3,
    bits_per_channel=8,
    interval_s=60.0,
    intensity=SEGMENTATION_INTENSITY,
    n_sources=20,
    object_size_MB=3.0,
)

WORKLOAD_PRESETS: dict[str, ImagingWorkload] = {
    "uc1": UC1_SCOUT,
    "uc2": UC2_CLIENT,
    "uc3": UC3_ROVERS,
}

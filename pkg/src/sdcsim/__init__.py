"""Deterministic space-data-center constellation simulator and design forecaster."""

from .astro import (
    Constellation,
    Epoch,
    OrbitPlane,
    SatelliteState,
    TimeGrid,
    build_client,
    build_sdc_constellation,
    orbital_period,
    orbital_speed,
    propagate,
    sun_direction,
)
from .isl import (
    ContactIntervals,
    DirectedLink,
    DirectedLinkSample,
    LinkPolicy,
    contact_intervals,
    is_sun_blocked,
    link_geometry,
    neighbor_topology,
)
from .netsim import (
    OutageReport,
    RouteResult,
    TopologySnapshot,
    buffer_requirements,
    classify_routers,
    route,
    snapshot,
    worst_case_latency,
)
from .workload import (
    ComputeIntensity,
    ImagingWorkload,
    WorkloadDemand,
    compute_demand,
    image_data_rate,
    intensity_from_per_pixel_cost,
    object_stream_rate,
)
from .forecast import (
    FiguresOfMerit,
    RoadmapCurve,
    SdcDesign,
    calibrate,
    forecast,
    load_default_roadmaps,
    roadmap_value,
    size_compute,
    size_cost,
    size_mass,
)
from .scenario import Report, Scenario, emit, load_scenario, run, sweep

__version__ = "0.1.0"

__all__ = [
    "Constellation",
    "Epoch",
    "OrbitPlane",
    "SatelliteState",
    "TimeGrid",
    "build_client",
    "build_sdc_constellation",
    "orbital_period",
    "orbital_speed",
    "propagate",
    "sun_direction",
    "ContactIntervals",
    "DirectedLink",
    "DirectedLinkSample",
    "LinkPolicy",
    "contact_intervals",
    "is_sun_blocked",
    "link_geometry",
    "neighbor_topology",
    "OutageReport",
    "RouteResult",
    "TopologySnapshot",
    "buffer_requirements",
    "classify_routers",
    "route",
    "snapshot",
    "worst_case_latency",
    "ComputeIntensity",
    "ImagingWorkload",
    "WorkloadDemand",
    "compute_demand",
    "image_data_rate",
    "intensity_from_per_pixel_cost",
    "object_stream_rate",
    "FiguresOfMerit",
    "RoadmapCurve",
    "SdcDesign",
    "calibrate",
    "forecast",
    "load_default_roadmaps",
    "roadmap_value",
    "size_compute",
    "size_cost",
    "size_mass",
    "Report",
    "Scenario",
    "emit",
    "load_scenario",
    "run",
    "sweep",
    "__version__",
]

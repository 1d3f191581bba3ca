"""Scenario schema, run orchestration, and report emission.

A scenario is a JSON document; loading fills defaults, rejects unknown keys
and reports every semantic violation at once. Reports are fully deterministic:
no wall clock, randomness or locale leaks into them, and a canonical-JSON
SHA-256 content hash makes re-runs verifiable.
"""

from __future__ import annotations

import copy
import csv
import hashlib
import io
import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import workload as wl
from .astro import Constellation, TimeGrid, build_client, build_sdc_constellation
from .forecast import RoadmapSet, SdcDesign, forecast
from .isl import LinkPolicy
from .netsim import (
    NodeId,
    buffer_requirements,
    classify_routers,
    contacts_from_snapshots,
    format_node,
    route,
    snapshots_over_grid,
)

TOOL_NAME = "sdcsim"
TOOL_VERSION = "0.1.0"

ANALYSES = ("topology", "outage", "routing", "workload", "forecast")

PRESET_DIR_ENV = "SDCSIM_PRESET_DIR"

OUTAGE_CSV_HEADER = ["link_id", "max_outage_s", "outage_fraction", "buffer_MB"]


class ScenarioError(ValueError):
    """Scenario validation failure carrying every violation found."""

    def __init__(self, errors: list[tuple[str, str]]):
        self.errors = errors
        super().__init__(
            "; ".join(f"{path}: {message}" for path, message in errors)
        )


_DEFAULTS: dict = {
    "name": "scenario",
    "constellation": {
        "planes": 20,
        "sats_per_plane": 10,
        "inclination_deg": 53.0,
        "altitude_km": 550.0,
        "raan_spread_deg": 360.0,
        "phase_offset_deg": 0.0,
    },
    "clients": None,
    "time_grid": {
        "epoch_day_of_year": 80,
        "start_s": 0.0,
        "horizon_s": 5730.0,
        "step_s": 10.0,
    },
    "link_policy": {
        "exclusion_angle_deg": 30.0,
        "blocking": "receiver_only",
        "max_range_km": 6000.0,
        "client_max_range_km": 6000.0,
        "grazing_margin_km": 100.0,
        "inter_ring_k": 1,
    },
    "workload": "uc1",
    "design": {
        "year": 2032,
        "total_power_w": 500.0,
        "compute_type": "gpu_equivalent",
        "destination": "leo",
        "compute_power_fraction": 1.0,
    },
    "routing": {"src": [0, 0], "dst": [0, 1]},
    "stream_rate_MBps": None,
    "analyses": list(ANALYSES),
}

_CLIENT_DEFAULTS: dict = {
    "kind": "uc1_pair",
    "altitude_km": 800.0,
    "inclination_deg": 53.0,
    "separation_deg": 2.0,
}

_WORKLOAD_KEYS = {
    "swath_km",
    "ground_resolution_m",
    "channels",
    "bits_per_channel",
    "interval_s",
    "intensity",
    "n_sources",
    "object_size_MB",
}


@dataclass(frozen=True)
class Scenario:
    """A fully resolved run specification (defaults expanded, validated)."""

    data: dict

    @property
    def name(self) -> str:
        return self.data["name"]

    def constellation(self) -> Constellation:
        c = self.data["constellation"]
        return build_sdc_constellation(
            n_planes=c["planes"],
            sats_per_plane=c["sats_per_plane"],
            inclination_deg=c["inclination_deg"],
            altitude_km=c["altitude_km"],
            raan_spread_deg=c["raan_spread_deg"],
            phase_offset_deg=c["phase_offset_deg"],
        )

    def clients(self) -> Constellation | None:
        c = self.data["clients"]
        if c is None:
            return None
        return build_client(
            kind=c["kind"],
            altitude_km=c["altitude_km"],
            inclination_deg=c["inclination_deg"],
            separation_deg=c["separation_deg"],
        )

    def time_grid(self) -> TimeGrid:
        g = self.data["time_grid"]
        return TimeGrid(
            horizon_s=g["horizon_s"],
            step_s=g["step_s"],
            start_s=g["start_s"],
            epoch_day_of_year=g["epoch_day_of_year"],
        )

    def link_policy(self) -> LinkPolicy:
        p = self.data["link_policy"]
        return LinkPolicy(
            exclusion_angle_deg=p["exclusion_angle_deg"],
            blocking=p["blocking"],
            max_range_km=p["max_range_km"],
            client_max_range_km=p["client_max_range_km"],
            grazing_margin_km=p["grazing_margin_km"],
            inter_ring_k=p["inter_ring_k"],
        )

    def workloads(self) -> dict[str, wl.ImagingWorkload]:
        """Named data streams of this scenario. The first entry drives the
        compute requirement and default caching stream rate."""
        w = self.data["workload"]
        if w == "uc1":
            return {"scout": wl.UC1_SCOUT, "mothership": wl.uc1_mothership()}
        if isinstance(w, str):
            return {w: wl.WORKLOAD_PRESETS[w]}
        intensity = wl.ComputeIntensity(
            min_gflop_per_mb=w["intensity"]["min"],
            mean_gflop_per_mb=w["intensity"]["mean"],
            max_gflop_per_mb=w["intensity"]["max"],
        )
        return {
            "custom": wl.ImagingWorkload(
                swath_km=w["swath_km"],
                ground_resolution_m=w["ground_resolution_m"],
                channels=w["channels"],
                bits_per_channel=w["bits_per_channel"],
                interval_s=w["interval_s"],
                intensity=intensity,
                n_sources=w.get("n_sources", 1),
                object_size_MB=w.get("object_size_MB"),
            )
        }

    def design(self) -> SdcDesign:
        d = self.data["design"]
        return SdcDesign(
            year=d["year"],
            total_power_w=d["total_power_w"],
            compute_type=d["compute_type"],
            destination=d["destination"],
            compute_power_fraction=d["compute_power_fraction"],
        )

    def routing_nodes(self) -> tuple[NodeId, NodeId]:
        r = self.data["routing"]

        def to_node(value) -> NodeId:
            if len(value) == 3:
                return (str(value[0]), int(value[1]), int(value[2]))
            return ("sdc", int(value[0]), int(value[1]))

        return to_node(r["src"]), to_node(r["dst"])


@dataclass(frozen=True)
class Report:
    """Structured results plus a canonical-JSON content hash."""

    data: dict
    content_hash: str

    def to_json_bytes(self) -> bytes:
        payload = dict(self.data)
        payload["content_hash"] = self.content_hash
        return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")


def canonical_json(obj) -> bytes:
    return json.dumps(
        obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False
    ).encode("utf-8")


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj)).hexdigest()


def _merge_defaults(
    defaults: dict, given: dict, path: str, errors: list[tuple[str, str]]
) -> dict:
    out = copy.deepcopy(defaults)
    for key, value in given.items():
        if key not in defaults:
            errors.append((f"{path}{key}", "unknown key"))
            continue
        if isinstance(defaults[key], dict) and isinstance(value, dict):
            out[key] = _merge_defaults(defaults[key], value, f"{path}{key}.", errors)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _check(
    errors: list[tuple[str, str]], data: dict, path: str, key: str, kind, low=None,
    high=None, choices=None, allow_none: bool = False,
):
    value = data.get(key)
    full = f"{path}{key}"
    if value is None:
        if not allow_none:
            errors.append((full, "must not be null"))
        return
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
        data[key] = value
    if not isinstance(value, kind) or isinstance(value, bool):
        errors.append((full, f"expected {kind.__name__}, got {type(value).__name__}"))
        return
    if low is not None and value < low:
        errors.append((full, f"must be >= {low}, got {value}"))
    if high is not None and value > high:
        errors.append((full, f"must be <= {high}, got {value}"))
    if choices is not None and value not in choices:
        errors.append((full, f"must be one of {sorted(choices)}, got {value!r}"))


def resolve_scenario(raw: dict) -> Scenario:
    """Fill defaults, reject unknown keys and validate; raises ScenarioError
    listing every violation."""
    errors: list[tuple[str, str]] = []
    if not isinstance(raw, dict):
        raise ScenarioError([("", "scenario document must be a JSON object")])

    given = dict(raw)
    clients_given = given.pop("clients", None)
    workload_given = given.pop("workload", None)
    data = _merge_defaults(
        {k: v for k, v in _DEFAULTS.items() if k not in ("clients", "workload")},
        given,
        "",
        errors,
    )

    if clients_given is None:
        data["clients"] = None
    elif isinstance(clients_given, dict):
        data["clients"] = _merge_defaults(
            _CLIENT_DEFAULTS, clients_given, "clients.", errors
        )
    else:
        errors.append(("clients", "must be null or an object"))
        data["clients"] = None

    if workload_given is None:
        data["workload"] = _DEFAULTS["workload"]
    elif isinstance(workload_given, str):
        data["workload"] = workload_given
        if workload_given not in wl.WORKLOAD_PRESETS:
            errors.append(
                ("workload", f"unknown preset {workload_given!r}, expected one of "
                 f"{sorted(wl.WORKLOAD_PRESETS)}")
            )
    elif isinstance(workload_given, dict):
        unknown = set(workload_given) - _WORKLOAD_KEYS
        for key in sorted(unknown):
            errors.append((f"workload.{key}", "unknown key"))
        data["workload"] = copy.deepcopy(workload_given)
    else:
        errors.append(("workload", "must be a preset name or an object"))

    c = data["constellation"]
    _check(errors, c, "constellation.", "planes", int, low=1)
    _check(errors, c, "constellation.", "sats_per_plane", int, low=1)
    _check(errors, c, "constellation.", "inclination_deg", float, low=0.0, high=180.0)
    _check(errors, c, "constellation.", "altitude_km", float, low=1e-6)
    _check(errors, c, "constellation.", "raan_spread_deg", float, low=0.0, high=360.0)
    _check(errors, c, "constellation.", "phase_offset_deg", float)

    if data["clients"] is not None:
        cl = data["clients"]
        _check(errors, cl, "clients.", "kind", str, choices=set(("uc1_pair", "geo", "lunar_surface")))
        _check(errors, cl, "clients.", "altitude_km", float, low=1e-6)
        _check(errors, cl, "clients.", "inclination_deg", float, low=0.0, high=180.0)
        _check(errors, cl, "clients.", "separation_deg", float)

    g = data["time_grid"]
    _check(errors, g, "time_grid.", "epoch_day_of_year", int, low=1, high=365)
    _check(errors, g, "time_grid.", "start_s", float)
    _check(errors, g, "time_grid.", "horizon_s", float, low=1e-9)
    _check(errors, g, "time_grid.", "step_s", float, low=1e-9)
    if (
        isinstance(g.get("horizon_s"), (int, float))
        and isinstance(g.get("step_s"), (int, float))
        and g["horizon_s"] < g["step_s"]
    ):
        errors.append(("time_grid.horizon_s", "must be >= step_s"))

    p = data["link_policy"]
    _check(errors, p, "link_policy.", "exclusion_angle_deg", float, low=0.0, high=180.0)
    _check(errors, p, "link_policy.", "blocking", str,
           choices={"receiver_only", "sda_strict"})
    _check(errors, p, "link_policy.", "max_range_km", float, low=1e-6)
    _check(errors, p, "link_policy.", "client_max_range_km", float, low=1e-6)
    _check(errors, p, "link_policy.", "grazing_margin_km", float, low=0.0)
    _check(errors, p, "link_policy.", "inter_ring_k", int, low=0)

    if isinstance(data["workload"], dict):
        w = data["workload"]
        wpath = "workload."
        _check(errors, w, wpath, "swath_km", float, low=1e-9)
        _check(errors, w, wpath, "ground_resolution_m", float, low=1e-9)
        _check(errors, w, wpath, "channels", int, low=1)
        _check(errors, w, wpath, "bits_per_channel", int, low=1)
        _check(errors, w, wpath, "interval_s", float, low=1e-9)
        if not isinstance(w.get("intensity"), dict):
            errors.append((wpath + "intensity", "must be an object with min/mean/max"))
        else:
            for key in ("min", "mean", "max"):
                _check(errors, w["intensity"], wpath + "intensity.", key, float, low=1e-9)
        if "n_sources" in w:
            _check(errors, w, wpath, "n_sources", int, low=1)
        if "object_size_MB" in w and w["object_size_MB"] is not None:
            _check(errors, w, wpath, "object_size_MB", float, low=0.0)

    d = data["design"]
    _check(errors, d, "design.", "year", int)
    _check(errors, d, "design.", "total_power_w", float, low=1e-9)
    _check(errors, d, "design.", "compute_type", str,
           choices={"gpu_equivalent", "cpu", "fpga", "asic"})
    _check(errors, d, "design.", "destination", str,
           choices={"leo", "geo", "lunar_surface"})
    _check(errors, d, "design.", "compute_power_fraction", float, low=1e-9, high=1.0)

    r = data["routing"]
    for end in ("src", "dst"):
        value = r.get(end)
        if not isinstance(value, list) or len(value) not in (2, 3) or not all(
            isinstance(v, (int, str)) for v in value
        ):
            errors.append((f"routing.{end}", "must be [plane, slot] or [group, plane, slot]"))

    if not isinstance(data["analyses"], list) or not data["analyses"]:
        errors.append(("analyses", "must be a non-empty list"))
    else:
        for i, a in enumerate(data["analyses"]):
            if a not in ANALYSES:
                errors.append((f"analyses[{i}]", f"unknown analysis {a!r}"))
        # Preserve the canonical execution order regardless of input order.
        data["analyses"] = [a for a in ANALYSES if a in data["analyses"]]

    if data["stream_rate_MBps"] is not None:
        _check(errors, data, "", "stream_rate_MBps", float, low=0.0, allow_none=True)

    _check(errors, data, "", "name", str)

    if errors:
        raise ScenarioError(errors)
    return Scenario(data=data)


def load_scenario(path: str | Path) -> Scenario:
    """Load and resolve a scenario JSON file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError([(str(p), f"cannot read scenario: {exc}")]) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            [(str(p), f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}")]
        ) from exc
    return resolve_scenario(raw)


def preset_names() -> list[str]:
    names = set()
    env_dir = os.environ.get(PRESET_DIR_ENV)
    if env_dir and Path(env_dir).is_dir():
        names |= {p.stem for p in Path(env_dir).glob("*.json")}
    pkg = resources.files("sdcsim").joinpath("data/presets")
    names |= {e.name[: -len(".json")] for e in pkg.iterdir() if e.name.endswith(".json")}
    return sorted(names)


def load_preset(name: str) -> Scenario:
    """Load a named scenario preset, preferring the SDCSIM_PRESET_DIR override."""
    env_dir = os.environ.get(PRESET_DIR_ENV)
    if env_dir:
        candidate = Path(env_dir) / f"{name}.json"
        if candidate.is_file():
            return load_scenario(candidate)
    entry = resources.files("sdcsim").joinpath(f"data/presets/{name}.json")
    if not entry.is_file():
        raise ScenarioError([("preset", f"unknown preset {name!r}; available: {preset_names()}")])
    return resolve_scenario(json.loads(entry.read_text()))


def preset_text(name: str) -> str:
    entry = resources.files("sdcsim").joinpath(f"data/presets/{name}.json")
    if not entry.is_file():
        raise ScenarioError([("preset", f"unknown preset {name!r}; available: {preset_names()}")])
    return entry.read_text()


def _workload_rows(scenario: Scenario) -> list[dict]:
    rows = []
    for name, w in scenario.workloads().items():
        rate = wl.stream_rate(w)
        d = wl.compute_demand(rate, w.intensity.mean_gflop_per_mb, w.n_sources)
        rows.append(
            {
                "stream": name,
                "n_sources": w.n_sources,
                "data_rate_MBps": rate,
                "aggregate_data_rate_MBps": d.aggregate_data_rate_MBps,
                "intensity_gflop_per_mb": w.intensity.mean_gflop_per_mb,
                "compute_gflops": d.compute_gflops,
                "aggregate_compute_gflops": d.aggregate_compute_gflops,
                "aggregate_compute_gflops_min": rate
                * w.intensity.min_gflop_per_mb
                * w.n_sources,
                "aggregate_compute_gflops_max": rate
                * w.intensity.max_gflop_per_mb
                * w.n_sources,
            }
        )
    if len(rows) > 1:
        rows.append(
            {
                "stream": "combined",
                "n_sources": sum(r["n_sources"] for r in rows),
                "data_rate_MBps": sum(r["data_rate_MBps"] for r in rows),
                "aggregate_data_rate_MBps": sum(
                    r["aggregate_data_rate_MBps"] for r in rows
                ),
                "intensity_gflop_per_mb": rows[0]["intensity_gflop_per_mb"],
                "compute_gflops": sum(r["compute_gflops"] for r in rows),
                "aggregate_compute_gflops": sum(
                    r["aggregate_compute_gflops"] for r in rows
                ),
                "aggregate_compute_gflops_min": sum(
                    r["aggregate_compute_gflops_min"] for r in rows
                ),
                "aggregate_compute_gflops_max": sum(
                    r["aggregate_compute_gflops_max"] for r in rows
                ),
            }
        )
    return rows


def primary_demand(scenario: Scenario) -> wl.WorkloadDemand:
    """Demand of the scenario's requirement-driving stream (the first one)."""
    name, w = next(iter(scenario.workloads().items()))
    return wl.compute_demand(
        wl.stream_rate(w), w.intensity.mean_gflop_per_mb, w.n_sources
    )


def default_stream_rate(scenario: Scenario) -> float:
    """Per-source rate of the requirement-driving stream, used for buffers."""
    explicit = scenario.data["stream_rate_MBps"]
    if explicit is not None:
        return float(explicit)
    _, w = next(iter(scenario.workloads().items()))
    return wl.stream_rate(w)


def run(scenario: Scenario, roadmaps: RoadmapSet | None = None) -> Report:
    """Execute the requested analyses in fixed order and assemble the report."""
    analyses = scenario.data["analyses"]
    results: dict = {}
    snapshots = None

    needs_network = any(a in analyses for a in ("topology", "outage", "routing"))
    if needs_network:
        snapshots = snapshots_over_grid(
            scenario.constellation(),
            scenario.time_grid(),
            scenario.link_policy(),
            scenario.clients(),
        )

    if "topology" in analyses:
        per_epoch = []
        for snap in snapshots:
            counts = {"up": 0, "sun_blocked": 0, "out_of_range": 0, "occluded": 0}
            for e in snap.edges:
                counts[e.status] += 1
            per_epoch.append(
                {
                    "t": snap.t,
                    "edges_up": counts["up"],
                    "edges_sun_blocked": counts["sun_blocked"],
                    "edges_out_of_range": counts["out_of_range"],
                    "edges_occluded": counts["occluded"],
                }
            )
        profiles = classify_routers(snapshots)
        results["topology"] = {
            "node_count": len(snapshots[0].nodes),
            "epoch_count": len(snapshots),
            "per_epoch": per_epoch,
            "router_classes": [
                {
                    "node": format_node(n),
                    "quasi_static_degree": prof.quasi_static_degree,
                    "dynamic_degree": prof.dynamic_degree,
                }
                for n, prof in sorted(profiles.items())
            ],
        }

    if "outage" in analyses:
        rate = default_stream_rate(scenario)
        contacts = contacts_from_snapshots(snapshots, scenario.time_grid().step_s)
        report = buffer_requirements(contacts, rate)
        results["outage"] = {
            "stream_rate_MBps": rate,
            "links": [
                {
                    "link_id": e.link_id,
                    "kind": e.kind,
                    "max_outage_s": e.max_contiguous_outage_s,
                    "outage_fraction": e.outage_fraction,
                    "buffer_MB": e.required_buffer_MB,
                }
                for e in report.entries
            ],
        }

    if "routing" in analyses:
        src, dst = scenario.routing_nodes()
        per_epoch = []
        reachable_lat = []
        for snap in snapshots:
            if src not in snap.nodes or dst not in snap.nodes:
                raise ScenarioError(
                    [("routing", f"{format_node(src)} or {format_node(dst)} not in topology")]
                )
            r = route(snap, src, dst)
            per_epoch.append(
                {
                    "t": snap.t,
                    "reachable": r.reachable,
                    "latency_s": r.total_latency_s,
                    "hop_count": r.hop_count,
                    "blocked_detour": r.blocked_detour,
                }
            )
            if r.reachable:
                reachable_lat.append(r.total_latency_s)
        results["routing"] = {
            "src": format_node(src),
            "dst": format_node(dst),
            "epoch_count": len(per_epoch),
            "unreachable_fraction": 1.0 - len(reachable_lat) / len(per_epoch),
            "min_latency_s": min(reachable_lat) if reachable_lat else None,
            "max_latency_s": max(reachable_lat) if reachable_lat else None,
            "mean_latency_s": (
                sum(reachable_lat) / len(reachable_lat) if reachable_lat else None
            ),
            "per_epoch": per_epoch,
        }

    if "workload" in analyses:
        results["workload"] = {"streams": _workload_rows(scenario)}

    if "forecast" in analyses:
        fom = forecast(scenario.design(), primary_demand(scenario), roadmaps)
        results["forecast"] = {
            "available_compute_tflops": fom.available_compute_tflops,
            "required_compute_tflops": fom.required_compute_tflops,
            "satellite_mass_kg": fom.satellite_mass_kg,
            "compute_efficiency_w_per_tflops": fom.compute_efficiency_w_per_tflops,
            "cost_of_power_eur_per_w": fom.cost_of_power_eur_per_w,
            "cost_of_compute_eur_per_tflops": fom.cost_of_compute_eur_per_tflops,
            "total_cost_eur": fom.total_cost_eur,
            "compute_shortfall": fom.compute_shortfall,
        }

    data = {
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "scenario": scenario.data,
        "results": results,
    }
    return Report(data=data, content_hash=content_hash(data))


def _axis_lookup(data: dict, axis: str):
    parts = axis.split(".")
    node = data
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise ScenarioError([(axis, "axis path does not exist")])
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ScenarioError([(axis, "axis path does not exist")])
    if isinstance(node[leaf], bool) or not isinstance(node[leaf], (int, float)):
        raise ScenarioError([(axis, "axis must address a numeric scalar field")])
    return node, leaf


def sweep(
    scenario: Scenario,
    axis: str,
    values: list[float],
    roadmaps: RoadmapSet | None = None,
) -> tuple[list[Report], list[dict]]:
    """One run per axis value plus a figure-of-merit summary table, ordered by
    the input value order."""
    node, leaf = _axis_lookup(scenario.data, axis)
    original_is_int = isinstance(node[leaf], int)
    reports: list[Report] = []
    summary: list[dict] = []
    for value in values:
        data = copy.deepcopy(scenario.data)
        target, key = _axis_lookup(data, axis)
        if original_is_int:
            if float(value) != int(value):
                raise ScenarioError([(axis, f"value {value} must be an integer")])
            target[key] = int(value)
        else:
            target[key] = float(value)
        report = run(resolve_scenario(data), roadmaps)
        reports.append(report)
        row = {"axis": axis, "value": target[key]}
        results = report.data["results"]
        if "forecast" in results:
            row.update(results["forecast"])
        if "outage" in results and results["outage"]["links"]:
            row["max_outage_fraction"] = max(
                l["outage_fraction"] for l in results["outage"]["links"]
            )
        if "routing" in results:
            row["max_latency_s"] = results["routing"]["max_latency_s"]
        summary.append(row)
    return reports, summary


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    path.write_bytes(buf.getvalue().encode("utf-8"))


def emit(report: Report, fmt: str = "json", out_dir: str | Path = ".") -> list[Path]:
    """Write the report: a single JSON document, or one RFC-4180 CSV per table."""
    if fmt not in ("json", "csv"):
        raise ValueError(f"unknown format {fmt!r}, expected json or csv")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if fmt == "json":
        path = out / "report.json"
        path.write_bytes(report.to_json_bytes())
        return [path]

    results = report.data["results"]
    if "topology" in results:
        path = out / "topology.csv"
        _write_csv(
            path,
            ["t", "edges_up", "edges_sun_blocked", "edges_out_of_range", "edges_occluded"],
            [
                [r["t"], r["edges_up"], r["edges_sun_blocked"],
                 r["edges_out_of_range"], r["edges_occluded"]]
                for r in results["topology"]["per_epoch"]
            ],
        )
        written.append(path)
    if "outage" in results:
        path = out / "outage.csv"
        _write_csv(
            path,
            OUTAGE_CSV_HEADER,
            [
                [r["link_id"], r["max_outage_s"], r["outage_fraction"], r["buffer_MB"]]
                for r in results["outage"]["links"]
            ],
        )
        written.append(path)
    if "routing" in results:
        path = out / "routing.csv"
        _write_csv(
            path,
            ["t", "reachable", "latency_s", "hop_count", "blocked_detour"],
            [
                [r["t"], r["reachable"], "" if r["latency_s"] is None else r["latency_s"],
                 r["hop_count"], r["blocked_detour"]]
                for r in results["routing"]["per_epoch"]
            ],
        )
        written.append(path)
    if "workload" in results:
        path = out / "workload.csv"
        header = [
            "stream", "n_sources", "data_rate_MBps", "aggregate_data_rate_MBps",
            "intensity_gflop_per_mb", "compute_gflops", "aggregate_compute_gflops",
            "aggregate_compute_gflops_min", "aggregate_compute_gflops_max",
        ]
        _write_csv(
            path, header,
            [[r[h] for h in header] for r in results["workload"]["streams"]],
        )
        written.append(path)
    if "forecast" in results:
        path = out / "forecast.csv"
        _write_csv(
            path,
            ["metric", "value"],
            [[k, v] for k, v in sorted(results["forecast"].items())],
        )
        written.append(path)
    return written


def emit_sweep_summary(summary: list[dict], out_dir: str | Path = ".") -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    keys: list[str] = []
    for row in summary:
        for k in row:
            if k not in keys:
                keys.append(k)
    path = out / "sweep.csv"
    _write_csv(
        path, keys, [["" if r.get(k) is None else r.get(k) for k in keys] for r in summary]
    )
    return path

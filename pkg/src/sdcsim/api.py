"""Stateless HTTP/JSON service exposing forecast and network evaluation.

Every handler funnels into the same pure functions as the CLI, so API numbers
are bit-for-bit identical to CLI report numbers. Error contract: 400 with
field-path diagnostics for invalid bodies, 422 for roadmap-validity-range
violations, standard JSON 404 elsewhere.
"""

from __future__ import annotations

import copy
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .astro import orbital_period
from .forecast import RoadmapRangeError, RoadmapSet, forecast, load_default_roadmaps
from .netsim import (
    buffer_requirements,
    contacts_from_snapshots,
    format_node,
    snapshots_over_grid,
    worst_case_latency,
)
from .scenario import (
    Scenario,
    ScenarioError,
    default_stream_rate,
    load_preset,
    preset_names,
    primary_demand,
    resolve_scenario,
)

DEFAULT_HORIZON_CAP_PERIODS = 2.0


def _error_response(status: int, errors: list[tuple[str, str]]) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"errors": [{"path": p, "message": m} for p, m in errors]},
    )


def _fom_payload(scenario: Scenario, roadmaps: RoadmapSet) -> dict:
    fom = forecast(scenario.design(), primary_demand(scenario), roadmaps)
    return {
        "available_compute_tflops": fom.available_compute_tflops,
        "required_compute_tflops": fom.required_compute_tflops,
        "satellite_mass_kg": fom.satellite_mass_kg,
        "compute_efficiency_w_per_tflops": fom.compute_efficiency_w_per_tflops,
        "cost_of_power_eur_per_w": fom.cost_of_power_eur_per_w,
        "cost_of_compute_eur_per_tflops": fom.cost_of_compute_eur_per_tflops,
        "total_cost_eur": fom.total_cost_eur,
        "compute_shortfall": fom.compute_shortfall,
    }


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception as exc:
        raise ScenarioError([("body", f"invalid JSON body: {exc}")]) from exc
    if not isinstance(body, dict):
        raise ScenarioError([("body", "request body must be a JSON object")])
    return body


def create_app(
    roadmaps: RoadmapSet | None = None,
    ui_dir: str | Path | None = None,
    horizon_cap_periods: float = DEFAULT_HORIZON_CAP_PERIODS,
) -> FastAPI:
    app = FastAPI(title="sdcsim", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    maps = roadmaps if roadmaps is not None else load_default_roadmaps()

    @app.exception_handler(ScenarioError)
    async def scenario_error(_, exc: ScenarioError):
        return _error_response(400, exc.errors)

    @app.exception_handler(RoadmapRangeError)
    async def range_error(_, exc: RoadmapRangeError):
        return _error_response(422, [("design.year", str(exc))])

    @app.post("/api/forecast")
    async def api_forecast(request: Request):
        body = await _json_body(request)
        unknown = set(body) - {"design", "workload"}
        if unknown:
            raise ScenarioError([(k, "unknown key") for k in sorted(unknown)])
        fragment: dict = {"analyses": ["workload", "forecast"]}
        if "design" in body:
            fragment["design"] = body["design"]
        if "workload" in body:
            fragment["workload"] = body["workload"]
        scenario = resolve_scenario(fragment)
        return _fom_payload(scenario, maps)

    @app.post("/api/network/summary")
    async def api_network_summary(request: Request):
        body = await _json_body(request)
        allowed = {
            "constellation",
            "clients",
            "link_policy",
            "time_grid",
            "routing",
            "stream_rate_MBps",
        }
        unknown = set(body) - allowed
        if unknown:
            raise ScenarioError([(k, "unknown key") for k in sorted(unknown)])
        fragment = copy.deepcopy(body)
        fragment["analyses"] = ["topology", "outage", "routing"]
        scenario = resolve_scenario(fragment)

        grid = scenario.time_grid()
        altitude = scenario.data["constellation"]["altitude_km"]
        cap = horizon_cap_periods * orbital_period(altitude)
        if grid.horizon_s > cap:
            raise ScenarioError(
                [
                    (
                        "time_grid.horizon_s",
                        f"horizon {grid.horizon_s} s exceeds the interactive cap "
                        f"of {cap:.0f} s ({horizon_cap_periods} orbital periods)",
                    )
                ]
            )

        snapshots = snapshots_over_grid(
            scenario.constellation(), grid, scenario.link_policy(), scenario.clients()
        )
        totals = {"up": 0, "sun_blocked": 0, "out_of_range": 0, "occluded": 0}
        for snap in snapshots:
            for e in snap.edges:
                totals[e.status] += 1
        rate = default_stream_rate(scenario)
        contacts = contacts_from_snapshots(snapshots, grid.step_s)
        outage = buffer_requirements(contacts, rate)
        intervals_by_link = {
            entry.link_id: ci
            for entry, (_, ci) in zip(outage.entries, contacts)
        }

        src, dst = scenario.routing_nodes()
        worst = None
        if src in snapshots[0].nodes and dst in snapshots[0].nodes:
            stats = worst_case_latency(
                scenario.constellation(), src, dst, grid, snapshots=snapshots
            )
            worst = {
                "src": format_node(src),
                "dst": format_node(dst),
                "epoch_count": stats.n_epochs,
                "unreachable_fraction": stats.unreachable_fraction,
                "min_latency_s": stats.min_latency_s,
                "max_latency_s": stats.max_latency_s,
                "mean_latency_s": stats.mean_latency_s,
                "max_route": (
                    {
                        "t": stats.max_epoch_t,
                        "latency_s": stats.max_route.total_latency_s,
                        "hop_count": stats.max_route.hop_count,
                        "blocked_detour": stats.max_route.blocked_detour,
                        "path": [format_node(n) for n in stats.max_route.path],
                    }
                    if stats.max_route is not None
                    else None
                ),
            }

        return {
            "snapshots": {
                "epoch_count": len(snapshots),
                "node_count": len(snapshots[0].nodes),
                "step_s": grid.step_s,
                "edge_status_totals": totals,
            },
            "horizon": list(intervals_by_link[outage.entries[0].link_id].horizon)
            if outage.entries
            else [grid.start_s, grid.start_s + grid.n_samples * grid.step_s],
            "outage": [
                {
                    "link_id": e.link_id,
                    "kind": e.kind,
                    "max_outage_s": e.max_contiguous_outage_s,
                    "outage_fraction": e.outage_fraction,
                    "buffer_MB": e.required_buffer_MB,
                    "up_intervals": [
                        list(iv) for iv in intervals_by_link[e.link_id].intervals
                    ],
                }
                for e in outage.entries
            ],
            "stream_rate_MBps": rate,
            "worst_case_route": worst,
        }

    @app.get("/api/presets")
    async def api_presets():
        entries = []
        for name in preset_names():
            scenario = load_preset(name)
            entries.append(
                {
                    "name": name,
                    "design": scenario.data["design"],
                    "workload": scenario.data["workload"],
                }
            )
        return {"presets": entries}

    @app.get("/api/roadmaps")
    async def api_roadmaps():
        return maps.to_dict()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


app = create_app()

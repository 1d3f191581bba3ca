"""Time-varying network graph, sun-outage-aware routing, latency statistics,
and caching-buffer sizing.

Each epoch yields an independent snapshot graph whose edge weights are
propagation delays (range / c). Links change on a scale of minutes while
packets transit in milliseconds, so per-snapshot static routing is adequate;
the snapshot keeps every sampled link with its status and routing simply
ignores edges that are not up.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .astro import Constellation, Epoch, TimeGrid, propagate, sun_direction
from .constants import EARTH_RADIUS_KM, SPEED_OF_LIGHT_KM_S
from .isl import (
    STATUS_SUN_BLOCKED,
    STATUS_UP,
    KIND_CLIENT_ACCESS,
    ContactIntervals,
    DirectedLink,
    LinkPolicy,
    _runs_to_intervals,
    _segment_closest_approach_km,
    neighbor_topology,
    sample_link_arrays,
)

NodeId = tuple[str, int, int]


def node_id(group: str, sat_id: tuple[int, int]) -> NodeId:
    return (group, sat_id[0], sat_id[1])


def format_node(node: NodeId) -> str:
    return f"{node[0]}-{node[1]}-{node[2]}"


def format_link(tx: NodeId, rx: NodeId) -> str:
    return f"{format_node(tx)}>{format_node(rx)}"


@dataclass(frozen=True)
class Edge:
    tx: NodeId
    rx: NodeId
    kind: str
    range_km: float
    delay_s: float
    status: str


@dataclass(frozen=True)
class TopologySnapshot:
    t: float
    nodes: tuple[NodeId, ...]
    edges: tuple[Edge, ...]

    def up_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.status == STATUS_UP)


@dataclass(frozen=True)
class RouteResult:
    """Outcome of one minimum-latency query.

    An unreachable destination is a result, not an error: reachable is False,
    latency is None, and blocked_geometric_edges lists the not-up edges on the
    pure-geometry shortest path that caused the failure. blocked_detour is set
    whenever the pure-geometry shortest path runs through a blocked edge, i.e.
    the returned path (if any) is a forced detour.
    """

    src: NodeId
    dst: NodeId
    path: tuple[NodeId, ...]
    total_latency_s: float | None
    hop_count: int
    blocked_detour: bool
    reachable: bool
    blocked_geometric_edges: tuple[tuple[NodeId, NodeId], ...] = ()


@dataclass(frozen=True)
class LatencyStats:
    src: NodeId
    dst: NodeId
    n_epochs: int
    unreachable_fraction: float
    min_latency_s: float | None
    max_latency_s: float | None
    mean_latency_s: float | None
    max_route: RouteResult | None
    max_epoch_t: float | None


@dataclass(frozen=True)
class OutageEntry:
    link_id: str
    kind: str
    max_contiguous_outage_s: float
    outage_fraction: float
    required_buffer_MB: float


@dataclass(frozen=True)
class OutageReport:
    stream_rate_MBps: float
    entries: tuple[OutageEntry, ...]


@dataclass(frozen=True)
class RouterProfile:
    quasi_static_degree: int
    dynamic_degree: int


def _client_links(
    sdc_pos: dict[NodeId, np.ndarray],
    client_pos: dict[NodeId, np.ndarray],
    policy: LinkPolicy,
) -> list[tuple[NodeId, NodeId]]:
    """Each client points one terminal at its nearest reachable SDC node; both
    directions of that access link are sampled."""
    sdc_nodes = sorted(sdc_pos)
    sdc_arr = np.array([sdc_pos[n] for n in sdc_nodes])
    limit = EARTH_RADIUS_KM + policy.grazing_margin_km
    pairs: list[tuple[NodeId, NodeId]] = []
    for cnode in sorted(client_pos):
        cpos = client_pos[cnode]
        rng = np.linalg.norm(sdc_arr - cpos[None, :], axis=-1)
        clear = _segment_closest_approach_km(
            np.broadcast_to(cpos, sdc_arr.shape), sdc_arr
        )
        ok = (rng <= policy.client_max_range_km) & (clear >= limit)
        if not ok.any():
            continue
        best = int(np.argmin(np.where(ok, rng, np.inf)))
        pairs.append((cnode, sdc_nodes[best]))
        pairs.append((sdc_nodes[best], cnode))
    return pairs


def snapshot(
    constellation: Constellation,
    epoch: Epoch,
    policy: LinkPolicy = LinkPolicy(),
    clients: Constellation | None = None,
) -> TopologySnapshot:
    """Graph of all sampled links at one epoch with delay weights and status."""
    states = propagate(constellation, epoch)
    sun = sun_direction(epoch)
    by_id = {s.sat_id: s for s in states}
    links = neighbor_topology(constellation, states, policy)

    batches: list[tuple[NodeId, NodeId, str, np.ndarray, np.ndarray, float]] = [
        (
            node_id(constellation.name, l.tx),
            node_id(constellation.name, l.rx),
            l.kind,
            by_id[l.tx].position_eci_km,
            by_id[l.rx].position_eci_km,
            policy.max_range_km,
        )
        for l in links
    ]

    nodes = [node_id(constellation.name, sid) for sid in constellation.sat_ids()]
    if clients is not None:
        if clients.name == constellation.name:
            raise ValueError("client constellation must use a distinct name")
        client_states = propagate(clients, epoch)
        sdc_pos = {node_id(constellation.name, s.sat_id): s.position_eci_km for s in states}
        cl_pos = {node_id(clients.name, s.sat_id): s.position_eci_km for s in client_states}
        pos_all = {**sdc_pos, **cl_pos}
        for tx, rx in _client_links(sdc_pos, cl_pos, policy):
            batches.append(
                (tx, rx, KIND_CLIENT_ACCESS, pos_all[tx], pos_all[rx],
                 policy.client_max_range_km)
            )
        nodes += [node_id(clients.name, sid) for sid in clients.sat_ids()]

    edges: list[Edge] = []
    for limit in sorted({b[5] for b in batches}):
        group = [b for b in batches if b[5] == limit]
        tx_arr = np.array([b[3] for b in group])
        rx_arr = np.array([b[4] for b in group])
        sun_arr = np.broadcast_to(sun, tx_arr.shape)
        rng, _, _, status = sample_link_arrays(
            tx_arr, rx_arr, sun_arr, policy, max_range_km=limit
        )
        for i, (tx, rx, kind, _, _, _) in enumerate(group):
            edges.append(
                Edge(
                    tx=tx,
                    rx=rx,
                    kind=kind,
                    range_km=float(rng[i]),
                    delay_s=float(rng[i]) / SPEED_OF_LIGHT_KM_S,
                    status=str(status[i]),
                )
            )
    edges.sort(key=lambda e: (e.tx, e.rx, e.kind))
    return TopologySnapshot(t=epoch.t, nodes=tuple(sorted(nodes)), edges=tuple(edges))


def _dijkstra_lex(
    adjacency: dict[NodeId, list[tuple[NodeId, float]]],
    src: NodeId,
    dst: NodeId,
) -> tuple[tuple[NodeId, ...], float] | None:
    """Minimum-latency path; equal-latency ties resolve to the lexicographically
    smallest node sequence. Returns None when dst is unreachable."""
    heap: list[tuple[float, tuple[NodeId, ...]]] = [(0.0, (src,))]
    settled: set[NodeId] = set()
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if node in settled:
            continue
        settled.add(node)
        if node == dst:
            return path, dist
        for neighbor, weight in adjacency.get(node, ()):
            if neighbor not in settled:
                heapq.heappush(heap, (dist + weight, path + (neighbor,)))
    return None


def _adjacency(
    edges: tuple[Edge, ...], up_only: bool, per_hop_delay_s: float = 0.0
) -> dict[NodeId, list[tuple[NodeId, float]]]:
    adj: dict[NodeId, list[tuple[NodeId, float]]] = {}
    best: dict[tuple[NodeId, NodeId], float] = {}
    for e in edges:
        if up_only and e.status != STATUS_UP:
            continue
        key = (e.tx, e.rx)
        if key not in best or e.delay_s < best[key]:
            best[key] = e.delay_s
    for (tx, rx), w in best.items():
        adj.setdefault(tx, []).append((rx, w + per_hop_delay_s))
    for lst in adj.values():
        lst.sort()
    return adj


def route(
    snap: TopologySnapshot,
    src: NodeId,
    dst: NodeId,
    per_hop_delay_s: float = 0.0,
) -> RouteResult:
    """Minimum-latency route over up edges only, with detour diagnosis.

    per_hop_delay_s adds a constant node processing/queuing delay to every
    hop; it participates in path selection, not just in the reported total.
    """
    if src not in snap.nodes:
        raise ValueError(f"source {src} not in snapshot nodes")
    if dst not in snap.nodes:
        raise ValueError(f"destination {dst} not in snapshot nodes")
    if per_hop_delay_s < 0:
        raise ValueError("per_hop_delay_s must be >= 0")
    if src == dst:
        return RouteResult(
            src=src, dst=dst, path=(), total_latency_s=0.0, hop_count=0,
            blocked_detour=False, reachable=True,
        )

    status_by_pair: dict[tuple[NodeId, NodeId], str] = {}
    for e in snap.edges:
        key = (e.tx, e.rx)
        if key not in status_by_pair or e.status == STATUS_UP:
            status_by_pair[key] = e.status

    geometric = _dijkstra_lex(
        _adjacency(snap.edges, up_only=False, per_hop_delay_s=per_hop_delay_s),
        src,
        dst,
    )
    blocked_geo: tuple[tuple[NodeId, NodeId], ...] = ()
    if geometric is not None:
        geo_path, _ = geometric
        blocked_geo = tuple(
            (a, b)
            for a, b in zip(geo_path, geo_path[1:])
            if status_by_pair.get((a, b)) != STATUS_UP
        )

    found = _dijkstra_lex(
        _adjacency(snap.edges, up_only=True, per_hop_delay_s=per_hop_delay_s),
        src,
        dst,
    )
    if found is None:
        return RouteResult(
            src=src, dst=dst, path=(), total_latency_s=None, hop_count=0,
            blocked_detour=bool(blocked_geo), reachable=False,
            blocked_geometric_edges=blocked_geo,
        )
    path, latency = found
    return RouteResult(
        src=src, dst=dst, path=path, total_latency_s=latency,
        hop_count=len(path) - 1, blocked_detour=bool(blocked_geo), reachable=True,
        blocked_geometric_edges=blocked_geo,
    )


def snapshots_over_grid(
    constellation: Constellation,
    grid: TimeGrid,
    policy: LinkPolicy = LinkPolicy(),
    clients: Constellation | None = None,
) -> list[TopologySnapshot]:
    return [
        snapshot(constellation, epoch, policy, clients) for epoch in grid.epochs()
    ]


def worst_case_latency(
    constellation: Constellation,
    src: NodeId,
    dst: NodeId,
    grid: TimeGrid,
    policy: LinkPolicy = LinkPolicy(),
    clients: Constellation | None = None,
    snapshots: list[TopologySnapshot] | None = None,
    per_hop_delay_s: float = 0.0,
) -> LatencyStats:
    """route() evaluated at every grid epoch, aggregated.

    Latency extrema cover reachable epochs only; unreachable epochs are
    reported as a fraction. Pass precomputed snapshots to avoid re-propagating.
    """
    if snapshots is None:
        snapshots = snapshots_over_grid(constellation, grid, policy, clients)
    reachable: list[tuple[float, RouteResult]] = []
    for snap in snapshots:
        result = route(snap, src, dst, per_hop_delay_s)
        if result.reachable:
            reachable.append((snap.t, result))
    if not reachable:
        return LatencyStats(
            src=src, dst=dst, n_epochs=len(snapshots), unreachable_fraction=1.0,
            min_latency_s=None, max_latency_s=None, mean_latency_s=None,
            max_route=None, max_epoch_t=None,
        )
    latencies = [r.total_latency_s for _, r in reachable]
    max_t, max_route = max(reachable, key=lambda item: item[1].total_latency_s)
    return LatencyStats(
        src=src,
        dst=dst,
        n_epochs=len(snapshots),
        unreachable_fraction=1.0 - len(reachable) / len(snapshots),
        min_latency_s=float(min(latencies)),
        max_latency_s=float(max(latencies)),
        mean_latency_s=float(sum(latencies) / len(latencies)),
        max_route=max_route,
        max_epoch_t=max_t,
    )


def contacts_from_snapshots(
    snapshots: list[TopologySnapshot], step_s: float
) -> list[tuple[Edge, ContactIntervals]]:
    """Up-time intervals for every distinct directed link seen over the horizon.

    A link absent from a snapshot (e.g. a cross-plane link whose partner
    changed) counts as down for that sample.
    """
    if not snapshots:
        raise ValueError("need at least one snapshot")
    times = np.array([s.t for s in snapshots])
    order: list[tuple[NodeId, NodeId]] = []
    meta: dict[tuple[NodeId, NodeId], Edge] = {}
    up: dict[tuple[NodeId, NodeId], np.ndarray] = {}
    for i, snap in enumerate(snapshots):
        for e in snap.edges:
            key = (e.tx, e.rx)
            if key not in meta:
                meta[key] = e
                order.append(key)
                up[key] = np.zeros(len(snapshots), dtype=bool)
            if e.status == STATUS_UP:
                up[key][i] = True
    horizon = (float(times[0]), float(times[0] + len(snapshots) * step_s))
    out = []
    for key in order:
        e = meta[key]
        intervals = _runs_to_intervals(up[key], times, step_s)
        link = DirectedLink(tx=e.tx, rx=e.rx, kind=e.kind)
        out.append((e, ContactIntervals(link=link, intervals=intervals, horizon=horizon)))
    return out


def buffer_requirements(
    contacts: list[ContactIntervals] | list[tuple[Edge, ContactIntervals]],
    stream_rate_MBps: float,
) -> OutageReport:
    """Caching memory needed to ride out the worst contact gap of each link:
    buffer = stream rate x max contiguous outage (horizon edges included)."""
    if stream_rate_MBps < 0:
        raise ValueError(f"stream rate must be >= 0, got {stream_rate_MBps}")
    entries = []
    for item in contacts:
        ci = item[1] if isinstance(item, tuple) else item
        link = ci.link
        gap = ci.max_contiguous_outage_s()
        entries.append(
            OutageEntry(
                link_id=_link_label(link),
                kind=link.kind,
                max_contiguous_outage_s=gap,
                outage_fraction=ci.outage_fraction(),
                required_buffer_MB=stream_rate_MBps * gap,
            )
        )
    return OutageReport(stream_rate_MBps=stream_rate_MBps, entries=tuple(entries))


def _link_label(link: DirectedLink) -> str:
    def fmt(end) -> str:
        if isinstance(end, tuple) and len(end) == 3:
            return format_node(end)
        return f"{end[0]}-{end[1]}"

    return f"{fmt(link.tx)}>{fmt(link.rx)}"


def classify_routers(
    snapshots: list[TopologySnapshot], persistence: float = 0.9
) -> dict[NodeId, RouterProfile]:
    """Split each node's outgoing links into quasi-static and dynamic.

    A link is quasi-static when it exists (sun outages ignored, so up or
    sun_blocked) in at least `persistence` of the snapshots; anything more
    transient, such as access links chasing the nearest node, is dynamic.
    """
    if not snapshots:
        raise ValueError("need at least one snapshot")
    present: dict[tuple[NodeId, NodeId], int] = {}
    for snap in snapshots:
        for e in snap.edges:
            if e.status in (STATUS_UP, STATUS_SUN_BLOCKED):
                key = (e.tx, e.rx)
                present[key] = present.get(key, 0) + 1
    nodes = sorted({n for s in snapshots for n in s.nodes})
    quasi: dict[NodeId, int] = {n: 0 for n in nodes}
    dynamic: dict[NodeId, int] = {n: 0 for n in nodes}
    for (tx, _), count in present.items():
        if count / len(snapshots) >= persistence:
            quasi[tx] += 1
        else:
            dynamic[tx] += 1
    return {n: RouterProfile(quasi[n], dynamic[n]) for n in nodes}

"""Directed free-space-optical link geometry, solar stray-light blocking, and
contact-interval extraction.

A directed link tx -> rx points each terminal at the other: the receiver
boresight looks from rx toward tx. A terminal shuts down entirely whenever its
boresight comes within the solar exclusion cone (default 30 deg, measured
boresight-to-Sun); there is no gradual degradation. Because the forward and
reverse receiver boresights of a neighbor pair are anti-parallel, at most one
direction of a link can be sun-blocked at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .astro import Constellation, SatelliteState, SatId, TimeGrid, positions_over_grid, sun_over_grid
from .constants import EARTH_RADIUS_KM

STATUS_UP = "up"
STATUS_SUN_BLOCKED = "sun_blocked"
STATUS_OUT_OF_RANGE = "out_of_range"
STATUS_OCCLUDED = "occluded"

KIND_INTRA_RING = "intra_ring"
KIND_INTER_RING = "inter_ring"
KIND_CLIENT_ACCESS = "client_access"
KIND_GROUND = "ground"

RECEIVER_ONLY = "receiver_only"
SDA_STRICT = "sda_strict"


@dataclass(frozen=True)
class LinkPolicy:
    """Knobs governing link availability.

    blocking selects which terminals the exclusion cone applies to:
    receiver_only blocks a direction only when the receiver looks sunward,
    sda_strict when either terminal does. A boresight-Sun angle exactly equal
    to the threshold does not block (the cone is an open interval).
    """

    exclusion_angle_deg: float = 30.0
    blocking: str = RECEIVER_ONLY
    max_range_km: float = 6000.0
    client_max_range_km: float = 6000.0
    grazing_margin_km: float = 100.0
    inter_ring_k: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.exclusion_angle_deg <= 180.0:
            raise ValueError(
                f"exclusion_angle_deg must be in [0, 180], got {self.exclusion_angle_deg}"
            )
        if self.blocking not in (RECEIVER_ONLY, SDA_STRICT):
            raise ValueError(f"unknown blocking policy {self.blocking!r}")
        if self.max_range_km <= 0 or self.client_max_range_km <= 0:
            raise ValueError("link ranges must be positive")
        if self.inter_ring_k < 0:
            raise ValueError("inter_ring_k must be >= 0")


@dataclass(frozen=True)
class DirectedLink:
    tx: SatId
    rx: SatId
    kind: str

    def __post_init__(self) -> None:
        if self.tx == self.rx:
            raise ValueError(f"link endpoints must differ, got {self.tx} twice")


@dataclass(frozen=True)
class DirectedLinkSample:
    """Geometry and availability of one directed link at one instant."""

    t: float
    range_km: float
    rx_boresight_sun_angle_deg: float
    tx_boresight_sun_angle_deg: float
    status: str


@dataclass(frozen=True)
class ContactIntervals:
    """Half-open [start, end) up-time intervals of one link on a sampling grid."""

    link: DirectedLink
    intervals: tuple[tuple[float, float], ...]
    horizon: tuple[float, float]

    def up_seconds(self) -> float:
        return sum(e - s for s, e in self.intervals)

    def outage_fraction(self) -> float:
        start, end = self.horizon
        total = end - start
        if total <= 0:
            return 0.0
        return 1.0 - self.up_seconds() / total

    def max_contiguous_outage_s(self) -> float:
        """Longest gap with no contact, counting the horizon edges."""
        start, end = self.horizon
        if not self.intervals:
            return end - start
        gaps = [self.intervals[0][0] - start]
        for (_, prev_end), (next_start, _) in zip(self.intervals, self.intervals[1:]):
            gaps.append(next_start - prev_end)
        gaps.append(end - self.intervals[-1][1])
        return max(gaps)


def _segment_closest_approach_km(
    tx_pos: np.ndarray, rx_pos: np.ndarray
) -> np.ndarray:
    """Distance of the geocenter to the tx-rx segment (not the infinite line)."""
    d = rx_pos - tx_pos
    dd = np.sum(d * d, axis=-1)
    # Degenerate zero-length segments fall back to the endpoint distance.
    s = np.where(dd > 0.0, -np.sum(tx_pos * d, axis=-1) / np.where(dd > 0.0, dd, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    closest = tx_pos + s[..., None] * d
    return np.linalg.norm(closest, axis=-1)


def _angle_to_sun_deg(directions: np.ndarray, sun: np.ndarray) -> np.ndarray:
    cosang = np.sum(directions * sun, axis=-1)
    return np.degrees(np.arccos(np.clip(cosang, -1.0, 1.0)))


def sample_link_arrays(
    tx_pos: np.ndarray,
    rx_pos: np.ndarray,
    sun: np.ndarray,
    policy: LinkPolicy,
    max_range_km: float | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized link sampling over matching leading dimensions.

    Returns (range_km, rx_angle_deg, tx_angle_deg, status) arrays. Status
    priority: occluded, then out_of_range, then sun_blocked, then up.
    """
    max_range = policy.max_range_km if max_range_km is None else max_range_km
    d = rx_pos - tx_pos
    rng = np.linalg.norm(d, axis=-1)
    if np.any(rng == 0.0):
        raise ValueError("coincident satellite positions have no link geometry")
    unit = d / rng[..., None]
    rx_angle = _angle_to_sun_deg(-unit, sun)  # receiver looks rx -> tx
    tx_angle = _angle_to_sun_deg(unit, sun)  # transmitter looks tx -> rx
    occluded = _segment_closest_approach_km(tx_pos, rx_pos) < (
        EARTH_RADIUS_KM + policy.grazing_margin_km
    )
    if policy.blocking == SDA_STRICT:
        blocked = np.minimum(rx_angle, tx_angle) < policy.exclusion_angle_deg
    else:
        blocked = rx_angle < policy.exclusion_angle_deg
    status = np.full(rng.shape, STATUS_UP, dtype=object)
    status[blocked] = STATUS_SUN_BLOCKED
    status[rng > max_range] = STATUS_OUT_OF_RANGE
    status[occluded] = STATUS_OCCLUDED
    return rng, rx_angle, tx_angle, status


def link_geometry(
    tx_state: SatelliteState,
    rx_state: SatelliteState,
    sun: np.ndarray,
    policy: LinkPolicy = LinkPolicy(),
    t: float = 0.0,
    max_range_km: float | None = None,
) -> DirectedLinkSample:
    """Sample one directed link: range, boresight-to-Sun angles and status."""
    rng, rx_angle, tx_angle, status = sample_link_arrays(
        tx_state.position_eci_km[None, :],
        rx_state.position_eci_km[None, :],
        np.asarray(sun)[None, :],
        policy,
        max_range_km=max_range_km,
    )
    return DirectedLinkSample(
        t=t,
        range_km=float(rng[0]),
        rx_boresight_sun_angle_deg=float(rx_angle[0]),
        tx_boresight_sun_angle_deg=float(tx_angle[0]),
        status=str(status[0]),
    )


def is_sun_blocked(sample: DirectedLinkSample, policy: LinkPolicy = LinkPolicy()) -> bool:
    """Whether stray light shuts this direction down under the given policy."""
    if policy.blocking == SDA_STRICT:
        angle = min(
            sample.rx_boresight_sun_angle_deg, sample.tx_boresight_sun_angle_deg
        )
    else:
        angle = sample.rx_boresight_sun_angle_deg
    return angle < policy.exclusion_angle_deg


def intra_ring_links(constellation: Constellation) -> list[DirectedLink]:
    """Both directions between adjacent slots of every plane."""
    links: list[DirectedLink] = []
    for pi, plane in enumerate(constellation.planes):
        n = plane.n_sats
        if n < 2:
            continue
        seen: set[tuple[SatId, SatId]] = set()
        for si in range(n):
            for neighbor in ((si + 1) % n, (si - 1) % n):
                pair = ((pi, si), (pi, neighbor))
                if pair in seen:  # n == 2 collapses both neighbors into one
                    continue
                seen.add(pair)
                links.append(DirectedLink(tx=pair[0], rx=pair[1], kind=KIND_INTRA_RING))
    return links


def inter_ring_links(
    constellation: Constellation,
    states: list[SatelliteState],
    policy: LinkPolicy = LinkPolicy(),
) -> list[DirectedLink]:
    """Snapshot cross-plane links: each satellite points up to inter_ring_k
    terminals at the nearest in-range, unoccluded satellites of each adjacent
    plane (adjacent meaning neighboring RAAN slot, cyclically)."""
    n_planes = len(constellation.planes)
    if n_planes < 2 or policy.inter_ring_k == 0:
        return []
    pos = {s.sat_id: s.position_eci_km for s in states}
    plane_pos = [
        np.array([pos[(pi, si)] for si in range(p.n_sats)])
        for pi, p in enumerate(constellation.planes)
    ]
    limit = EARTH_RADIUS_KM + policy.grazing_margin_km
    links: list[DirectedLink] = []
    for pi in range(n_planes):
        adjacent = {(pi - 1) % n_planes, (pi + 1) % n_planes} - {pi}
        for qi in sorted(adjacent):
            own = plane_pos[pi][:, None, :]
            other = plane_pos[qi][None, :, :]
            rng = np.linalg.norm(other - own, axis=-1)
            # Coincident positions (degenerate plane layouts) are not linkable.
            reachable = (
                (rng > 1e-9)
                & (rng <= policy.max_range_km)
                & (
                    _segment_closest_approach_km(
                        own, np.broadcast_to(other, rng.shape + (3,))
                    )
                    >= limit
                )
            )
            ranked = np.argsort(np.where(reachable, rng, np.inf), axis=1, kind="stable")
            for si in range(rng.shape[0]):
                for oj in ranked[si, : policy.inter_ring_k]:
                    if not reachable[si, oj]:
                        break
                    links.append(
                        DirectedLink(
                            tx=(pi, si), rx=(qi, int(oj)), kind=KIND_INTER_RING
                        )
                    )
    return links


def neighbor_topology(
    constellation: Constellation,
    states: list[SatelliteState],
    policy: LinkPolicy = LinkPolicy(),
) -> list[DirectedLink]:
    """Structural intra-ring links plus snapshot inter-ring links."""
    return intra_ring_links(constellation) + inter_ring_links(
        constellation, states, policy
    )


def _runs_to_intervals(
    up: np.ndarray, times: np.ndarray, step_s: float
) -> tuple[tuple[float, float], ...]:
    """Merge consecutive up samples into half-open [start, end) intervals."""
    if not up.any():
        return ()
    edges = np.flatnonzero(np.diff(up.astype(np.int8)))
    starts = [0] if up[0] else []
    starts += [int(i) + 1 for i in edges if not up[i] and up[i + 1]]
    ends = [int(i) + 1 for i in edges if up[i] and not up[i + 1]]
    if up[-1]:
        ends.append(len(up))
    return tuple(
        (float(times[s]), float(times[e - 1] + step_s)) for s, e in zip(starts, ends)
    )


def link_status_over_grid(
    constellation: Constellation,
    link: DirectedLink,
    grid: TimeGrid,
    policy: LinkPolicy = LinkPolicy(),
) -> np.ndarray:
    """Status string per grid sample for one directed link."""
    ids = constellation.sat_ids()
    idx = {sid: i for i, sid in enumerate(ids)}
    if link.tx not in idx or link.rx not in idx:
        raise ValueError(f"link {link} references satellites outside the constellation")
    pos = positions_over_grid(constellation, grid)
    sun = sun_over_grid(grid)
    _, _, _, status = sample_link_arrays(
        pos[:, idx[link.tx], :], pos[:, idx[link.rx], :], sun, policy
    )
    return status


def contact_intervals(
    constellation: Constellation,
    link: DirectedLink,
    grid: TimeGrid,
    policy: LinkPolicy = LinkPolicy(),
) -> ContactIntervals:
    """Sweep the grid and merge consecutive up samples into intervals.

    Interval edges land on grid boundaries; each up sample contributes one
    step of up time, so fractions and gap lengths are exact multiples of the
    step.
    """
    status = link_status_over_grid(constellation, link, grid, policy)
    times = grid.times()
    up = status == STATUS_UP
    horizon = (float(times[0]), float(times[0] + grid.n_samples * grid.step_s))
    return ContactIntervals(
        link=link,
        intervals=_runs_to_intervals(up, times, grid.step_s),
        horizon=horizon,
    )

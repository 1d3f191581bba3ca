"""Time grid, Sun direction, circular two-body propagation, constellation builders.

All geometry is expressed in an Earth-centered inertial (ECI) frame in km.
Orbits are ideal circles: no J2, drag or attitude dynamics, which keeps every
downstream analysis deterministic and cheap to verify against closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import (
    DAYS_PER_YEAR,
    EARTH_RADIUS_KM,
    ECLIPTIC_OBLIQUITY_DEG,
    EQUINOX_DAY_OF_YEAR,
    GEO_RADIUS_KM,
    LUNAR_DISTANCE_KM,
    MU_EARTH_KM3_S2,
)

SatId = tuple[int, int]


@dataclass(frozen=True)
class Epoch:
    """A simulation instant: seconds since scenario start plus the calendar day
    anchoring the Sun model."""

    t: float
    epoch_day_of_year: int = EQUINOX_DAY_OF_YEAR

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise ValueError(f"epoch time must be finite, got {self.t}")
        if not 1 <= self.epoch_day_of_year <= 365:
            raise ValueError(
                f"epoch_day_of_year must be in [1, 365], got {self.epoch_day_of_year}"
            )


@dataclass(frozen=True)
class TimeGrid:
    """Fixed-step sampling grid. Samples cover [start_s, start_s + horizon_s) so a
    grid with step_s == horizon_s is a single-epoch run."""

    horizon_s: float
    step_s: float = 10.0
    start_s: float = 0.0
    epoch_day_of_year: int = EQUINOX_DAY_OF_YEAR

    def __post_init__(self) -> None:
        if self.step_s <= 0:
            raise ValueError(f"step_s must be positive, got {self.step_s}")
        if self.horizon_s < self.step_s:
            raise ValueError(
                f"horizon_s ({self.horizon_s}) must be at least step_s ({self.step_s})"
            )

    @property
    def n_samples(self) -> int:
        return max(1, int(math.floor(self.horizon_s / self.step_s + 1e-9)))

    def times(self) -> np.ndarray:
        return self.start_s + self.step_s * np.arange(self.n_samples)

    def epochs(self) -> list[Epoch]:
        return [Epoch(float(t), self.epoch_day_of_year) for t in self.times()]


@dataclass(frozen=True)
class OrbitPlane:
    """One circular orbital plane. A static plane freezes its satellites in
    place (used for far-away client placeholders such as a lunar site)."""

    altitude_km: float
    inclination_deg: float
    raan_deg: float
    n_sats: int
    static: bool = False

    def __post_init__(self) -> None:
        if self.altitude_km <= 0:
            raise ValueError(f"altitude_km must be positive, got {self.altitude_km}")
        if not 0.0 <= self.inclination_deg <= 180.0:
            raise ValueError(
                f"inclination_deg must be in [0, 180], got {self.inclination_deg}"
            )
        if not 0.0 <= self.raan_deg < 360.0:
            raise ValueError(f"raan_deg must be in [0, 360), got {self.raan_deg}")
        if self.n_sats < 1:
            raise ValueError(f"n_sats must be positive, got {self.n_sats}")

    @property
    def radius_km(self) -> float:
        return EARTH_RADIUS_KM + self.altitude_km


@dataclass(frozen=True)
class Constellation:
    """Ordered planes plus a per-plane initial anomaly offset. Satellites within
    a plane are equidistant in anomaly (360/n_sats apart)."""

    planes: tuple[OrbitPlane, ...]
    phase_offsets_deg: tuple[float, ...] = ()
    name: str = "sdc"

    def __post_init__(self) -> None:
        if not self.planes:
            raise ValueError("constellation needs at least one plane")
        if not self.phase_offsets_deg:
            object.__setattr__(self, "phase_offsets_deg", (0.0,) * len(self.planes))
        if len(self.phase_offsets_deg) != len(self.planes):
            raise ValueError(
                "phase_offsets_deg must have one entry per plane "
                f"({len(self.phase_offsets_deg)} != {len(self.planes)})"
            )

    @property
    def n_sats(self) -> int:
        return sum(p.n_sats for p in self.planes)

    def sat_ids(self) -> list[SatId]:
        return [(pi, si) for pi, p in enumerate(self.planes) for si in range(p.n_sats)]


@dataclass(frozen=True, eq=False)
class SatelliteState:
    sat_id: SatId
    position_eci_km: np.ndarray
    velocity_eci_kms: np.ndarray


def orbital_period(altitude_km: float) -> float:
    """Two-body period in seconds for a circular orbit at the given altitude."""
    if altitude_km <= 0:
        raise ValueError(f"altitude_km must be positive, got {altitude_km}")
    a = EARTH_RADIUS_KM + altitude_km
    return 2.0 * math.pi * math.sqrt(a**3 / MU_EARTH_KM3_S2)


def orbital_speed(altitude_km: float) -> float:
    """Circular orbital speed in km/s."""
    if altitude_km <= 0:
        raise ValueError(f"altitude_km must be positive, got {altitude_km}")
    return math.sqrt(MU_EARTH_KM3_S2 / (EARTH_RADIUS_KM + altitude_km))


def sun_direction(epoch: Epoch) -> np.ndarray:
    """Unit vector toward the Sun in ECI.

    Circular-ecliptic model: ecliptic longitude grows uniformly from the day-80
    equinox, tilted by the 23.44 deg obliquity. Errors of a degree or two are
    irrelevant next to the 30 deg exclusion cone this feeds.
    """
    frac_day = epoch.epoch_day_of_year + epoch.t / 86400.0
    lon = 2.0 * math.pi * (frac_day - EQUINOX_DAY_OF_YEAR) / DAYS_PER_YEAR
    eps = math.radians(ECLIPTIC_OBLIQUITY_DEG)
    return np.array(
        [
            math.cos(lon),
            math.sin(lon) * math.cos(eps),
            math.sin(lon) * math.sin(eps),
        ]
    )


def _plane_basis(plane: OrbitPlane) -> tuple[np.ndarray, np.ndarray]:
    """In-plane orthonormal basis (p, q) such that a satellite at argument of
    latitude u sits at radius * (p cos u + q sin u)."""
    raan = math.radians(plane.raan_deg)
    inc = math.radians(plane.inclination_deg)
    cr, sr = math.cos(raan), math.sin(raan)
    ci, si = math.cos(inc), math.sin(inc)
    p = np.array([cr, sr, 0.0])
    q = np.array([-sr * ci, cr * ci, si])
    return p, q


def _plane_anomalies_deg(
    constellation: Constellation, plane_index: int, t: float
) -> np.ndarray:
    plane = constellation.planes[plane_index]
    slots = 360.0 * np.arange(plane.n_sats) / plane.n_sats
    base = constellation.phase_offsets_deg[plane_index] + slots
    if plane.static:
        return base
    period = orbital_period(plane.altitude_km)
    return base + 360.0 * t / period


def propagate(constellation: Constellation, epoch: Epoch) -> list[SatelliteState]:
    """Satellite states at one epoch under circular Keplerian motion."""
    states: list[SatelliteState] = []
    for pi, plane in enumerate(constellation.planes):
        p, q = _plane_basis(plane)
        a = plane.radius_km
        speed = 0.0 if plane.static else orbital_speed(plane.altitude_km)
        u = np.radians(_plane_anomalies_deg(constellation, pi, epoch.t))
        cu, su = np.cos(u), np.sin(u)
        pos = a * (np.outer(cu, p) + np.outer(su, q))
        vel = speed * (np.outer(-su, p) + np.outer(cu, q))
        for si in range(plane.n_sats):
            states.append(SatelliteState((pi, si), pos[si], vel[si]))
    return states


def positions_over_grid(constellation: Constellation, grid: TimeGrid) -> np.ndarray:
    """Positions for every satellite at every grid sample, shape
    (n_samples, n_sats, 3), satellites ordered as in sat_ids()."""
    times = grid.times()
    out = np.empty((len(times), constellation.n_sats, 3))
    col = 0
    for pi, plane in enumerate(constellation.planes):
        p, q = _plane_basis(plane)
        a = plane.radius_km
        base = np.radians(
            constellation.phase_offsets_deg[pi]
            + 360.0 * np.arange(plane.n_sats) / plane.n_sats
        )
        if plane.static:
            u = np.broadcast_to(base, (len(times), plane.n_sats))
        else:
            rate = 2.0 * math.pi / orbital_period(plane.altitude_km)
            u = base[None, :] + rate * times[:, None]
        out[:, col : col + plane.n_sats, :] = a * (
            np.cos(u)[..., None] * p + np.sin(u)[..., None] * q
        )
        col += plane.n_sats
    return out


def sun_over_grid(grid: TimeGrid) -> np.ndarray:
    """Sun unit vectors for every grid sample, shape (n_samples, 3)."""
    frac_day = grid.epoch_day_of_year + grid.times() / 86400.0
    lon = 2.0 * math.pi * (frac_day - EQUINOX_DAY_OF_YEAR) / DAYS_PER_YEAR
    eps = math.radians(ECLIPTIC_OBLIQUITY_DEG)
    return np.stack(
        [np.cos(lon), np.sin(lon) * math.cos(eps), np.sin(lon) * math.sin(eps)],
        axis=-1,
    )


def build_sdc_constellation(
    n_planes: int = 20,
    sats_per_plane: int = 10,
    inclination_deg: float = 53.0,
    altitude_km: float = 550.0,
    raan_spread_deg: float = 360.0,
    phase_offset_deg: float = 0.0,
    name: str = "sdc",
) -> Constellation:
    """Walker-style data-center constellation: n_planes rings of equidistant
    satellites with RAAN uniformly spread over raan_spread_deg.

    Defaults give the 20 x 10 = 200 satellite layout at 53 deg inclination.
    phase_offset_deg staggers the initial anomaly of successive planes.
    """
    if n_planes < 1:
        raise ValueError(f"n_planes must be positive, got {n_planes}")
    if sats_per_plane < 1:
        raise ValueError(f"sats_per_plane must be positive, got {sats_per_plane}")
    planes = tuple(
        OrbitPlane(
            altitude_km=altitude_km,
            inclination_deg=inclination_deg,
            raan_deg=(raan_spread_deg * i / n_planes) % 360.0,
            n_sats=sats_per_plane,
        )
        for i in range(n_planes)
    )
    phases = tuple((phase_offset_deg * i) % 360.0 for i in range(n_planes))
    return Constellation(planes=planes, phase_offsets_deg=phases, name=name)


CLIENT_KINDS = ("uc1_pair", "geo", "lunar_surface")


def build_client(
    kind: str,
    altitude_km: float = 800.0,
    inclination_deg: float = 53.0,
    separation_deg: float = 2.0,
    name: str = "client",
) -> Constellation:
    """Client-side satellites for the use cases.

    uc1_pair: scout/mothership pair on one circular orbit, the scout leading by
    separation_deg of anomaly. geo: a single geostationary-radius satellite.
    lunar_surface: a static placeholder at lunar distance (position only, used
    as cost-model destination and far-side network endpoint).
    """
    if kind == "uc1_pair":
        plane = OrbitPlane(
            altitude_km=altitude_km,
            inclination_deg=inclination_deg,
            raan_deg=0.0,
            n_sats=1,
        )
        return Constellation(
            planes=(plane, plane),
            phase_offsets_deg=(separation_deg % 360.0, 0.0),
            name=name,
        )
    if kind == "geo":
        plane = OrbitPlane(
            altitude_km=GEO_RADIUS_KM - EARTH_RADIUS_KM,
            inclination_deg=0.0,
            raan_deg=0.0,
            n_sats=1,
        )
        return Constellation(planes=(plane,), name=name)
    if kind == "lunar_surface":
        plane = OrbitPlane(
            altitude_km=LUNAR_DISTANCE_KM - EARTH_RADIUS_KM,
            inclination_deg=0.0,
            raan_deg=0.0,
            n_sats=1,
            static=True,
        )
        return Constellation(planes=(plane,), name=name)
    raise ValueError(f"unsupported client kind {kind!r}, expected one of {CLIENT_KINDS}")

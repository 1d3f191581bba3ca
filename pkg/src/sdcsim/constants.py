"""Physical constants shared across the simulator (km / s / kg units)."""

MU_EARTH_KM3_S2 = 398600.4418
EARTH_RADIUS_KM = 6371.0
SPEED_OF_LIGHT_KM_S = 299792.458

GEO_RADIUS_KM = 42164.0
LUNAR_DISTANCE_KM = 384400.0

ECLIPTIC_OBLIQUITY_DEG = 23.44
DAYS_PER_YEAR = 365.25
EQUINOX_DAY_OF_YEAR = 80

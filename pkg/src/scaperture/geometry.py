"""Aperture geometries, film parameters and the dipole source."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from scaperture.constants import (
    DEFAULT_FILM_FACTOR,
    DEFAULT_GRID_FACTOR,
    DEFAULT_LONDON_DEPTH,
    DEFAULT_THICKNESS,
)


class ConfigurationError(ValueError):
    """Inconsistent geometry, film or scenario parameters."""


def _vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ConfigurationError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class Dipole:
    """Point magnetic dipole: position in meters, moment in A m^2."""

    position: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", _vec3(self.position))
        object.__setattr__(self, "moment", _vec3(self.moment))
        if not np.linalg.norm(self.moment) > 0:
            raise ConfigurationError("dipole moment must have positive magnitude")
        self.position.setflags(write=False)
        self.moment.setflags(write=False)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.moment))


@dataclass(frozen=True)
class Circle:
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigurationError("circle radius must be positive")

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return x * x + y * y < self.radius**2

    @property
    def edge_x(self) -> float:
        return self.radius

    @property
    def edge_y(self) -> float:
        return self.radius

    @property
    def scale_radius(self) -> float:
        """Length used to size film and grid extents."""
        return self.radius


@dataclass(frozen=True)
class Ellipse:
    a: float  # semi-axis along x
    b: float  # semi-axis along y

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ConfigurationError("ellipse semi-axes must be positive")

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (x / self.a) ** 2 + (y / self.b) ** 2 < 1.0

    @property
    def edge_x(self) -> float:
        return self.a

    @property
    def edge_y(self) -> float:
        return self.b

    @property
    def scale_radius(self) -> float:
        return max(self.a, self.b)

    def half_height(self, x) -> np.ndarray:
        """Aperture half-height at abscissa x (0 outside [-a, a])."""
        t = 1.0 - (np.asarray(x, dtype=float) / self.a) ** 2
        return self.b * np.sqrt(np.maximum(t, 0.0))


@dataclass(frozen=True)
class DogBone:
    """Two discs at (+-L/2, 0) joined by an axis-aligned channel."""

    end_radius: float
    center_distance: float
    channel_half_width: float

    def __post_init__(self):
        if not (self.end_radius > 0 and self.center_distance > 0 and self.channel_half_width > 0):
            raise ConfigurationError("dog-bone lengths must be positive")
        if not self.center_distance > 2 * self.end_radius:
            raise ConfigurationError("dog-bone discs must not overlap (L > 2 * end_radius)")

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        half = 0.5 * self.center_distance
        r2 = self.end_radius**2
        in_left = (x + half) ** 2 + y * y < r2
        in_right = (x - half) ** 2 + y * y < r2
        in_channel = (np.abs(x) < half) & (np.abs(y) < self.channel_half_width)
        return in_left | in_right | in_channel

    @property
    def edge_x(self) -> float:
        return 0.5 * self.center_distance + self.end_radius

    @property
    def edge_y(self) -> float:
        return self.end_radius

    @property
    def scale_radius(self) -> float:
        return self.edge_x


ApertureGeometry = Circle | Ellipse | DogBone


def point_in_aperture(geometry: ApertureGeometry, p) -> bool:
    """True iff p = (x, y) lies strictly inside the aperture region.

    The boundary belongs to the superconductor side.
    """
    x, y = float(p[0]), float(p[1])
    return bool(geometry.contains(x, y))


@dataclass(frozen=True)
class FilmSpec:
    """Material and extent parameters of the superconducting film."""

    london_depth: float = DEFAULT_LONDON_DEPTH
    thickness: float = DEFAULT_THICKNESS
    film_half_extent: float = 0.0
    grid_half_extent: float = 0.0
    # validity notes, recorded but not enforced: applied field well below the
    # upper critical field; film dimensions large against the coherence length
    validity_notes: tuple = field(
        default=(
            "applied field << Hc2",
            "film dimensions >> coherence length",
        ),
        repr=False,
    )

    def __post_init__(self):
        if not (self.london_depth > 0 and self.thickness > 0):
            raise ConfigurationError("london_depth and thickness must be positive")
        if not self.film_half_extent > 0:
            raise ConfigurationError("film_half_extent must be positive")
        if not self.grid_half_extent >= self.film_half_extent:
            raise ConfigurationError("grid_half_extent must be >= film_half_extent")

    @property
    def pearl_length(self) -> float:
        """Two-dimensional screening length, lambda^2 / thickness."""
        return self.london_depth**2 / self.thickness

    def check_against(self, geometry: ApertureGeometry) -> None:
        largest = max(geometry.edge_x, geometry.edge_y)
        if not self.film_half_extent > largest:
            raise ConfigurationError(
                f"film half-extent {self.film_half_extent:g} must exceed the "
                f"largest aperture dimension {largest:g}"
            )


def default_film(
    geometry: ApertureGeometry,
    london_depth: float = DEFAULT_LONDON_DEPTH,
    thickness: float = DEFAULT_THICKNESS,
    film_factor: float = DEFAULT_FILM_FACTOR,
    grid_factor: float = DEFAULT_GRID_FACTOR,
) -> FilmSpec:
    """Film sized relative to the aperture scale radius."""
    r = geometry.scale_radius
    return FilmSpec(
        london_depth=london_depth,
        thickness=thickness,
        film_half_extent=film_factor * r,
        grid_half_extent=grid_factor * r,
    )

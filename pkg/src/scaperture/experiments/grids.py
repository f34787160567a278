"""Scenario grids for the numeric engine.

One self-similar rule for all scenarios: grading features at the aperture
edges, the midline (for the evaluation line) and the dipole abscissa, with
the probe position and evaluation line snapped onto exact coordinates.
"""

from __future__ import annotations

from scaperture.geometry import ApertureGeometry, FilmSpec
from scaperture.grid import Grid, make_grid

DEFAULT_RATIO = 125.0
DEFAULT_SLOPE = 0.4


def scenario_grid(
    geometry: ApertureGeometry,
    film: FilmSpec,
    n: int,
    *,
    dipole_x: float = 0.0,
    probe_x: float | None = None,
    y_line: float = 5e-9,
    ratio: float = DEFAULT_RATIO,
    slope: float = DEFAULT_SLOPE,
) -> Grid:
    h_cap = 0.5 * (film.grid_half_extent - film.film_half_extent)
    h_edge = h_cap / ratio
    extra_x = [(abs(dipole_x), h_edge, slope)]
    extra_y = [(0.0, h_edge, slope)]
    anchor_x = [probe_x] if probe_x is not None else []
    anchor_y = [y_line] if y_line else []
    return make_grid(
        geometry,
        film,
        n,
        n,
        ratio,
        grading_slope=slope,
        extra_x_features=extra_x,
        extra_y_features=extra_y,
        anchor_x=anchor_x,
        anchor_y=anchor_y,
    )

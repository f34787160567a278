"""Dipole-dipole coupling rates from the field at the partner site."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from scaperture.constants import DEFAULT_MOMENT, MU0, PLANCK
from scaperture.experiments.compare import CONVENTION_FACTOR
from scaperture.experiments.grids import DEFAULT_RATIO, scenario_grid
from scaperture.geometry import ApertureGeometry, Dipole, default_film
from scaperture.solver.system import BrandtSystem


@dataclass(frozen=True)
class CouplingEstimate:
    separation: float   # m
    field: float        # tesla at the partner site
    coupling: float     # hertz

    def __post_init__(self):
        if self.coupling < 0:
            raise ValueError("coupling must be non-negative")


def coupling_estimate(m: float, b_tesla: float, separation: float) -> CouplingEstimate:
    """Coupling rate m |B| / h for a partner dipole m in field B."""
    return CouplingEstimate(
        separation=separation,
        field=b_tesla,
        coupling=m * abs(b_tesla) / PLANCK,
    )


def numeric_coupling(
    geometry: ApertureGeometry,
    d: float,
    *,
    moment: float = DEFAULT_MOMENT,
    n: int = 60,
    ratio: float = DEFAULT_RATIO,
    y_line: float = 5e-9,
    london_depth: float = 50e-9,
    thickness: float = 80e-9,
) -> CouplingEstimate:
    """Solve the geometry with a dipole d inside the left edge and estimate
    the coupling at the mirror site d inside the right edge.

    The field is converted to the physical in-plane dipole convention.
    """
    x0 = -(geometry.edge_x - d)
    probe = geometry.edge_x - d
    film = default_film(geometry, london_depth=london_depth, thickness=thickness)
    grid = scenario_grid(
        geometry, film, n, dipole_x=x0, probe_x=probe, y_line=y_line, ratio=ratio,
    )
    dipole = Dipole(position=[x0, 0.0, 0.0], moment=[0.0, 0.0, moment])
    system = BrandtSystem(geometry, film, grid)
    sol = system.solve(dipole)
    b = CONVENTION_FACTOR * MU0 * sol.h_z.values[grid.index_of(probe, y_line)]
    return coupling_estimate(moment, b, probe - x0)

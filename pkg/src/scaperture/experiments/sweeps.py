"""Aperture-size sweeps of the edge field, for both engines.

Each sweep places the dipole (center, or distance d from the left edge),
evaluates Bz at distance d inside the right edge, and records the value
against the dipole-to-probe separation L.  Numeric values are reported in
the solver's applied-field convention; power-law fits are insensitive to
the overall factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from scaperture.analytic.inplane import field_inplane
from scaperture.analytic.centered import field_centered
from scaperture.analytic.shifted import field_shifted_bz_plane
from scaperture.constants import DEFAULT_MOMENT, MU0
from scaperture.experiments.fitting import PowerLawFit, fit_power_law
from scaperture.experiments.grids import DEFAULT_RATIO, scenario_grid
from scaperture.experiments.smoothing import smooth
from scaperture.geometry import Circle, ConfigurationError, Dipole, Ellipse, default_film
from scaperture.solver.system import BrandtSystem

SCENARIOS = ("centered", "shifted", "ellipse")
ENGINES = ("analytic", "numeric")


@dataclass(frozen=True)
class SweepResult:
    scenario: str
    engine: str
    d: float
    lengths: np.ndarray          # dipole-to-probe separations, m
    fields: np.ndarray           # Bz at the probe, tesla
    sigma: np.ndarray            # per-point errors, tesla
    fit: PowerLawFit | None
    y_offset: float
    metadata: dict = field(default_factory=dict)

    def points(self):
        return list(zip(self.lengths, self.fields, self.sigma))


def _separation(scenario: str, radius: float, d: float) -> float:
    if scenario == "centered":
        return radius - d
    return 2 * (radius - d)


def _analytic_point(scenario, m, radius, d, y_offset):
    probe = radius - d
    if scenario == "centered":
        if y_offset == 0.0:
            return field_inplane("z", m, probe, radius)[2]
        return field_centered([0, 0, m], [probe, y_offset, 0.0], radius)[2]
    if scenario == "shifted":
        return field_shifted_bz_plane(m, -(radius - d), [probe], y_offset, radius)[0]
    raise ConfigurationError("no closed form for elliptical apertures")


def _numeric_point(scenario, m, radius, d, y_offset, n, ratio, b,
                   london_depth, thickness):
    if scenario == "ellipse":
        geometry = Ellipse(a=radius, b=b)
    else:
        geometry = Circle(radius)
    film = default_film(geometry, london_depth=london_depth, thickness=thickness)
    x0 = 0.0 if scenario == "centered" else -(radius - d)
    probe_x = radius - d
    grid = scenario_grid(
        geometry, film, n,
        dipole_x=x0, probe_x=probe_x, y_line=y_offset, ratio=ratio,
    )
    dipole = Dipole(position=[x0, 0.0, 0.0], moment=[0.0, 0.0, m])
    system = BrandtSystem(geometry, film, grid)
    sol = system.solve(dipole)
    p = grid.index_of(probe_x, y_offset)
    return MU0 * sol.h_z.values[p], sol


def sweep(
    scenario: str,
    d: float,
    radii,
    engine: str,
    *,
    moment: float = DEFAULT_MOMENT,
    y_offset: float | None = None,
    n: int = 60,
    ratio: float = DEFAULT_RATIO,
    b: float = 100e-9,
    london_depth: float = 50e-9,
    thickness: float = 80e-9,
    smooth_window: int = 1,
) -> SweepResult:
    """Evaluate the probe field across aperture radii and fit the decay.

    centered: dipole at the center, R = L + d.  shifted: dipole at distance
    d from the left edge, R = L/2 + d.  ellipse: like shifted with the x
    semi-axis varying at fixed b.
    """
    if scenario not in SCENARIOS:
        raise ConfigurationError(f"scenario must be one of {SCENARIOS}")
    if engine not in ENGINES:
        raise ConfigurationError(f"engine must be one of {ENGINES}")
    if d <= 0:
        raise ConfigurationError("d must be positive")
    radii = np.sort(np.asarray(radii, dtype=float))
    if np.any(radii <= d):
        raise ConfigurationError("all radii must exceed d")
    if engine == "analytic" and scenario == "ellipse":
        raise ConfigurationError("no closed form for elliptical apertures")
    if y_offset is None:
        y_offset = 0.0 if engine == "analytic" else 5e-9

    lengths = np.array([_separation(scenario, r, d) for r in radii])
    fields = np.empty_like(lengths)
    flatness = []
    for i, radius in enumerate(radii):
        if engine == "analytic":
            fields[i] = _analytic_point(scenario, moment, radius, d, y_offset)
        else:
            fields[i], sol = _numeric_point(
                scenario, moment, radius, d, y_offset, n, ratio, b,
                london_depth, thickness,
            )
            flatness.append(sol.aperture_flatness)

    if smooth_window > 1:
        smoothed, sigma = smooth(fields, smooth_window)
        fields = smoothed
    else:
        sigma = np.zeros_like(fields)

    fit = fit_power_law(lengths, fields, sigma) if len(lengths) >= 5 else None
    meta = {
        "engine": engine,
        "field_convention": "solver-applied" if engine == "numeric" else "physical",
        "smooth_window": smooth_window,
    }
    if engine == "numeric":
        meta.update({"n": n, "ratio": ratio, "max_aperture_flatness": max(flatness)})
        if scenario == "ellipse":
            meta["b"] = b
    return SweepResult(
        scenario=scenario,
        engine=engine,
        d=d,
        lengths=lengths,
        fields=fields,
        sigma=sigma,
        fit=fit,
        y_offset=y_offset,
        metadata=meta,
    )

"""Leading-order edge fields at fixed small distance d from the aperture edge."""

from __future__ import annotations

import numpy as np

from scaperture.constants import MU0

KINDS = ("centered", "shifted")


def edge_asymptote(kind: str, m: float, d: float, radius: float) -> float:
    """Leading-order Bz (tesla) at distance d inside the aperture edge.

    centered: dipole at the center, probe at rho = R - d; scales as
    R^(-5/2).  shifted: dipole at distance d from the opposite edge, probe
    at x = R - d; scales as R^(-2).  The shifted coefficient is quoted
    against the probe separation L = 2(R - d): B = -mu0 m / (4 pi^2 d L^2),
    whose leading term in R is returned.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if not 0 < d < radius:
        raise ValueError("requires 0 < d < R")
    if kind == "centered":
        return -MU0 * m / (np.sqrt(2.0) * np.pi**2 * np.sqrt(d) * radius**2.5)
    return -MU0 * m / (16 * np.pi**2 * d * radius**2)

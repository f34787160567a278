"""Point-dipole field in free space, the baseline for all comparisons."""

from __future__ import annotations

import numpy as np

from scaperture.analytic.green import SingularityError
from scaperture.constants import MU0


def free_dipole_field(moment, r_rel) -> np.ndarray:
    """B (tesla) at displacement r_rel from a dipole with the given moment."""
    moment = np.asarray(moment, dtype=float)
    r = np.asarray(r_rel, dtype=float)
    scalar = r.ndim == 1
    r = np.atleast_2d(r)
    rr = np.linalg.norm(r, axis=-1)
    if np.any(rr == 0.0):
        raise SingularityError("free dipole field diverges at the source")
    rhat = r / rr[..., None]
    field = (MU0 / (4 * np.pi * rr**3))[..., None] * (
        3 * (rhat @ moment)[..., None] * rhat - moment
    )
    return field[0] if scalar else field

"""Physical constants and default parameters (SI units throughout)."""

import numpy as np
from scipy import constants as _const

MU0 = _const.mu_0
PLANCK = _const.h
BOHR_MAGNETON = _const.physical_constants["Bohr magneton"][0]
ELECTRON_G = abs(_const.physical_constants["electron g factor"][0])

# moment of a single spin-1 particle, m = 2 g mu_B
DEFAULT_MOMENT = 2.0 * ELECTRON_G * BOHR_MAGNETON

GAUSS = 1e-4  # tesla

# thin-film material defaults: clean Nb layer
DEFAULT_LONDON_DEPTH = 50e-9
DEFAULT_THICKNESS = 80e-9
DEFAULT_FILM_FACTOR = 90.0   # film half-extent in units of the aperture radius
DEFAULT_GRID_FACTOR = 100.0  # grid half-extent in units of the aperture radius


def zhat_moment(m: float = DEFAULT_MOMENT) -> np.ndarray:
    return np.array([0.0, 0.0, m])

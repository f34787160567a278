"""Field of a dipole shifted off-center inside the circular aperture.

Built by differentiating the aperture kernel: the source gradient is
analytic, the outer curl is taken with eighth-order central differences of
that gradient.  A fully finite-difference path over plain kernel values is
kept as an independent cross-check.
"""

from __future__ import annotations

import numpy as np

from scaperture.analytic.green import SingularityError, green_circular, green_source_gradient
from scaperture.constants import MU0
from scaperture.geometry import ConfigurationError

# eighth-order central first-derivative weights for offsets 1h..4h
_C8 = np.array([4 / 5, -1 / 5, 4 / 105, -1 / 280])
_ONESIDED6 = {
    # sixth-order one-sided first-derivative stencil, offsets 0..6
    "coef": np.array([-49 / 20, 6, -15 / 2, 20 / 3, -15 / 4, 6 / 5, -1 / 6]),
}


def _step_scale(r, x0, radius):
    """Safe differentiation scale: distance to the dipole and the edge ring."""
    rho = np.hypot(r[0], r[1])
    ring = np.hypot(rho - radius, r[2])
    src = np.linalg.norm(r - np.array([x0, 0.0, 0.0]))
    return min(src, ring), rho


def _mixed_hessian(x0, r, radius, rel_step):
    """M[a, b] = d^2 G / d r_a d r'_b at source (x0, 0, 0)."""
    r = np.asarray(r, dtype=float)
    src = np.array([x0, 0.0, 0.0])
    scale, rho = _step_scale(r, x0, radius)
    if scale == 0.0:
        raise SingularityError("field evaluation at the dipole or on the edge ring")
    h = rel_step * scale
    mixed = np.zeros((3, 3))
    for axis in range(3):
        e = np.zeros(3)
        e[axis] = 1.0
        ha = h
        one_sided = False
        if axis == 2 and rho > radius:
            # the film plane is a kink surface for z-stencils outside the hole
            if r[2] == 0.0:
                one_sided = True
                ha = h
            else:
                ha = min(h, abs(r[2]) / 5.0)
        if one_sided:
            pts = np.array([r + k * ha * e for k in range(7)])
            grads = green_source_gradient(pts, src, radius)
            mixed[axis] = _ONESIDED6["coef"] @ grads / ha
        else:
            pts = []
            for k in (1, 2, 3, 4):
                pts.append(r + k * ha * e)
                pts.append(r - k * ha * e)
            grads = green_source_gradient(np.array(pts), src, radius)
            der = np.zeros(3)
            for i in range(4):
                der += _C8[i] * (grads[2 * i] - grads[2 * i + 1])
            mixed[axis] = der / ha
    return mixed


def field_shifted(moment, x0: float, r, radius: float, rel_step: float = 1e-2) -> np.ndarray:
    """B (tesla) at r from a dipole at (x0, 0, 0) inside the aperture.

    Reduces to the centered closed form at x0 = 0.  On-film points (z = 0,
    rho > R) are evaluated as the limit from z > 0.
    """
    if not abs(x0) < radius:
        raise ConfigurationError("dipole must sit strictly inside the aperture")
    moment = np.asarray(moment, dtype=float)
    r = np.asarray(r, dtype=float)
    mixed = _mixed_hessian(x0, r, radius, rel_step)
    return MU0 * (moment * np.trace(mixed) - moment @ mixed)


def field_shifted_bz_plane(m: float, x0: float, x, y: float, radius: float,
                           rel_step: float = 1e-2) -> np.ndarray:
    """Bz (tesla) of a z-dipole of magnitude m at in-plane points (x, y, 0).

    Only the in-plane mixed partials enter, so the whole evaluation stays in
    the film plane; vectorized over x for sweep use.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    src = np.array([x0, 0.0, 0.0])
    out = np.empty(len(x))
    for i, xv in enumerate(x):
        r = np.array([xv, y, 0.0])
        scale, _ = _step_scale(r, x0, radius)
        if scale == 0.0:
            raise SingularityError("field evaluation at the dipole or on the edge ring")
        h = rel_step * scale
        acc = 0.0
        for axis in (0, 1):
            e = np.zeros(3)
            e[axis] = 1.0
            pts = []
            for k in (1, 2, 3, 4):
                pts.append(r + k * h * e)
                pts.append(r - k * h * e)
            grads = green_source_gradient(np.array(pts), src, radius)
            der = np.zeros(3)
            for kidx in range(4):
                der += _C8[kidx] * (grads[2 * kidx] - grads[2 * kidx + 1])
            acc += der[axis] / h
        out[i] = MU0 * m * acc
    return out


def field_shifted_fd(moment, x0: float, r, radius: float, h: float) -> np.ndarray:
    """Cross-check oracle: both derivative levels by central differences of
    plain kernel values (independent of the analytic gradient path)."""
    moment = np.asarray(moment, dtype=float)
    r = np.asarray(r, dtype=float)
    src = np.array([x0, 0.0, 0.0])
    mixed = np.zeros((3, 3))
    for a in range(3):
        ea = np.zeros(3)
        ea[a] = h
        for b in range(3):
            eb = np.zeros(3)
            eb[b] = h
            mixed[a, b] = (
                green_circular(r + ea, src + eb, radius).value
                - green_circular(r + ea, src - eb, radius).value
                - green_circular(r - ea, src + eb, radius).value
                + green_circular(r - ea, src - eb, radius).value
            ) / (4 * h * h)
    return MU0 * (moment * np.trace(mixed) - moment @ mixed)

"""Dense kernel matrices for the perpendicular field of sheet currents.

The kernel gives the z field at r of a unit z dipole at r'; its diagonal is
fixed by a sum rule so that a constant stream function over the infinite
plane produces zero field: the row sum over the grid must equal the exact
kernel integral over everything outside the grid rectangle.
"""

from __future__ import annotations

import numpy as np

from scaperture.grid import Grid


def boundary_correction(grid: Grid) -> np.ndarray:
    """Exact integral of 1/(4 pi s^3) over the plane outside the grid square."""
    pts = grid.points
    X = grid.half_extent
    out = np.zeros(grid.n_points)
    for p in (-1.0, 1.0):
        for q in (-1.0, 1.0):
            out += np.sqrt((X - p * pts[:, 0]) ** -2 + (X - q * pts[:, 1]) ** -2)
    return out / (4 * np.pi)


def assemble_kernel(grid: Grid) -> np.ndarray:
    """Point-sampled kernel times cell weights (midpoint quadrature).

    Off-diagonal entries are -w_j / (4 pi |r_i - r_j|^3); the diagonal
    carries the sum rule.
    """
    pts = grid.points
    d2 = (pts[:, None, 0] - pts[None, :, 0]) ** 2 + (pts[:, None, 1] - pts[None, :, 1]) ** 2
    np.fill_diagonal(d2, 1.0)
    qw = -grid.weights[None, :] / (4 * np.pi * d2**1.5)
    np.fill_diagonal(qw, 0.0)
    np.fill_diagonal(qw, boundary_correction(grid) - qw.sum(axis=1))
    return qw


def _corner(u, v):
    """Antiderivative corner term of the cell-integrated 1/s^3 kernel.

    The zero value on the axes is the correct limit: corner differences
    across u = 0 or v = 0 vanish.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        f = np.sqrt(u * u + v * v) / (u * v)
    return np.where((u == 0.0) | (v == 0.0), 0.0, f)


def cell_integrated_kernel(grid: Grid) -> np.ndarray:
    """Kernel integrated exactly over every Voronoi cell (the solver's form).

    Entry (i, j) is minus the integral of 1/(4 pi s^3) over cell j seen from
    point i; the diagonal again carries the sum rule.  Near-singular entries
    are exact, which the edge fields need: midpoint quadrature noise there
    swamps the transmitted signal.
    """
    x, y = grid.x, grid.y
    X = grid.half_extent
    nx, ny = grid.n_x, grid.n_y
    xm = np.concatenate([[-X], 0.5 * (x[1:] + x[:-1]), [X]])
    ym = np.concatenate([[-X], 0.5 * (y[1:] + y[:-1]), [X]])
    pts = grid.points
    px, py = pts[:, 0], pts[:, 1]
    v1 = ym[None, :-1] - py[:, None]
    v2 = ym[None, 1:] - py[:, None]
    out = np.empty((grid.n_points, grid.n_points))
    for jx in range(nx):
        u1 = (xm[jx] - px)[:, None]
        u2 = (xm[jx + 1] - px)[:, None]
        block = -(_corner(u2, v2) - _corner(u1, v2) - _corner(u2, v1) + _corner(u1, v1))
        out[:, jx * ny:(jx + 1) * ny] = -block / (4 * np.pi)
    np.fill_diagonal(out, 0.0)
    np.fill_diagonal(out, boundary_correction(grid) - out.sum(axis=1))
    return out

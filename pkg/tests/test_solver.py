import numpy as np
import pytest

from scaperture.constants import DEFAULT_MOMENT, ELECTRON_G, BOHR_MAGNETON
from scaperture.geometry import Circle, ConfigurationError, Dipole, FilmSpec, default_film
from scaperture.grid import REGION_APERTURE, REGION_EXTERIOR, REGION_FILM, FieldMap, make_grid
from scaperture.solver.kernel import cell_integrated_kernel
from scaperture.solver.system import (
    BrandtSystem,
    applied_field,
    compensated_source,
    reconstruct_field,
    solve_stream,
)

R = 1e-6
D_PROBE = 100e-9


def z_dipole(m=DEFAULT_MOMENT, x=0.0, y=0.0):
    return Dipole(position=[x, y, 0.0], moment=[0.0, 0.0, m])


def centered_grid(n=40, ratio=125.0):
    geom = Circle(R)
    film = default_film(geom)
    h_cap = 0.5 * (film.grid_half_extent - film.film_half_extent)
    h_edge = h_cap / ratio
    grid = make_grid(
        geom,
        film,
        n,
        n,
        ratio,
        extra_x_features=[(0.0, h_edge, 0.4)],
        extra_y_features=[(0.0, h_edge, 0.4)],
        anchor_x=[R - D_PROBE],
        anchor_y=[5e-9],
    )
    return geom, film, grid


def test_applied_field_magnitude():
    # independent constants arithmetic: m = 2 g mu_B evaluated directly
    m = 2 * ELECTRON_G * BOHR_MAGNETON
    assert m == pytest.approx(3.7139e-23, rel=1e-4)
    geom, film, grid = centered_grid(n=24)
    ha = applied_field(z_dipole(m), grid)
    p = grid.index_of(1e-6, 0.0)
    r = np.hypot(*grid.points[p])
    assert ha.values[p] == pytest.approx(m / (2 * np.pi * r**3), rel=1e-12)


def test_applied_field_inverse_cube():
    geom, film, grid = centered_grid(n=24)
    ha = applied_field(z_dipole(), grid).values
    pts = grid.points
    r = np.hypot(pts[:, 0], pts[:, 1])
    i = np.argmin(np.abs(r - 2e-6))
    j = np.argmin(np.abs(r - 4e-6))
    expect = (r[i] / r[j]) ** 3
    assert ha[j] / ha[i] == pytest.approx(1 / expect**0 * (r[i] ** 3 / r[j] ** 3), rel=1e-12)


def test_applied_field_azimuthal_symmetry():
    geom, film, grid = centered_grid(n=24)
    ha = applied_field(z_dipole(), grid).values.reshape(grid.n_x, grid.n_y)
    # symmetric grid: mirror symmetry in both axes
    assert np.allclose(ha, ha[::-1, :], rtol=1e-12)
    assert np.allclose(ha, ha[:, ::-1], rtol=1e-12)


def test_applied_field_coincident_point_capped():
    geom = Circle(R)
    film = default_film(geom)
    grid = make_grid(geom, film, 24, 24, 10.0, anchor_x=[0.5 * R], anchor_y=[0.0])
    with pytest.warns(UserWarning, match="capped"):
        ha = applied_field(z_dipole(x=0.5 * R, y=0.0), grid)
    assert np.all(np.isfinite(ha.values))


def test_compensated_source_zero_net_flux():
    geom, film, grid = centered_grid()
    src = compensated_source(z_dipole(), geom, grid)
    total = src.values @ grid.weights
    scale = np.abs(src.values) @ grid.weights
    assert abs(total) < 1e-12 * scale


def test_zero_applied_gives_zero_solution():
    geom, film, grid = centered_grid(n=32)
    system = BrandtSystem(geom, film, grid)
    sol = system.solve_applied(FieldMap(grid, np.zeros(grid.n_points)))
    assert np.all(sol.g.values == 0.0)
    assert np.all(sol.h_z.values == 0.0)


def test_exterior_g_exactly_zero():
    geom, film, grid = centered_grid(n=32)
    sol = solve_stream(z_dipole(), geom, film, grid)
    ext = grid.region == REGION_EXTERIOR
    assert ext.any()
    assert np.all(sol.g.values[ext] == 0.0)


def test_linearity_in_moment():
    geom, film, grid = centered_grid(n=32)
    system = BrandtSystem(geom, film, grid)
    base = system.solve(z_dipole(DEFAULT_MOMENT))
    for alpha in (2.0, -1.0, 1e6):
        scaled = system.solve(z_dipole(alpha * DEFAULT_MOMENT))
        want = alpha * base.g.values
        assert np.abs(scaled.g.values - want).max() <= 1e-12 * np.abs(want).max()
        resp_base = base.h_z.values - base.h_a.values
        resp_scaled = scaled.h_z.values - scaled.h_a.values
        err = np.abs(resp_scaled - alpha * resp_base).max()
        assert err <= 1e-12 * np.abs(alpha * resp_base).max()


def test_mirror_symmetry():
    geom, film, grid = centered_grid(n=32)
    sol = solve_stream(z_dipole(), geom, film, grid)
    g = sol.g.values.reshape(grid.n_x, grid.n_y)
    hz = sol.h_z.values.reshape(grid.n_x, grid.n_y)
    gmax = np.abs(g).max()
    hmax = np.abs(hz).max()
    assert np.abs(g - g[::-1, :]).max() < 1e-9 * gmax
    assert np.abs(g - g[:, ::-1]).max() < 1e-9 * gmax
    assert np.abs(hz - hz[::-1, :]).max() < 1e-9 * hmax
    assert np.abs(hz - hz[:, ::-1]).max() < 1e-9 * hmax


def test_aperture_stream_constant():
    geom, film, grid = centered_grid(n=40)
    sol = solve_stream(z_dipole(), geom, film, grid)
    assert sol.aperture_flatness < 0.05
    assert sol.aperture_current != 0.0


def test_current_conservation_exact():
    # J = (dg/dy, -dg/dx): tensor-product difference operators commute, so
    # the discrete divergence vanishes identically
    geom, film, grid = centered_grid(n=32)
    sol = solve_stream(z_dipole(), geom, film, grid)
    g = sol.g.values.reshape(grid.n_x, grid.n_y)

    def ddx(f):
        out = np.zeros_like(f)
        out[1:-1, :] = (f[2:, :] - f[:-2, :]) / (grid.x[2:] - grid.x[:-2])[:, None]
        return out

    def ddy(f):
        out = np.zeros_like(f)
        out[:, 1:-1] = (f[:, 2:] - f[:, :-2]) / (grid.y[2:] - grid.y[:-2])[None, :]
        return out

    jx = ddy(g)
    jy = -ddx(g)
    div = ddx(jx) + ddy(jy)
    jscale = max(np.abs(jx).max(), np.abs(jy).max())
    width = np.diff(grid.x).min()
    assert np.abs(div).max() * width < 1e-9 * jscale


def test_london_residual_small():
    geom, film, grid = centered_grid(n=32)
    sol = solve_stream(z_dipole(), geom, film, grid)
    assert sol.london_residual < 1e-6


def test_reconstruct_identity_and_far_field():
    geom, film, grid = centered_grid(n=32)
    sol = solve_stream(z_dipole(), geom, film, grid)
    kernel_si = cell_integrated_kernel(grid)
    rebuilt = reconstruct_field(sol.g, sol.h_a, kernel_si)
    assert np.allclose(rebuilt.values, sol.h_z.values, rtol=1e-9, atol=1e-18)


def test_far_field_approaches_applied_for_isolated_patch():
    # uniform applied field over a small film patch: the screening response
    # decays like a dipole, so a few patch sizes away H_z returns to H_a
    geom = Circle(R)
    film = FilmSpec(film_half_extent=5 * R, grid_half_extent=100 * R)
    grid = make_grid(geom, film, 40, 40, 40.0)
    system = BrandtSystem(geom, film, grid)
    sol = system.solve_applied(FieldMap(grid, np.ones(grid.n_points)))
    pts = grid.points
    rr = np.hypot(pts[:, 0], pts[:, 1])
    far = rr > 50 * R
    assert far.any()
    ratio = np.abs(sol.h_z.values[far] - sol.h_a.values[far]) / sol.h_a.values[far]
    assert np.median(ratio) < 0.01


def test_pearl_length_trend():
    # a smaller penetration depth localizes the aperture field toward the
    # edge: the radius of max |H_z| must not decrease as lambda shrinks
    geom = Circle(R)
    positions = []
    for lam in (100e-9, 50e-9, 25e-9):
        film = FilmSpec(london_depth=lam, thickness=80e-9,
                        film_half_extent=90 * R, grid_half_extent=100 * R)
        h_cap = 0.5 * (film.grid_half_extent - film.film_half_extent)
        grid = make_grid(
            geom, film, 40, 40, 125.0,
            extra_x_features=[(0.0, h_cap / 125.0, 0.4)],
            extra_y_features=[(0.0, h_cap / 125.0, 0.4)],
            anchor_y=[5e-9],
        )
        sol = solve_stream(z_dipole(), geom, film, grid)
        line, _ = grid.x_line(5e-9)
        xs = grid.points[line, 0]
        inside = (xs > 0.2 * R) & (xs < R)
        vals = np.abs(sol.h_z.values[line][inside])
        positions.append(xs[inside][np.argmax(vals)])
    assert positions[1] >= positions[0] - 1e-12
    assert positions[2] >= positions[1] - 1e-12


def test_convergence_cauchy():
    # refining the grid changes the extracted edge field by a shrinking step
    geom = Circle(R)
    film = default_film(geom)
    vals = []
    for n in (40, 60, 80):
        h_cap = 0.5 * (film.grid_half_extent - film.film_half_extent)
        grid = make_grid(
            geom, film, n, n, 125.0,
            extra_x_features=[(0.0, h_cap / 125.0, 0.4)],
            extra_y_features=[(0.0, h_cap / 125.0, 0.4)],
            anchor_x=[R - D_PROBE],
            anchor_y=[5e-9],
        )
        sol = solve_stream(z_dipole(), geom, film, grid)
        p = grid.index_of(R - D_PROBE, 5e-9)
        vals.append(sol.h_z.values[p])
    d1 = abs(vals[1] - vals[0])
    d2 = abs(vals[2] - vals[1])
    assert d2 < d1


def test_dipole_outside_aperture_rejected():
    geom, film, grid = centered_grid(n=24)
    system = BrandtSystem(geom, film, grid)
    with pytest.raises(ConfigurationError):
        system.solve(z_dipole(x=2 * R))


def test_off_plane_dipole_rejected():
    geom, film, grid = centered_grid(n=24)
    dipole = Dipole(position=[0.0, 0.0, 1e-9], moment=[0.0, 0.0, DEFAULT_MOMENT])
    with pytest.raises(ConfigurationError):
        applied_field(dipole, grid)


def test_dogbone_solve_smoke():
    from scaperture.geometry import DogBone, default_film
    from scaperture.experiments.grids import scenario_grid

    geom = DogBone(end_radius=250e-9, center_distance=1.5e-6,
                   channel_half_width=100e-9)
    film = default_film(geom)
    x0 = -(geom.edge_x - 100e-9)
    grid = scenario_grid(geom, film, 40, dipole_x=x0,
                         probe_x=geom.edge_x - 100e-9, y_line=5e-9)
    dipole = Dipole(position=[x0, 0.0, 0.0], moment=[0, 0, DEFAULT_MOMENT])
    sol = solve_stream(dipole, geom, film, grid)
    assert sol.aperture_flatness < 0.05
    assert np.all(np.isfinite(sol.h_z.values))


def test_reconstruct_zero_stream_returns_applied():
    geom, film, grid = centered_grid(n=24)
    ha = applied_field(z_dipole(), grid)
    zero_g = FieldMap(grid, np.zeros(grid.n_points))
    kernel_si = cell_integrated_kernel(grid)
    out = reconstruct_field(zero_g, ha, kernel_si)
    assert np.array_equal(out.values, ha.values)

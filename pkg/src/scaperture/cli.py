"""Batch command-line front end.

Heavy imports are deferred into the command handlers so the thread-count
override can reach the linear-algebra backend before it loads.

Exit codes: 0 success, 2 usage or configuration error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

THREADS_ENV = "SCAPERTURE_THREADS"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scaperture",
        description="Dipole fields in apertures of superconducting thin films.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analytic", "Closed-form circular-aperture fields (curve or map CSV)."),
        ("solve", "Finite-penetration-depth solve: stream function and H_z maps."),
        ("sweep", "Aperture-size sweep of the edge field with a power-law fit."),
        ("compare", "Analytic vs numeric deviation report on a circular aperture."),
        ("coupling", "Partner-site coupling estimate for the configured geometry."),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--preset", default=None, metavar="NAME",
                       help="built-in scenario (fig3..fig7*, coupling300)")
        p.add_argument("--config", default=None, metavar="PATH",
                       help="JSON scenario file (lengths in nanometers)")
        p.add_argument("--out", default=None, metavar="DIR",
                       help="output directory (default: ./scaperture-<command>)")
        p.add_argument("--grid", default=None, metavar="NxM",
                       help="override grid point counts, e.g. 60x60")
        p.add_argument("--threads", type=int, default=None,
                       help=f"linear-algebra thread count (or set {THREADS_ENV})")
    return parser


def _apply_threads(threads: int | None) -> int | None:
    if threads is None and os.environ.get(THREADS_ENV):
        threads = int(os.environ[THREADS_ENV])
    if threads is not None:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ[var] = str(threads)
    return threads


def _resolve_config(args, command):
    from scaperture.io.config import load_config, parse_config, preset_config
    from scaperture.io.config import PRESETS  # noqa: F401  (import check)

    if args.preset and args.config:
        raise SystemExit("use --preset or --config, not both")
    if args.preset:
        cfg = preset_config(args.preset, command)
    elif args.config:
        cfg = load_config(args.config, command)
    else:
        raise SystemExit(f"{command}: provide --preset or --config")
    if args.grid:
        nx, _, ny = args.grid.partition("x")
        doc = dict(cfg.raw)
        doc["grid"] = dict(doc.get("grid", {}))
        doc["grid"]["n_x"] = int(nx)
        doc["grid"]["n_y"] = int(ny or nx)
        cfg = parse_config(doc, command)
    return cfg


def _outdir(args, command) -> Path:
    out = Path(args.out) if args.out else Path(f"scaperture-{command}")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _db_factor(convention: str) -> float:
    return 20.0 if convention == "amplitude20" else 10.0


def _field_csv(path, grid, values, unit, cfg):
    import numpy as np

    from scaperture.constants import GAUSS
    from scaperture.io.writers import write_csv_atomic

    pts = grid.points
    factor = _db_factor(cfg.db_convention)
    with np.errstate(divide="ignore"):
        db = factor * np.log10(np.abs(values) / GAUSS)
    write_csv_atomic(
        path,
        {"x_m": pts[:, 0], "y_m": pts[:, 1], "value": values, "value_db": db},
        header_comments=[
            f"value unit: {unit}",
            f"value_db: {factor} log10(|value| / 1 gauss), convention {cfg.db_convention}",
        ],
    )


def _cmd_analytic(args) -> int:
    import numpy as np

    from scaperture.analytic.centered import field_centered
    from scaperture.analytic.inplane import field_inplane
    from scaperture.io.writers import write_csv_atomic, write_manifest

    cfg = _resolve_config(args, "analytic")
    out = _outdir(args, "analytic")
    radius = cfg.geometry.radius
    if cfg.analytic_kind == "curve":
        xs = np.linspace(0.02 * radius, 3.0 * radius, cfg.analytic_samples)
        bz = field_inplane("z", cfg.moment, xs, radius)[:, 2]
        factor = _db_factor(cfg.db_convention)
        from scaperture.constants import GAUSS

        with np.errstate(divide="ignore"):
            db = factor * np.log10(np.abs(bz) / GAUSS)
        write_csv_atomic(
            out / "curve.csv",
            {"x_m": xs, "value": bz, "value_db": db},
            header_comments=[
                "value unit: tesla (Bz of a z dipole at the aperture center, z = 0)",
                f"value_db: {factor} log10(|value| / 1 gauss), convention {cfg.db_convention}",
            ],
        )
        print(f"curve: {out / 'curve.csv'}")
    else:
        n = cfg.analytic_samples
        span = np.linspace(-2.0 * radius, 2.0 * radius, n)
        xs, zs, bxs, bzs = [], [], [], []
        for zv in span:
            for xv in span:
                if np.hypot(xv, zv) < 0.05 * radius:
                    continue
                if zv == 0.0 and abs(xv) >= radius:
                    bx = bz = 0.0
                else:
                    b = field_centered([0, 0, cfg.moment], [xv, 0.0, zv], radius)
                    bx, bz = b[0], b[2]
                xs.append(xv)
                zs.append(zv)
                bxs.append(bx)
                bzs.append(bz)
        write_csv_atomic(
            out / "map.csv",
            {"x_m": np.array(xs), "z_m": np.array(zs),
             "bx_t": np.array(bxs), "bz_t": np.array(bzs)},
            header_comments=["field unit: tesla (x-z plane through a centered z dipole)"],
        )
        print(f"map: {out / 'map.csv'}")
    write_manifest(out / "manifest.json", "analytic", cfg.raw, args.threads_resolved)
    return EXIT_OK


def _solve_common(cfg):
    from scaperture.experiments.grids import scenario_grid
    from scaperture.geometry import Dipole
    from scaperture.solver.system import BrandtSystem

    probe_x = cfg.geometry.edge_x - cfg.sweep_d
    grid = scenario_grid(
        cfg.geometry, cfg.film, cfg.n_x,
        dipole_x=cfg.dipole_x, probe_x=probe_x, y_line=cfg.y_offset, ratio=cfg.ratio,
    )
    dipole = Dipole(position=[cfg.dipole_x, cfg.dipole_y, 0.0],
                    moment=[0.0, 0.0, cfg.moment])
    system = BrandtSystem(cfg.geometry, cfg.film, grid)
    return grid, system.solve(dipole), system


def _cmd_solve(args) -> int:
    from scaperture.io.writers import write_json_atomic, write_manifest

    cfg = _resolve_config(args, "solve")
    out = _outdir(args, "solve")
    grid, sol, system = _solve_common(cfg)
    _field_csv(out / "hz.csv", grid, sol.h_z.values, "A/m (perpendicular field)", cfg)
    _field_csv(out / "g.csv", grid, sol.g.values, "A (stream function)", cfg)
    write_json_atomic(
        out / "summary.json",
        {
            "aperture_current_A": sol.aperture_current,
            "aperture_flatness": sol.aperture_flatness,
            "london_residual": sol.london_residual,
            "condition_estimate": system.condition_estimate,
        },
    )
    write_manifest(out / "manifest.json", "solve", cfg.raw, args.threads_resolved)
    print(f"hz: {out / 'hz.csv'}")
    print(f"g: {out / 'g.csv'}")
    print(f"aperture current: {sol.aperture_current:.6e} A "
          f"(flatness {sol.aperture_flatness:.2e})")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from scaperture.experiments.sweeps import sweep
    from scaperture.geometry import Ellipse
    from scaperture.io.writers import write_json_atomic, write_manifest

    cfg = _resolve_config(args, "sweep")
    out = _outdir(args, "sweep")
    kwargs = dict(
        moment=cfg.moment,
        y_offset=cfg.y_offset if cfg.engine == "numeric" else 0.0,
        n=cfg.n_x,
        ratio=cfg.ratio,
        smooth_window=cfg.smooth_window,
        london_depth=cfg.film.london_depth,
        thickness=cfg.film.thickness,
    )
    if isinstance(cfg.geometry, Ellipse):
        kwargs["b"] = cfg.geometry.b
    res = sweep(cfg.scenario, cfg.sweep_d, list(cfg.sweep_radii), cfg.engine, **kwargs)
    payload = {
        "scenario": res.scenario,
        "engine": res.engine,
        "d_m": res.d,
        "y_offset_m": res.y_offset,
        "points": [
            {"L_m": float(length), "B_T": float(b), "sigma_B_T": float(s)}
            for length, b, s in res.points()
        ],
        "fit": {
            "slope": res.fit.slope,
            "slope_err": res.fit.slope_err,
            "intercept": res.fit.intercept,
        },
        "metadata": res.metadata,
        "db_convention": cfg.db_convention,
    }
    write_json_atomic(out / "sweep.json", payload)
    write_manifest(out / "manifest.json", "sweep", cfg.raw, args.threads_resolved)
    print(f"sweep: {out / 'sweep.json'}")
    print(f"slope: {res.fit.slope:+.3f} +- {res.fit.slope_err:.3f}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    from scaperture.io.writers import write_csv_atomic, write_json_atomic, write_manifest

    cfg = _resolve_config(args, "compare")
    out = _outdir(args, "compare")
    from scaperture.experiments.compare import compare_engines

    rep = compare_engines(
        cfg.scenario,
        cfg.geometry,
        cfg.sweep_d,
        moment=cfg.moment,
        n=cfg.n_x,
        ratio=cfg.ratio,
        y_line=cfg.y_offset,
        london_depth=cfg.film.london_depth,
        thickness=cfg.film.thickness,
    )
    write_csv_atomic(
        out / "compare.csv",
        {
            "x_m": rep.x_positions,
            "bz_numeric_t": rep.numeric_bz,
            "bz_analytic_t": rep.analytic_bz,
            "delta_db": rep.delta_db,
        },
        header_comments=[
            "numeric field converted to the physical in-plane dipole convention",
            f"conventional offset if unconverted: {rep.convention_offset_db:.4f} dB",
        ],
    )
    write_json_atomic(
        out / "compare.json",
        {
            "scenario": rep.scenario,
            "median_abs_db": rep.median_abs_db,
            "quantiles_abs_db": {str(k): v for k, v in rep.quantiles_abs_db.items()},
            "sign_agreement": rep.sign_agreement,
            "exterior_peak_ratio": rep.exterior_peak_ratio,
            "convention_offset_db": rep.convention_offset_db,
            "n_points": int(len(rep.delta_db)),
        },
    )
    write_manifest(out / "manifest.json", "compare", cfg.raw, args.threads_resolved)
    print(f"compare: {out / 'compare.json'}")
    print(f"median |delta dB|: {rep.median_abs_db:.3f}, "
          f"sign agreement: {rep.sign_agreement:.3f}")
    return EXIT_OK


def _cmd_coupling(args) -> int:
    from scaperture.experiments.coupling import numeric_coupling
    from scaperture.io.writers import write_json_atomic, write_manifest

    cfg = _resolve_config(args, "coupling")
    out = _outdir(args, "coupling")
    est = numeric_coupling(
        cfg.geometry,
        cfg.sweep_d,
        moment=cfg.moment,
        n=cfg.n_x,
        ratio=cfg.ratio,
        y_line=cfg.y_offset,
        london_depth=cfg.film.london_depth,
        thickness=cfg.film.thickness,
    )
    write_json_atomic(
        out / "coupling.json",
        {
            "separation_m": est.separation,
            "field_T": est.field,
            "coupling_Hz": est.coupling,
        },
    )
    write_manifest(out / "manifest.json", "coupling", cfg.raw, args.threads_resolved)
    print(f"coupling: {est.coupling:.4g} Hz at {est.separation * 1e9:.0f} nm")
    return EXIT_OK


_HANDLERS = {
    "analytic": _cmd_analytic,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "coupling": _cmd_coupling,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.threads_resolved = _apply_threads(args.threads)

    from scaperture.geometry import ConfigurationError
    from scaperture.solver.system import SolverError

    try:
        return _HANDLERS[args.command](args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())

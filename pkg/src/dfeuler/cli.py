"""Command-line driver: benchmark runs, error norms, and artifact export."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from .cases import case_from_dict, case_lookup, init_fields
from .indicator import AdaptionCoefficients
from .io import (
    diagnostics_line,
    exact_solution_table,
    l1_error,
    read_solution,
    write_manifest,
    write_regions,
    write_solution,
)
from .state import ConfigError, SolverError
from .timestepping import SolverContext, run_solver

MIN_CELLS = 11  # six-cell interpolation stencils plus the correction halo


@dataclass
class RunConfig:
    case: str
    nx: int | None = None
    ny: int | None = None
    scheme: str = "adaptive"  # adaptive | aweno | primitive-only | both
    cfl: float = 0.45
    kappa_rhou: float | None = None
    kappa_rhov: float | None = None
    kappa_p: float | None = None
    detect_every: int = 3
    t_final: float | None = None
    out: str = "solution.dat"
    regions_out: str | None = None
    diag_out: str | None = None
    snapshots: tuple = ()
    force_regions: str | None = None  # "S" | "RNC" (testing/accuracy runs)
    dt_scale: float | None = None  # dt = dt_scale * dx^(5/3) instead of CFL

    def validate(self):
        spec = case_lookup(self.case)
        nx = self.nx or spec.nx
        ny = self.ny or spec.ny
        if nx < MIN_CELLS or (spec.dim == 2 and ny < MIN_CELLS):
            raise ConfigError(
                f"mesh too small: need at least {MIN_CELLS} cells per active "
                f"dimension for the interpolation stencils, got nx={nx}"
                + (f", ny={ny}" if spec.dim == 2 else "")
            )
        if self.detect_every < 1:
            raise ConfigError("detect-every must be at least 1")
        if self.scheme not in ("adaptive", "aweno", "primitive-only", "both"):
            raise ConfigError(f"unknown scheme {self.scheme!r}")
        return spec


def _resolved_case(cfg: RunConfig):
    d = {"case": cfg.case}
    if cfg.nx:
        d["nx"] = cfg.nx
    if cfg.ny:
        d["ny"] = cfg.ny
    if cfg.t_final is not None:
        d["t_final"] = cfg.t_final
    for key in ("kappa_rhou", "kappa_rhov", "kappa_p"):
        val = getattr(cfg, key)
        if val is not None:
            d[key] = val
    return case_from_dict(d)


def _suffixed(path, tag):
    if "." in path.rsplit("/", 1)[-1]:
        stem, ext = path.rsplit(".", 1)
        return f"{stem}-{tag}.{ext}"
    return f"{path}-{tag}"


def run(cfg: RunConfig):
    """Execute the configured run(s); returns a manifest-style dict."""
    cfg.validate()
    spec = _resolved_case(cfg)
    schemes = ["adaptive", "aweno"] if cfg.scheme == "both" else [cfg.scheme]
    result = {
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(cfg).items()},
        "case": spec.name,
        "kappas": {
            "rhou": spec.kappas.kappa_rhou,
            "rhov": spec.kappas.kappa_rhov,
            "p": spec.kappas.kappa_p,
        },
        "cfl": cfg.cfl,
        "detect_every": cfg.detect_every,
        "runs": {},
    }
    grid = spec.grid(nx=cfg.nx, ny=cfg.ny)
    for scheme in schemes:
        ctx = SolverContext(
            gas=spec.gas(),
            grid=grid,
            bc=spec.boundary,
            kappas=spec.kappas,
            scheme=scheme,
            cfl=cfg.cfl,
            detect_every=cfg.detect_every,
            force_regions=cfg.force_regions,
            gravity=spec.gravity,
            dt_scale=cfg.dt_scale,
        )
        U0, V0 = init_fields(spec, grid)
        F0 = V0 if scheme == "primitive-only" else U0
        out = cfg.out if len(schemes) == 1 else _suffixed(cfg.out, scheme)
        diag_lines = []
        on_step = lambda st: diag_lines.append(diagnostics_line(st.stats[-1], grid.ndim))

        def on_snapshot(st, _out=out, _scheme=scheme):
            F = st.V if _scheme == "primitive-only" else st.U
            write_solution(
                _suffixed(_out, f"t{st.t:g}"), F, grid, spec.gas(), spec.name, st.t,
                primitive=_scheme == "primitive-only",
            )

        t0 = time.perf_counter()
        state = run_solver(
            ctx, F0, spec.t_final, snapshot_times=cfg.snapshots,
            on_snapshot=on_snapshot, on_step=on_step,
        )
        wall_s = time.perf_counter() - t0
        F = state.V if scheme == "primitive-only" else state.U
        write_solution(out, F, grid, spec.gas(), spec.name, state.t,
                       primitive=scheme == "primitive-only")
        if cfg.regions_out and state.regions is not None:
            rpath = cfg.regions_out if len(schemes) == 1 else _suffixed(cfg.regions_out, scheme)
            write_regions(rpath, state.regions, grid)
        if cfg.diag_out:
            dpath = cfg.diag_out if len(schemes) == 1 else _suffixed(cfg.diag_out, scheme)
            with open(dpath, "w") as fh:
                fh.write("# step t dt [nS nRC nRNC per direction] wall_ms\n")
                fh.write("\n".join(diag_lines) + "\n")
        result["runs"][scheme] = {
            "out": out,
            "steps": state.step,
            "t": state.t,
            "wall_s": wall_s,
            "first_order_fallbacks": state.fallback_total,
            "region_history": [
                [st.step, st.t] + [c for triple in st.counts for c in triple]
                for st in state.stats
                if st.detected
            ],
        }
    write_manifest(cfg.out + ".manifest.json", result)
    return result


def _build_parser():
    ap = argparse.ArgumentParser(prog="dfeuler", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    rp = sub.add_parser("run", help="run a benchmark case")
    rp.add_argument("--case")
    rp.add_argument("--nx", type=int)
    rp.add_argument("--ny", type=int)
    rp.add_argument("--scheme", choices=["adaptive", "aweno", "primitive-only", "both"])
    rp.add_argument("--cfl", type=float)
    rp.add_argument("--kappa-rhou", type=float)
    rp.add_argument("--kappa-rhov", type=float)
    rp.add_argument("--kappa-p", type=float)
    rp.add_argument("--detect-every", type=int)
    rp.add_argument("--t-final", type=float)
    rp.add_argument("--out")
    rp.add_argument("--regions-out")
    rp.add_argument("--diag-out")
    rp.add_argument("--snapshots",
                    help="comma-separated times to write intermediate solutions")
    rp.add_argument("--force-regions", choices=["S", "RNC"])
    rp.add_argument("--dt-scale", type=float,
                    help="fixed dt = SCALE * dx^(5/3) instead of the CFL step")
    rp.add_argument("--config", help="JSON file with the same keys as the flags")

    lp = sub.add_parser("l1", help="per-component L1 norms between solutions")
    lp.add_argument("file_a")
    lp.add_argument("file_b", nargs="?")
    lp.add_argument("--exact", help="compare against a case's exact solution")
    return ap


def _config_from_args(args):
    # config file first, explicit flags override
    data = {}
    if args.config:
        with open(args.config) as fh:
            data.update(json.load(fh))
    for key in (
        "case", "nx", "ny", "scheme", "cfl", "kappa_rhou", "kappa_rhov", "kappa_p",
        "detect_every", "t_final", "out", "regions_out", "diag_out",
        "force_regions", "dt_scale",
    ):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    if args.snapshots:
        data["snapshots"] = tuple(float(s) for s in args.snapshots.split(","))
    elif "snapshots" in data:
        data["snapshots"] = tuple(float(s) for s in data["snapshots"])
    if "case" not in data:
        raise ConfigError("no case given (flag --case or config file)")
    return RunConfig(**data)


def _cmd_l1(args):
    meta_a, ta = read_solution(args.file_a)
    if args.exact:
        spec = case_lookup(args.exact)
        grid = spec.grid(nx=meta_a["nx"])
        tb = exact_solution_table(spec, grid, meta_a["t"])
    elif args.file_b:
        _, tb = read_solution(args.file_b)
    else:
        raise ConfigError("need a second file or --exact")
    norms = l1_error(ta, tb, meta_a)
    for name, val in norms.items():
        print(f"L1[{name}] = {val:.12e}")
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "run":
            result = run(_config_from_args(args))
            for scheme, info in result["runs"].items():
                print(
                    f"{scheme}: {info['steps']} steps to t={info['t']:g} "
                    f"in {info['wall_s']:.2f}s -> {info['out']}"
                )
            return 0
        return _cmd_l1(args)
    except (ConfigError, SolverError) as exc:
        payload = getattr(exc, "payload", None)
        print(f"error: {exc}" + (f" {json.dumps(payload)}" if payload else ""), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

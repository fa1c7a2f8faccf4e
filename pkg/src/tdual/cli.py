"""Command-line entry point: run the package's checks and exports.

Subcommands
-----------
geometry   moment-map/fiber round trip, mirror-coordinate modulus identity,
           two-form algebra spot checks, critical points of the potential
branes     exactness of sections against the two-form, potential-gradient
           graph checks (rescaled and literal), short-time separation probes
quiver     build the cell quiver and the line-bundle quiver; export JSON/DOT
verify     exhaustive cell-vs-monomial comparison and strong exceptionality
oracle     exact relative-cohomology dimensions vs the combinatorial count
           (n = 1 or 2), with an epsilon-stability check

Every run prints a machine-readable JSON report (or writes it to --out); the
report has the fixed shape {command, n, parameters, checks, pass} with no
timestamps, so identical configurations produce byte-identical reports.  The
exit code is 0 when every check passes, 1 when any check fails, and 2 for
usage errors.  Seeded sweeps read the TDUAL_SEED environment variable
(default 0).
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import branes, bundles, cells, geometry, oracle
from .report import CheckReport


@dataclass
class RunConfig:
    """Resolved options of a single command-line invocation."""

    command: str
    n: int
    tol: float = 1e-12
    sym_tol: float = 1e-9
    fd_step: float = 1e-5
    graph_tol: float = 1e-7
    grid: int = 20
    samples: int = 10_000
    delta_probe: float = 0.05
    epsilon: Fraction = Fraction(1, 8)
    fmt: str = "json"
    out: str | None = None
    seed: int = 0

    def parameter_dict(self) -> dict:
        return {
            "n": self.n,
            "tol": self.tol,
            "sym_tol": self.sym_tol,
            "fd_step": self.fd_step,
            "graph_tol": self.graph_tol,
            "grid": self.grid,
            "samples": self.samples,
            "delta_probe": self.delta_probe,
            "epsilon": str(self.epsilon),
            "format": self.fmt,
            "seed": self.seed,
        }


def _moment_grid(n: int, density: int = 10) -> list[tuple[float, ...]]:
    axis = np.linspace(0.05, 0.95, density)
    return [
        x
        for x in itertools.product(axis, repeat=n)
        if sum(x) < 0.98
    ]


def check_moment_round_trip(cfg: RunConfig) -> CheckReport:
    """moment_map after fiber_radii_from_moment must be the identity."""
    max_dev = 0.0
    witness = None
    grid = _moment_grid(cfg.n)
    for x in grid:
        image = geometry.MomentImage(x)
        fiber = geometry.fiber_radii_from_moment(image)
        point = geometry.ProjectivePoint((1.0 + 0j,) + tuple(complex(r) for r in fiber.r))
        back = geometry.moment_map(point)
        dev = max(abs(a - b) for a, b in zip(back.x, image.x))
        if dev >= max_dev:
            max_dev = dev
            witness = {"x": list(x)}
    return CheckReport(
        check="geometry.moment_round_trip",
        parameters={"n": cfg.n, "tol": cfg.tol, "grid_points": len(grid)},
        max_deviation=max_dev,
        witness=witness,
        passed=max_dev <= cfg.tol,
    )


def check_mirror_modulus(cfg: RunConfig, num: int = 1000) -> CheckReport:
    """-log|z_j| / 2 pi must equal the moment coordinate of the fiber."""
    rng = np.random.default_rng(cfg.seed)
    max_dev = 0.0
    witness = None
    for _ in range(num):
        r = tuple(rng.uniform(0.2, 3.0, cfg.n))
        gamma = tuple(rng.uniform(0.0, 1.0, cfg.n))
        point = geometry.MirrorPoint(r, gamma)
        z = geometry.mirror_coordinates(point)
        fiber_point = geometry.ProjectivePoint((1.0 + 0j,) + tuple(complex(v) for v in r))
        phi = geometry.moment_map(fiber_point).x
        dev = max(
            abs(-math.log(abs(zj)) / (2 * math.pi) - pj) for zj, pj in zip(z, phi)
        )
        if dev >= max_dev:
            max_dev = dev
            witness = {"r": list(r), "gamma": list(gamma)}
    return CheckReport(
        check="geometry.mirror_modulus",
        parameters={"n": cfg.n, "tol": cfg.tol, "samples": num, "seed": cfg.seed},
        max_deviation=max_dev,
        witness=witness,
        passed=max_dev <= cfg.tol,
    )


def check_two_form_algebra(cfg: RunConfig, num: int = 200) -> CheckReport:
    """Antisymmetry and bilinearity of the reference two-form on random vectors."""
    rng = np.random.default_rng(cfg.seed + 1)
    base = geometry.MirrorPoint((1.0,) * cfg.n, (0.0,) * cfg.n)
    max_dev = 0.0
    for _ in range(num):
        u = geometry.TangentVector(tuple(rng.normal(size=cfg.n)), tuple(rng.normal(size=cfg.n)))
        v = geometry.TangentVector(tuple(rng.normal(size=cfg.n)), tuple(rng.normal(size=cfg.n)))
        w = geometry.TangentVector(tuple(rng.normal(size=cfg.n)), tuple(rng.normal(size=cfg.n)))
        c = float(rng.normal())
        ev = geometry.symplectic_form_eval
        scale = (2 * math.pi) ** cfg.n * 10
        dev = abs(ev(base, u, v) + ev(base, v, u)) / scale
        combo = geometry.TangentVector(
            tuple(c * a + b for a, b in zip(u.y, w.y)),
            tuple(c * a + b for a, b in zip(u.gamma, w.gamma)),
        )
        dev = max(dev, abs(ev(base, combo, v) - c * ev(base, u, v) - ev(base, w, v)) / scale)
        max_dev = max(max_dev, dev)
    return CheckReport(
        check="geometry.two_form_algebra",
        parameters={"n": cfg.n, "tol": cfg.tol, "samples": num, "seed": cfg.seed},
        max_deviation=max_dev,
        passed=max_dev <= cfg.tol,
    )


def check_critical_points(cfg: RunConfig, residual_tol: float = 1e-10) -> CheckReport:
    """Count, residuals, distinctness and values of the potential's critical points."""
    pts = geometry.superpotential_critical_points(cfg.n, residual_tol=residual_tol)
    ok = len(pts) == cfg.n + 1
    max_residual = 0.0
    expected_mag = (cfg.n + 1) * math.exp(-2 * math.pi / (cfg.n + 1))
    value_dev = 0.0
    for point, value in pts:
        grad = geometry.superpotential_gradient(point)
        max_residual = max(max_residual, math.sqrt(sum(abs(g) ** 2 for g in grad)))
        value_dev = max(value_dev, abs(abs(value) - expected_mag))
    min_gap = min(
        abs(pts[a][1] - pts[b][1])
        for a in range(len(pts))
        for b in range(a + 1, len(pts))
    )
    ok = ok and max_residual < residual_tol and min_gap > 1e-6 and value_dev <= 1e-12 * expected_mag + 1e-15
    return CheckReport(
        check="geometry.critical_points",
        parameters={"n": cfg.n, "residual_tol": residual_tol},
        max_deviation=max_residual,
        witness={
            "count": len(pts),
            "values": [v for _, v in pts],
            "min_value_gap": min_gap,
        },
        passed=ok,
    )


def run_geometry(cfg: RunConfig) -> list[CheckReport]:
    return [
        check_moment_round_trip(cfg),
        check_mirror_modulus(cfg),
        check_two_form_algebra(cfg),
        check_critical_points(cfg),
    ]


def run_branes(cfg: RunConfig) -> list[CheckReport]:
    checks = []
    levels = range(-cfg.n - 1, 0)
    for k in levels:
        checks.append(
            branes.check_exactness(cfg.n, k, density=cfg.grid, tol=cfg.sym_tol)
        )
    graph_density = {1: 100, 2: 12}.get(cfg.n, 6)
    offsets = (
        list(itertools.product(range(-cfg.n, 1), repeat=cfg.n))
        if cfg.n <= 2
        else [(0,) * cfg.n]
    )
    for k in levels:
        for a in offsets:
            checks.append(
                branes.check_graph(
                    cfg.n,
                    k,
                    a,
                    density=graph_density,
                    fd_step=cfg.fd_step,
                    tol=cfg.graph_tol,
                )
            )
    for s in branes.domain_face_midpoints(cfg.n):
        checks.append(
            branes.separation_probe(
                cfg.n,
                s,
                delta_probe=cfg.delta_probe,
                num_samples=cfg.samples,
                seed=cfg.seed,
            )
        )
    return checks


def run_verify(cfg: RunConfig) -> list[CheckReport]:
    quiver = cells.quotient_quiver(cfg.n)
    equivalence = bundles.verify_equivalence(cfg.n, quiver)
    exceptional = CheckReport(
        check="quiver.strong_exceptional",
        parameters={"n": cfg.n},
        max_deviation=None,
        passed=cells.is_strong_exceptional(quiver),
    )
    return [equivalence, exceptional]


def run_oracle(cfg: RunConfig) -> tuple[list[CheckReport], list[dict]]:
    levels = range(-cfg.n - 1, 0)
    detail = []
    mismatch = None
    unstable = None
    for i in levels:
        for j in levels:
            entries = oracle.hom_dim_detail(i, j, cfg.n, cfg.epsilon)
            detail.extend(entries)
            total = [0] * (cfg.n + 1)
            for e in entries:
                total = [t + b for t, b in zip(total, e["betti"])]
            expected = len(cells.hom_basis(i, j, cfg.n))
            if total[0] != expected or any(v != 0 for v in total[1:]):
                mismatch = mismatch or {"i": i, "j": j, "betti": total, "expected": expected}
            halved = oracle.oracle_hom_dim(i, j, cfg.n, cfg.epsilon / 2)
            if list(halved) != total:
                unstable = unstable or {"i": i, "j": j, "epsilon": str(cfg.epsilon)}
    checks = [
        CheckReport(
            check="oracle.match",
            parameters={"n": cfg.n, "epsilon": str(cfg.epsilon)},
            max_deviation=None,
            witness=mismatch,
            passed=mismatch is None,
        ),
        CheckReport(
            check="oracle.stability",
            parameters={"n": cfg.n, "epsilon": str(cfg.epsilon), "halved": str(cfg.epsilon / 2)},
            max_deviation=None,
            witness=unstable,
            passed=unstable is None,
        ),
    ]
    return checks, detail


def run_quiver(cfg: RunConfig) -> tuple[dict, bool]:
    cell_quiver = cells.quotient_quiver(cfg.n)
    bundle_quiver = bundles.line_bundle_quiver(cfg.n)
    dims = {f"{i},{j}": d for (i, j), d in cell_quiver.dims().items()}
    if cfg.fmt == "dot":
        export = cells.quiver_to_dot(cell_quiver, "U", "cells") + cells.quiver_to_dot(
            bundle_quiver, "O", "bundles"
        )
    else:
        export = {
            "cells": cells.quiver_to_dict(cell_quiver, "U"),
            "bundles": cells.quiver_to_dict(bundle_quiver, "O"),
        }
    body = {
        "command": "quiver",
        "n": cfg.n,
        "parameters": cfg.parameter_dict(),
        "dims": dims,
        "pass": True,
    }
    if cfg.out:
        with open(cfg.out, "w") as fh:
            if cfg.fmt == "dot":
                fh.write(export)
            else:
                json.dump(export, fh, indent=2)
                fh.write("\n")
        body["export_path"] = cfg.out
    else:
        body["export"] = export
    return body, True


def _emit(body: dict, cfg: RunConfig) -> None:
    if cfg.command == "quiver" or cfg.fmt == "json":
        text = json.dumps(body, indent=2) + "\n"
    else:
        lines = [f"{body['command']} n={body['n']}"]
        for check in body.get("checks", []):
            status = "PASS" if check["pass"] else "FAIL"
            dev = check.get("max_deviation")
            extra = f" max_deviation={dev:.3e}" if isinstance(dev, float) else ""
            lines.append(f"  {check['check']}: {status}{extra}")
        lines.append("pass" if body["pass"] else "fail")
        text = "\n".join(lines) + "\n"
    if cfg.out and cfg.command != "quiver":
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(("pass" if body["pass"] else "fail") + f" -> {cfg.out}")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdual",
        description="Checks and exports for the dual torus fibration toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="ambient dimension n >= 1")
    common.add_argument("--tol", type=float, default=1e-12, help="identity-check tolerance")
    common.add_argument("--sym-tol", type=float, default=1e-9, help="two-form vanishing tolerance")
    common.add_argument("--fd-step", type=float, default=1e-5, help="finite-difference step")
    common.add_argument("--graph-tol", type=float, default=1e-7, help="graph-check tolerance")
    common.add_argument("--grid", type=int, default=20, help="grid density per axis")
    common.add_argument("--samples", type=int, default=10_000, help="random samples per probe")
    common.add_argument("--delta-probe", type=float, default=0.05, help="probe time horizon")
    common.add_argument("--epsilon", type=str, default="1/8", help="oracle shrink margin (rational)")
    common.add_argument("--format", dest="fmt", choices=("json", "text", "dot"), default="json")
    common.add_argument("--out", type=str, default=None, help="write the report/export here")
    for name in ("geometry", "branes", "quiver", "verify", "oracle"):
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.error("--n must be a positive integer")
    try:
        epsilon = Fraction(args.epsilon)
    except (ValueError, ZeroDivisionError):
        parser.error(f"--epsilon must be a rational number, got {args.epsilon!r}")
    if args.command == "oracle":
        if args.n not in (1, 2):
            parser.error("the oracle supports --n 1 and --n 2 only")
        if not 0 < epsilon < oracle.MAX_EPSILON:
            parser.error(f"--epsilon must lie strictly between 0 and {oracle.MAX_EPSILON}")
    if args.command == "quiver" and args.fmt == "text":
        parser.error("quiver exports support --format json or dot")
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        tol=args.tol,
        sym_tol=args.sym_tol,
        fd_step=args.fd_step,
        graph_tol=args.graph_tol,
        grid=args.grid,
        samples=args.samples,
        delta_probe=args.delta_probe,
        epsilon=epsilon,
        fmt=args.fmt,
        out=args.out,
        seed=int(os.environ.get("TDUAL_SEED", "0")),
    )
    if cfg.command == "quiver":
        body, ok = run_quiver(cfg)
        _emit(body, cfg)
        return 0 if ok else 1
    detail = None
    if cfg.command == "geometry":
        checks = run_geometry(cfg)
    elif cfg.command == "branes":
        checks = run_branes(cfg)
    elif cfg.command == "verify":
        checks = run_verify(cfg)
    else:
        checks, detail = run_oracle(cfg)
    ok = all(c.passed for c in checks)
    body = {
        "command": cfg.command,
        "n": cfg.n,
        "parameters": cfg.parameter_dict(),
        "checks": [c.to_dict() for c in checks],
        "pass": ok,
    }
    if detail is not None:
        body["detail"] = detail
    _emit(body, cfg)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

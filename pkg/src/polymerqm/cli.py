"""Command line: tabulate kernels, evolve state files, verify invariants, sweep.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 physical-precondition violation (box state with wall support).

Runs are reproducible: configuration comes from one JSON file plus flag
overrides, no environment variables are read, and floats are written
with shortest round-trip precision, so identical config and seed give
byte-identical output files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .dynamics import WallSupportError
from .lattice import PhysicalParams, dimensionless_time
from .propagators import PropagatorKernel, continuum_sweep, evolve
from .stateio import load_wavefunction, save_wavefunction
from .verify import SUITE_NAMES, run_suite

_SYSTEM_CHOICES = ("free", "box", "box-images", "periodic")
_SYSTEM_TO_KERNEL = {
    "free": "free",
    "box": "box-spectral",
    "box-images": "box-images",
    "periodic": "periodic",
}
_CONFIG_KEYS = {
    "hbar", "mass", "mu0", "system", "N", "image_cutoff", "times",
    "format", "seed", "tolerances", "suite", "dx", "mu0_list",
}


@dataclass
class RunConfig:
    hbar: float = 1.0
    mass: float = 1.0
    mu0: float = 1.0
    system: str = "free"
    n: int | None = None
    image_cutoff: int | None = None
    times: tuple[float, ...] = (1.0,)
    output_format: str = "csv"
    seed: int = 0
    tolerances: dict | None = None
    suite: str = "all"
    dx: float = 1.0
    mu0_list: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.system not in _SYSTEM_CHOICES:
            raise ValueError(f"system must be one of {_SYSTEM_CHOICES}, "
                             f"got {self.system!r}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.output_format!r}")
        if not self.times:
            raise ValueError("times must be nonempty")
        if self.image_cutoff is not None and int(self.image_cutoff) < 1:
            raise ValueError("image_cutoff must be >= 1")
        if self.suite not in SUITE_NAMES:
            raise ValueError(f"suite must be one of {SUITE_NAMES}")

    def params(self) -> PhysicalParams:
        return PhysicalParams(hbar=self.hbar, mass=self.mass, mu0=self.mu0)

    def kernel(self) -> PropagatorKernel:
        system = _SYSTEM_TO_KERNEL[self.system]
        if system == "free":
            return PropagatorKernel.free(self.params())
        if self.n is None:
            raise ValueError(f"system {self.system!r} needs N")
        if system == "box-spectral":
            return PropagatorKernel.box_spectral(self.n, self.params())
        if system == "box-images":
            return PropagatorKernel.box_images(self.n, self.params(),
                                               self.image_cutoff)
        return PropagatorKernel.periodic(self.n, self.params(), self.image_cutoff)


def load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    with open(path) as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"config {path} has unknown keys {sorted(unknown)}")
    kwargs = {}
    for src, dst in (("hbar", "hbar"), ("mass", "mass"), ("mu0", "mu0"),
                     ("system", "system"), ("N", "n"),
                     ("image_cutoff", "image_cutoff"), ("seed", "seed"),
                     ("format", "output_format"), ("suite", "suite"),
                     ("dx", "dx"), ("tolerances", "tolerances")):
        if src in raw:
            kwargs[dst] = raw[src]
    if "times" in raw:
        kwargs["times"] = tuple(float(t) for t in raw["times"])
    if "mu0_list" in raw:
        kwargs["mu0_list"] = tuple(float(v) for v in raw["mu0_list"])
    return RunConfig(**kwargs)


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    for attr, key in (("hbar", "hbar"), ("mass", "mass"), ("mu0", "mu0"),
                      ("system", "system"), ("N", "n"),
                      ("image_cutoff", "image_cutoff"), ("seed", "seed"),
                      ("format", "output_format"), ("suite", "suite"),
                      ("dx", "dx")):
        value = getattr(args, attr, None)
        if value is not None:
            updates[key] = value
    if getattr(args, "dt", None) is not None:
        updates["times"] = (float(args.dt),)
    if getattr(args, "mu0_list", None) is not None:
        updates["mu0_list"] = _parse_mu0_list(args.mu0_list)
    return replace(config, **updates)


def _parse_mu0_list(text: str) -> tuple[float, ...]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "/" in token:
            num, den = token.split("/", 1)
            values.append(float(num) / float(den))
        else:
            values.append(float(token))
    if not values:
        raise ValueError("empty mu0 list")
    return tuple(values)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_table(header: list[str], rows: list[dict], fmt: str,
                out_path: str | None) -> None:
    """Materialize the whole table, then write; errors cannot leave a stub file."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row[h]) for h in header])
        text = buf.getvalue()
    else:
        text = json.dumps(rows, indent=2) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_kernel(args: argparse.Namespace, config: RunConfig) -> int:
    kernel = config.kernel()
    params = config.params()
    if config.system == "free" or config.system == "periodic":
        j_lo = args.j_min if args.j_min is not None else -4
        j_hi = args.j_max if args.j_max is not None else 4
        r_lo = args.r_min if args.r_min is not None else -4
        r_hi = args.r_max if args.r_max is not None else 4
    else:
        j_lo = args.j_min if args.j_min is not None else 0
        j_hi = args.j_max if args.j_max is not None else config.n
        r_lo = args.r_min if args.r_min is not None else 0
        r_hi = args.r_max if args.r_max is not None else config.n
    if j_lo > j_hi or r_lo > r_hi:
        raise ValueError("empty index range")

    rows = []
    for dt in config.times:
        z = dimensionless_time(params, dt)
        for j in range(j_lo, j_hi + 1):
            for r in range(r_lo, r_hi + 1):
                value = kernel(j, r, dt)
                rows.append({
                    "system": config.system, "j": j, "r": r,
                    "dt": float(dt), "z": z,
                    "re": float(value.real), "im": float(value.imag),
                })
    _emit_table(["system", "j", "r", "dt", "z", "re", "im"], rows,
                config.output_format, args.out)
    return 0


def cmd_evolve(args: argparse.Namespace, config: RunConfig) -> int:
    psi0 = load_wavefunction(args.state)
    # the sidecar carries the physics; the config only selects the system
    p = psi0.lattice.params
    config = replace(config, hbar=p.hbar, mass=p.mass, mu0=p.mu0)
    kernel = config.kernel()
    dt = config.times[0]
    window = None
    if args.out_window is not None:
        lo, hi = args.out_window.split(":", 1)
        window = (int(lo), int(hi))
    psi1 = evolve(psi0, kernel, dt, window)
    save_wavefunction(psi1, args.out)
    sys.stdout.write(f"norm_before={psi0.norm()!r}\n")
    sys.stdout.write(f"norm_after={psi1.norm()!r}\n")
    return 0


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    results = run_suite(config.suite, params=config.params(),
                        n_box=config.n if config.n else 8,
                        seed=config.seed, overrides=config.tolerances)
    rows = [{
        "suite": r.suite, "name": r.name,
        "deviation": r.deviation, "tolerance": r.tolerance,
        "status": "pass" if r.passed else "fail",
    } for r in results]
    _emit_table(["suite", "name", "deviation", "tolerance", "status"],
                rows, config.output_format, args.out)
    failures = [r for r in results if not r.passed]
    if args.out is not None or config.output_format == "json":
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{mark} {r.suite}/{r.name} "
                             f"dev={r.deviation!r} tol={r.tolerance!r}\n")
    for r in failures:
        sys.stderr.write(f"FAIL {r.suite}/{r.name}: deviation {r.deviation!r} "
                         f"exceeds tolerance {r.tolerance!r}\n")
    return 1 if failures else 0


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    mu0_list = config.mu0_list
    if not mu0_list:
        raise ValueError("sweep needs mu0_list (flag --mu0-list or config)")
    points = continuum_sweep(config.dx, config.times[0], mu0_list,
                             hbar=config.hbar, mass=config.mass)
    rows = []
    for i, pt in enumerate(points):
        if i + 1 < len(points) and points[i + 1].abs_error > 0:
            order = math.log2(pt.abs_error / points[i + 1].abs_error)
        else:
            order = None
        rows.append({
            "mu0": pt.mu0, "l": pt.sites, "z": pt.z,
            "abs_error": pt.abs_error, "empirical_order": order,
        })
    _emit_table(["mu0", "l", "z", "abs_error", "empirical_order"], rows,
                config.output_format, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--system", choices=_SYSTEM_CHOICES)
    sub.add_argument("--N", type=int, help="box intervals (walls at 0 and N)")
    sub.add_argument("--image-cutoff", dest="image_cutoff", type=int)
    sub.add_argument("--mu0", type=float)
    sub.add_argument("--hbar", type=float)
    sub.add_argument("--mass", type=float)
    sub.add_argument("--dt", type=float, help="single evolution time")
    sub.add_argument("--format", choices=("csv", "json"))
    sub.add_argument("--seed", type=int)
    sub.add_argument("--out", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polymerqm",
        description="Polymer lattice propagators: tabulate, evolve, verify, sweep.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_kernel = subs.add_parser("kernel", help="tabulate a propagator kernel")
    _add_common(p_kernel)
    p_kernel.add_argument("--j-min", type=int)
    p_kernel.add_argument("--j-max", type=int)
    p_kernel.add_argument("--r-min", type=int)
    p_kernel.add_argument("--r-max", type=int)
    p_kernel.set_defaults(func=cmd_kernel)

    p_evolve = subs.add_parser("evolve", help="evolve a wavefunction file")
    _add_common(p_evolve)
    p_evolve.add_argument("state", help="input wavefunction CSV (with JSON sidecar)")
    p_evolve.add_argument("--out-window",
                          help="free/periodic output window lo:hi "
                               "(use --out-window=-8:8 for negative bounds)")
    p_evolve.set_defaults(func=cmd_evolve)

    p_verify = subs.add_parser("verify", help="run an invariant suite")
    _add_common(p_verify)
    p_verify.add_argument("--suite", choices=SUITE_NAMES)
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = subs.add_parser("sweep", help="continuum-limit error sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--dx", type=float, help="fixed physical separation")
    p_sweep.add_argument("--mu0-list", dest="mu0_list",
                         help="comma-separated spacings, fractions allowed (1/8,1/16)")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.command == "evolve" and args.out is None:
            raise ValueError("evolve needs --out for the evolved state file")
        return args.func(args, config)
    except WallSupportError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: CSV tables of structure functions and limits.

Exit codes: 0 success, 1 a verification check failed, 2 invalid
parameters, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, montecarlo, structure, verify
from .hypergeom import ConvergenceError
from .structure import Method, PrecisionError, StructureQuery


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class KGrid:
    lo: float
    hi: float
    points: int
    spacing: str

    @classmethod
    def parse(cls, text: str) -> "KGrid":
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"k-grid must look like min:max:points:linear|log, got {text!r}")
        try:
            lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"k-grid has a non-numeric field: {text!r}") from None
        spacing = parts[3]
        if spacing not in ("linear", "log"):
            raise UsageError(f"k-grid spacing must be linear or log, got {spacing!r}")
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or not hi > lo:
            raise UsageError("k-grid needs 0 <= min < max")
        if pts < 2:
            raise UsageError("k-grid needs at least 2 points")
        if spacing == "log" and lo <= 0:
            raise UsageError("log spacing needs min > 0")
        return cls(lo, hi, pts, spacing)

    def values(self) -> list[float]:
        if self.spacing == "linear":
            v = np.linspace(self.lo, self.hi, self.points)
        else:
            v = np.geomspace(self.lo, self.hi, self.points)
        v[0], v[-1] = self.lo, self.hi
        return [float(x) for x in v]


@dataclass(frozen=True)
class RunManifest:
    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None


def _fmt(x) -> str:
    return repr(float(x))


def _write_csv(manifest: RunManifest, header: list[str], rows: list[list[str]]) -> None:
    text = "".join(",".join(r) + "\n" for r in [header, *rows])
    if manifest.output_path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(manifest.output_path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)


def _positive_int(p: dict, key: str) -> int:
    v = p[key]
    if v is None or v < 1:
        raise UsageError(f"--{key} must be a positive integer")
    return int(v)


def _mc_config(p: dict, a: float) -> montecarlo.McConfig:
    if a != int(a):
        raise UsageError("Monte Carlo needs an integer a")
    return montecarlo.McConfig(p["N"], p["N"] + int(a), _positive_int(p, "samples"),
                               p["seed"], _positive_int(p, "workers"))


def cmd_structure(manifest: RunManifest) -> int:
    p = manifest.params
    N = _positive_int(p, "N")
    a = float(p["a"])
    if not a > -1:
        raise UsageError("--a must exceed -1")
    ks = KGrid.parse(p["k_grid"]).values()
    method = p["method"]
    routes = ["jue", "kernel", "mc"] if method == "all" else [method]
    if method == "all" and a != int(a):
        routes.remove("mc")
    extended = p["precision"] == "extended"
    results: dict[str, list[tuple[float, float]]] = {}
    for route in routes:
        if route == "mc":
            est = montecarlo.estimate_structure_mc_grid(_mc_config(p, a), ks)
            results[route] = [(e.mean, e.std_error) for e in est]
        else:
            vals = []
            for k in ks:
                q = StructureQuery(N, a, k)
                r = structure.s_lue_jue(q) if route == "jue" else structure.s_lue_kernel_sum(q, extended=extended)
                vals.append((r.value, r.est_error))
            results[route] = vals
    label = {"jue": Method.JUE_QUADRATURE.value, "kernel": Method.KERNEL_SUM.value, "mc": "mc"}
    rows = [[_fmt(k), _fmt(results[r][i][0]), label[r], _fmt(results[r][i][1])]
            for i, k in enumerate(ks) for r in routes]
    _write_csv(manifest, ["k", "value", "method", "est_error"], rows)
    return 0


def cmd_asymptotic(manifest: RunManifest) -> int:
    p = manifest.params
    alpha = float(p["alpha"])
    if not alpha >= 0:
        raise UsageError("--alpha must be >= 0")
    k_c = asymptotics.ScalingParams(alpha).k_c
    rows = []
    for k in KGrid.parse(p["k_grid"]).values():
        regime = "plateau" if k >= k_c else "ramp"
        rows.append([_fmt(k), _fmt(asymptotics.s_inf(k, alpha)), regime])
    _write_csv(manifest, ["k", "s_inf", "regime"], rows)
    return 0


def cmd_verify(manifest: RunManifest) -> int:
    results = verify.run_checks(quick=bool(manifest.params.get("quick")))
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail} ({r.seconds:.2f} s)\n" for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{'all checks passed' if ok else 'some checks FAILED'}\n")
    if manifest.output_path in (None, "-"):
        sys.stdout.write("".join(lines))
    else:
        with open(manifest.output_path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write("".join(lines))
    return 0 if ok else 1


def cmd_montecarlo(manifest: RunManifest) -> int:
    p = manifest.params
    N = _positive_int(p, "N")
    n = p["n"] if p["n"] is not None else N + int(p["a"] or 0)
    if n < N:
        raise UsageError("--n must be >= --N")
    cfg = montecarlo.McConfig(N, n, _positive_int(p, "samples"), p["seed"], _positive_int(p, "workers"))
    ks = KGrid.parse(p["k_grid"]).values()
    rows = []
    for k, est in zip(ks, montecarlo.estimate_structure_mc_grid(cfg, ks)):
        exact = structure.s_lue_jue(StructureQuery(N, cfg.a, k)).value
        diff = est.mean - exact
        z = 0.0 if diff == 0 else (diff / est.std_error if est.std_error > 0 else math.copysign(math.inf, diff))
        rows.append([_fmt(k), _fmt(est.mean), _fmt(est.std_error), _fmt(exact), _fmt(z)])
    _write_csv(manifest, ["k", "mc_mean", "mc_std_error", "exact_jue", "z_score"], rows)
    return 0


COMMANDS = {
    "structure": cmd_structure,
    "asymptotic": cmd_asymptotic,
    "verify": cmd_verify,
    "montecarlo": cmd_montecarlo,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="luesff", description="Structure function of the Laguerre unitary ensemble.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--output", default=None, help="output path (default stdout)")
        sp.add_argument("--precision", choices=["double", "extended"], default="double")

    sp = sub.add_parser("structure", help="finite-N structure function on a k grid")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--a", type=float, default=0.0)
    sp.add_argument("--k-grid", dest="k_grid", required=True, help="min:max:points:linear|log")
    sp.add_argument("--method", choices=["jue", "kernel", "mc", "all"], default="jue")
    sp.add_argument("--samples", type=int, default=10_000, help="Monte Carlo samples")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)

    sp = sub.add_parser("asymptotic", help="large-N limit s_inf(k, alpha)")
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--k-grid", dest="k_grid", required=True)
    common(sp)

    sp = sub.add_parser("verify", help="run the cross-route consistency suite")
    sp.add_argument("--quick", action="store_true")
    common(sp)

    sp = sub.add_parser("montecarlo", help="Monte Carlo estimate against the exact route")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, default=None, help="rows of X (default N + a)")
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--k-grid", dest="k_grid", required=True)
    common(sp)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        params = {k: v for k, v in vars(args).items() if k not in ("command", "output")}
        manifest = RunManifest(args.command, params, args.output)
        return COMMANDS[args.command](manifest)
    except (PrecisionError, ConvergenceError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"luesff: numerical failure: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError) as exc:
        print(f"luesff: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"luesff: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

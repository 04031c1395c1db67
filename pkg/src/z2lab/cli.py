"""Batch command-line front end: build operators, run norm/condition/spectrum
experiments, emit machine-readable reports.

Operator mini-grammar (name[:param,...], nested names joined by ':'):

  matrix operators   identity | cesaro | hilbert:LAM | shift:left|right |
                     perm (seeded signed permutation) |
                     hausdorff:holder:A | hausdorff:euler:A |
                     hausdorff:gamma:A,ALPHA | hausdorff:gencesaro:A,ALPHA
  block operators    identity | ip | scalar:A,B,D,G | tau:MATRIX-OP |
                     tau-perm | diag:ones | diag:constgap:C | diag:invloggap:C |
                     TU:normalized-blocks:W | rank1:K,L | calderon:MOP:MOP

Reports are JSON (CSV for grids) with the resolved configuration embedded;
a fixed seed yields byte-identical output.  Exit codes: 0 success, 1 usage
or operator-spec error, 2 numerical warning, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .blockop import (
    block_operator_TU,
    calderon_upper,
    identity_operator,
    ip_operator,
    rank_one,
    scalar_matrix,
    tau,
)
from .conditions import OperatorFamily, full_report
from .errors import NoConvergence, Z2LabError
from .normest import growth_trend, opnorm_p_full, z2_opnorm_est
from .spectra import cesaro_disk_check, eigenvalues, resolvent_grid
from .z2core import Z2Functional, Z2Vec
from .zoo import (
    HausdorffSpec,
    cesaro,
    diagonal_z2,
    gap_symbol,
    hausdorff_matrix,
    hilbert_matrix,
    moment_euler,
    moment_gamma,
    moment_gen_cesaro,
    moment_holder,
    shift,
    signed_permutation,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_WARNING = 2
EXIT_SOLVER = 3


class OperatorSpecError(Z2LabError):
    """Unparseable or unknown operator spec."""


def _floats(s: str) -> list[float]:
    return [float(t) for t in s.split(",") if t]


def _seeded_perm(n: int, seed: int):
    rng = np.random.default_rng(seed)
    return rng.permutation(n), rng.choice([-1.0, 1.0], size=n)


def matrix_builder(spec: str, seed: int = 0):
    """Resolve a matrix operator spec to a builder n -> ndarray."""
    parts = spec.split(":")
    name, rest = parts[0], parts[1:]
    try:
        if name == "identity":
            return lambda n: np.eye(n)
        if name == "cesaro":
            return lambda n: cesaro(n)
        if name == "hilbert":
            lam = float(rest[0]) if rest else 1.0
            return lambda n: hilbert_matrix(n, lam)
        if name == "shift":
            direction = rest[0] if rest else "right"
            return lambda n: shift(n, direction)
        if name == "perm":
            return lambda n: signed_permutation(*_seeded_perm(n, seed))
        if name == "hausdorff":
            family, params = rest[0], _floats(rest[1]) if len(rest) > 1 else []
            makers = {
                "holder": lambda: moment_holder(*params),
                "euler": lambda: moment_euler(*params),
                "gamma": lambda: moment_gamma(*params),
                "gencesaro": lambda: moment_gen_cesaro(*params),
            }
            ms = makers[family]()
            return lambda n: hausdorff_matrix(HausdorffSpec(ms, n))
    except (KeyError, IndexError, ValueError, TypeError) as exc:
        raise OperatorSpecError(f"bad matrix operator spec {spec!r}: {exc}") from exc
    raise OperatorSpecError(f"unknown matrix operator {spec!r}")


def block_builder(spec: str, seed: int = 0):
    """Resolve a block operator spec to a builder n -> BlockOperator."""
    parts = spec.split(":")
    name, rest = parts[0], parts[1:]
    try:
        if name == "identity":
            return lambda n: identity_operator(n)
        if name == "ip":
            return lambda n: ip_operator(n)
        if name == "scalar":
            a, b, d, g = _floats(rest[0])
            return lambda n: scalar_matrix(a, b, d, g, n)
        if name == "tau":
            inner = matrix_builder(":".join(rest), seed=seed)
            return lambda n: tau(inner(n))
        if name == "tau-perm":
            return lambda n: tau(signed_permutation(*_seeded_perm(n, seed)))
        if name == "diag":
            if rest[0] == "ones":
                return lambda n: diagonal_z2(np.ones(2 * n))
            kind = {"constgap": "const", "invloggap": "invlog"}[rest[0]]
            c = float(rest[1]) if len(rest) > 1 else 0.5
            return lambda n: diagonal_z2(gap_symbol(n, kind, c))
        if name == "TU":
            if rest[0] != "normalized-blocks":
                raise ValueError(f"unknown TU variant {rest[0]!r}")
            width = int(rest[1]) if len(rest) > 1 else 2
            return lambda n: block_operator_TU(_disjoint_blocks(n, width, seed))
        if name == "rank1":
            k, l = (int(v) for v in rest[0].split(","))

            def build_rank1(n, k=k, l=l):
                phi = np.zeros(n)
                phi[k] = 1.0
                x = np.zeros(n)
                x[l] = 1.0
                return rank_one(
                    Z2Functional(phi=phi, psi=np.zeros(n)),
                    Z2Vec(np.zeros(n), x),
                )

            return build_rank1
        if name == "calderon":
            op_a = matrix_builder(rest[0], seed=seed)
            op_b = matrix_builder(rest[1], seed=seed)
            return lambda n: calderon_upper(op_a(n), op_b(n))
    except OperatorSpecError:
        raise
    except (KeyError, IndexError, ValueError, TypeError) as exc:
        raise OperatorSpecError(f"bad block operator spec {spec!r}: {exc}") from exc
    raise OperatorSpecError(f"unknown block operator {spec!r}")


def _disjoint_blocks(n: int, width: int, seed: int) -> list[np.ndarray]:
    """Seeded normalized blocks on consecutive disjoint supports of the given width."""
    rng = np.random.default_rng(seed)
    blocks = []
    for start in range(0, n - width + 1, width):
        b = np.zeros(n)
        vals = rng.standard_normal(width)
        b[start : start + width] = vals / np.linalg.norm(vals)
        blocks.append(b)
    return blocks


def _emit(report: dict, args, csv_rows=None) -> None:
    if getattr(args, "format", "json") == "csv":
        lines = ["lam_re,lam_im,value"]
        lines += [f"{re!r},{im!r},{val!r}" for re, im, val in csv_rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_report(command: str, config: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "library_version": __version__,
        "command": command,
        "config": config,
    }


def cmd_norm(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    config = {
        "op": args.op,
        "sizes": sizes,
        "seed": args.seed,
        "z2": args.z2,
        "p": None if args.z2 else args.p,
        "samples": args.samples,
        "ascent_steps": args.ascent_steps,
    }
    warned = False
    values = []
    if args.z2:
        builder = block_builder(args.op, seed=args.seed)
        for n in sizes:
            values.append(
                z2_opnorm_est(
                    builder(n),
                    samples=args.samples,
                    ascent_steps=args.ascent_steps,
                    seed=args.seed,
                )
            )
    else:
        builder = matrix_builder(args.op, seed=args.seed)
        for n in sizes:
            val, _, ok = opnorm_p_full(builder(n), args.p, seed=args.seed)
            warned = warned or not ok
            values.append(val)
    report = _base_report("norm", config)
    if len(sizes) >= 4:
        report["result"] = growth_trend(sizes, values).to_dict()
    else:  # too few sizes for a trend fit; report raw values
        report["result"] = {"sizes": sizes, "values": values, "fit": None}
    _emit(report, args)
    return EXIT_WARNING if warned else EXIT_OK


def cmd_check(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    config = {
        "op": args.op,
        "sizes": sizes,
        "seed": args.seed,
        "budget": args.budget,
    }
    family = OperatorFamily(block_builder(args.op, seed=args.seed), label=args.op)
    rep = full_report(family, sizes, budget=args.budget, seed=args.seed)
    report = _base_report("check", config)
    report["result"] = rep.to_dict()
    _emit(report, args)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    config = {
        "op": args.op,
        "p": args.p,
        "seed": args.seed,
        "n": args.n,
        "mode": "eigs" if args.eigs else ("disk-check" if args.disk_check else "grid"),
    }
    report = _base_report("spectrum", config)
    builder = matrix_builder(args.op, seed=args.seed)
    if args.eigs:
        ev = eigenvalues(builder(args.n))
        ev = np.sort_complex(np.asarray(ev, dtype=complex))
        report["result"] = {
            "eigenvalues": [{"re": z.real, "im": z.imag} for z in ev]
        }
        _emit(report, args)
        return EXIT_OK
    if args.disk_check:
        sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [128, 256, 512, 1024]
        config["sizes"] = sizes
        if args.op != "cesaro":
            raise OperatorSpecError("--disk-check applies to the cesaro operator")
        report["result"] = cesaro_disk_check(args.p, sizes=sizes)
        _emit(report, args)
        return EXIT_OK
    if not args.grid:
        raise OperatorSpecError("spectrum needs one of --eigs, --disk-check, --grid")
    lo, hi, count = args.grid.split(":")
    grid = np.linspace(float(lo), float(hi), int(count))
    config["grid"] = args.grid
    sg = resolvent_grid(builder, args.p, grid, args.n)
    report["result"] = sg.to_dict()
    _emit(report, args, csv_rows=sg.to_csv_rows())
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


DEFAULTS = {
    "norm": {
        "seed": 0,
        "out": None,
        "format": "json",
        "config": None,
        "p": 2.0,
        "z2": False,
        "sizes": "64,128,256,512,1024",
        "samples": 16,
        "ascent_steps": 30,
    },
    "check": {
        "seed": 0,
        "out": None,
        "format": "json",
        "config": None,
        "sizes": "64,128,256,512,1024",
        "budget": 6,
    },
    "spectrum": {
        "seed": 0,
        "out": None,
        "format": "json",
        "config": None,
        "p": 2.0,
        "n": 256,
        "eigs": False,
        "disk_check": False,
        "grid": None,
        "sizes": None,
    },
}


def build_parser() -> argparse.ArgumentParser:
    # Flags default to SUPPRESS so that absent ones can be filled from a
    # config file before falling back to DEFAULTS: flags > file > defaults.
    sup = argparse.SUPPRESS
    parser = _Parser(prog="z2lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--op", required=True, help="operator spec (see module docs)")
        p.add_argument("--seed", type=int, default=sup)
        p.add_argument("--out", default=sup, help="output path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default=sup)
        p.add_argument("--config", default=sup, help="JSON config file; flags win")

    p_norm = sub.add_parser("norm", help="norm estimates across sizes with a growth fit")
    common(p_norm)
    p_norm.add_argument("--p", type=float, default=sup)
    p_norm.add_argument("--z2", action="store_true", default=sup,
                        help="quasinorm estimate on pairs")
    p_norm.add_argument("--sizes", default=sup)
    p_norm.add_argument("--samples", type=int, default=sup)
    p_norm.add_argument("--ascent-steps", dest="ascent_steps", type=int, default=sup)
    p_norm.set_defaults(func=cmd_norm)

    p_check = sub.add_parser("check", help="boundedness-condition report for a block family")
    common(p_check)
    p_check.add_argument("--sizes", default=sup)
    p_check.add_argument("--budget", type=int, default=sup)
    p_check.set_defaults(func=cmd_check)

    p_spec = sub.add_parser("spectrum", help="eigenvalues, resolvent grids, disk checks")
    common(p_spec)
    p_spec.add_argument("--p", type=float, default=sup)
    p_spec.add_argument("--n", type=int, default=sup)
    p_spec.add_argument("--eigs", action="store_true", default=sup)
    p_spec.add_argument("--disk-check", dest="disk_check", action="store_true", default=sup)
    p_spec.add_argument("--grid", default=sup, help="real grid LO:HI:COUNT")
    p_spec.add_argument("--sizes", default=sup, help="sizes for --disk-check")
    p_spec.set_defaults(func=cmd_spectrum)
    return parser


def _resolve_args(args) -> argparse.Namespace:
    given = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    merged = dict(DEFAULTS[args.command])
    cfg_path = given.get("config")
    if cfg_path:
        with open(cfg_path) as fh:
            file_cfg = json.load(fh)
        for key, val in file_cfg.items():
            if key in merged:
                merged[key] = val
    merged.update(given)
    merged["command"] = args.command
    merged["func"] = args.func
    return argparse.Namespace(**merged)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        args = _resolve_args(args)
        return args.func(args)
    except OperatorSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoConvergence as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

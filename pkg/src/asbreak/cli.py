"""
Command-line front end.

Every command writes its scan records as CSV (``--out``, default stdout)
and a JSON run manifest (``--manifest``, default ``<out>.manifest.json``
when ``--out`` is given). ``asbreak replay MANIFEST`` reruns a manifest.

Exit status: 0 on success, 2 on bad arguments or input files, 1 when the
computation itself fails (e.g. a zero-probability switch branch).
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from importlib import metadata

import numpy as np

from . import experiments as ex
from . import states, unitaries
from .criteria import BOUNDARY_TOL, classify, is_absolutely_separable, is_ppt
from .errors import ASBreakError
from .linalg import RANK_TOL, as_dims
from .matrix_io import (
    check_density_matrix,
    check_unitary,
    fmt,
    load_matrix_json,
    write_records_csv,
)
from .switch import Branch, KrausChannel, measure_control, switch_joint, switch_unitary_closed

STATE_KINDS = ("werner", "boundary-rank3", "bd", "bd-corr", "bd-alpha", "mixed")


class InputError(Exception):
    """Bad user input; maps to exit status 2."""


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _floats(text: str, n: int, what: str) -> list[float]:
    vals = [float(x) for x in text.split(",")]
    if len(vals) != n:
        raise InputError(f"{what} needs {n} comma-separated numbers")
    return vals


def build_state(args):
    """Return ``(rho, dims)`` for ``--state`` and its parameter flags."""
    kind = args.state
    if kind.startswith("file:"):
        rho, dims = load_matrix_json(kind[5:])
        check_density_matrix(rho)
        return rho, as_dims(dims, rho.shape[0])
    if kind == "werner":
        return states.modified_werner(args.p, args.gamma, args.phi), (2, 2)
    if kind == "boundary-rank3":
        return states.boundary_rank3(), (2, 2)
    if kind == "bd":
        return states.bd_from_probs(*_floats(args.probs, 4, "--probs")), (2, 2)
    if kind == "bd-corr":
        return states.bd_from_correlations(*_floats(args.corr, 3, "--corr")), (2, 2)
    if kind == "bd-alpha":
        return states.bd_alpha_family(args.alpha), (2, 2)
    if kind == "mixed":
        return states.maximally_mixed((2, args.dB)), (2, args.dB)
    raise InputError(f"unknown state {kind!r}; expected one of {STATE_KINDS} or file:PATH")


def build_unitary(spec: str, n: int) -> np.ndarray:
    """``cnot``, ``identity``, ``utheta:T``, ``haar:SEED[:INDEX]`` or ``file:PATH``."""
    name, _, arg = spec.partition(":")
    if name == "cnot":
        U = unitaries.cnot()
    elif name == "identity":
        U = unitaries.identity(n)
    elif name == "utheta":
        U = unitaries.u_theta(float(arg))
    elif name == "haar":
        seed, _, index = arg.partition(":")
        U = unitaries.haar_random(n, int(seed or 0), int(index or 0))
    elif name == "file":
        U, _ = load_matrix_json(arg)
        check_unitary(U)
    else:
        raise InputError(f"unknown unitary {spec!r}")
    if U.shape != (n, n):
        raise InputError(f"unitary {spec!r} is {U.shape[0]}x{U.shape[1]}, state needs {n}x{n}")
    return U


def _grid(text: str) -> ex.GridSpec:
    try:
        return ex.GridSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_state_flags(sp):
    sp.add_argument("--state", default="werner",
                    help=f"one of {', '.join(STATE_KINDS)} or file:PATH (matrix JSON)")
    sp.add_argument("--p", type=float, default=0.15, help="Werner mixing weight")
    sp.add_argument("--gamma", type=float, default=math.pi / 4)
    sp.add_argument("--phi", type=float, default=0.0)
    sp.add_argument("--probs", default="0.25,0.25,0.25,0.25", help="Bell weights p1,p2,p3,p4")
    sp.add_argument("--corr", default="0,0,0", help="correlations c1,c2,c3")
    sp.add_argument("--alpha", type=float, default=0.25)
    sp.add_argument("--dB", type=int, default=2)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asbreak", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="CSV output path (default stdout)")
    common.add_argument("--manifest", help="JSON manifest path")
    common.add_argument("--tol-rank", type=float, default=RANK_TOL)
    common.add_argument("--tol-boundary", type=float, default=BOUNDARY_TOL)

    sp = sub.add_parser("classify", parents=[common], help="AS / PPT verdict of one state")
    _add_state_flags(sp)

    sp = sub.add_parser("switch", parents=[common], help="switch two unitaries on one state")
    _add_state_flags(sp)
    sp.add_argument("--u1", default="cnot")
    sp.add_argument("--u2", default="utheta:1.0471975512")
    sp.add_argument("--branch", choices=[b.value for b in Branch], default="plus")
    sp.add_argument("--kraus-form", action="store_true",
                    help="evaluate through the joint Kraus form and control measurement")

    sp = sub.add_parser("werner-scan", parents=[common], help="spectra vs theta at fixed p")
    sp.add_argument("--p", type=float, default=0.15)
    sp.add_argument("--theta", type=_grid, default=ex.DEFAULT_THETA)
    sp.add_argument("--gamma", type=float, default=math.pi / 4)
    sp.add_argument("--phi", type=float, default=0.0)

    sp = sub.add_parser("werner-surface", parents=[common], help="violation over p x theta")
    sp.add_argument("--p", type=_grid, default=ex.DEFAULT_P)
    sp.add_argument("--theta", type=_grid, default=ex.DEFAULT_THETA)
    sp.add_argument("--gamma", type=float, default=math.pi / 4)
    sp.add_argument("--phi", type=float, default=0.0)

    sp = sub.add_parser("random-scatter", parents=[common], help="Haar-random switch partners")
    _add_state_flags(sp)
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=ex.SCATTER_MODES, default="cnot_plus_random")

    sp = sub.add_parser("bd-geometry", parents=[common], help="Bell-diagonal AS survivors")
    sp.add_argument("--theta", type=float, default=math.pi / 6)
    sp.add_argument("--resolution", type=int, default=ex.DEFAULT_BD_RESOLUTION)

    sp = sub.add_parser("bd-alpha", parents=[common],
                        help="alpha family: grid scan (a:b:n) or random switch at one alpha")
    sp.add_argument("--alpha", default="0.17:0.5:34")
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("higher-dim", parents=[common], help="maximally mixed 2 x dB, two Haar")
    sp.add_argument("--dB", type=int, default=3)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("replay", help="rerun the command recorded in a manifest")
    sp.add_argument("manifest_path")
    sp.add_argument("--out")
    sp.add_argument("--manifest")
    return parser


def _tols(args):
    return {"tol_rank": args.tol_rank, "tol_boundary": args.tol_boundary}


def _summary_lines(rho, dims, tol_boundary, tol_rank):
    rep = is_absolutely_separable(rho, tol_boundary)
    label = classify(rho, dims, tol_boundary, report=rep)
    ppt = is_ppt(rho, dims)
    rank = sum(1 for x in rep.eigenvalues if x > tol_rank)
    return rep, [
        "eigenvalues: " + " ".join(fmt(x) for x in rep.eigenvalues),
        f"as_lhs: {fmt(rep.as_lhs)}",
        f"verdict: {rep.verdict.value}",
        f"classification: {label.value}",
        f"min_pt_eigenvalue: {fmt(ppt.min_eigenvalue)}",
        f"rank: {rank}",
    ]


def _prepare(args):
    """Validate inputs. Returns a zero-argument callable producing ``(records, lines)``."""
    tols = _tols(args)
    cmd = args.command

    if cmd == "classify":
        rho, dims = build_state(args)

        def run():
            _, lines = _summary_lines(rho, dims, args.tol_boundary, args.tol_rank)
            rec = ex.state_record("classify", 0, {"state": args.state}, rho, dims, **tols)
            return [rec], lines
        return run

    if cmd == "switch":
        rho, dims = build_state(args)
        n = rho.shape[0]
        u1, u2 = build_unitary(args.u1, n), build_unitary(args.u2, n)

        def run():
            if args.kraus_form:
                joint = switch_joint(KrausChannel.unitary(u1), KrausChannel.unitary(u2), rho)
                out = measure_control(joint, args.branch)
            else:
                out = switch_unitary_closed(u1, u2, rho, args.branch)
            _, lines = _summary_lines(out.state, dims, args.tol_boundary, args.tol_rank)
            lines.insert(0, f"branch: {out.branch.value}")
            lines.insert(1, f"probability: {fmt(out.probability)}")
            params = {"state": args.state, "u1": args.u1, "u2": args.u2, "branch": args.branch}
            rec = ex.state_record("switch", 0, params, out.state, dims, prob=out.probability,
                                  **tols)
            return [rec], lines
        return run

    if cmd == "werner-scan":
        return lambda: (ex.werner_eigen_scan(args.p, args.theta, args.gamma, args.phi, **tols), [])

    if cmd == "werner-surface":
        return lambda: (ex.werner_violation_surface(args.p, args.theta, args.gamma, args.phi,
                                                    **tols), [])

    if cmd == "random-scatter":
        rho, dims = build_state(args)
        if args.samples < 1:
            raise InputError("--samples must be >= 1")

        def run():
            recs = ex.random_unitary_scatter(rho, args.samples, args.seed, args.mode, dims,
                                             params={"state": args.state}, **tols)
            return recs, [f"violating_fraction: {fmt(ex.violating_fraction(recs))}"]
        return run

    if cmd == "bd-geometry":
        if args.resolution < 10:
            raise InputError("--resolution must be >= 10")

        def run():
            recs = ex.bd_geometry_scan(args.theta, args.resolution, **tols)
            _, n_invalid = ex.bd_grid_points(args.resolution)
            return recs, [f"valid_points: {len(recs)}", f"invalid_points: {n_invalid}",
                          f"surviving_as: {ex.surviving_as_count(recs)}"]
        return run

    if cmd == "bd-alpha":
        if ":" in args.alpha:
            grid = _grid(args.alpha)
            return lambda: (ex.bd_alpha_scan(grid, **tols), [])
        alpha = float(args.alpha)
        states.bd_alpha_family(alpha)

        def run():
            recs = ex.bd_alpha_random(alpha, args.samples, args.seed, **tols)
            return recs, [f"violating_fraction: {fmt(ex.violating_fraction(recs))}"]
        return run

    if cmd == "higher-dim":
        if args.dB < 3 or args.samples < 1:
            raise InputError("higher-dim needs --dB >= 3 and --samples >= 1")

        def run():
            recs = ex.higher_dim_scan(args.dB, args.samples, args.seed, **tols)
            return recs, [f"violating_fraction: {fmt(ex.violating_fraction(recs))}"]
        return run

    raise InputError(f"unknown command {cmd!r}")


def _strip_outputs(argv):
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("--out", "--manifest"):
            skip = True
            continue
        if tok.startswith(("--out=", "--manifest=")):
            continue
        out.append(tok)
    return out


def _manifest(args, argv) -> dict:
    params = {k: (str(v) if isinstance(v, ex.GridSpec) else v) for k, v in vars(args).items()
              if k not in ("out", "manifest", "command")}
    return {
        "command": args.command,
        "argv": _strip_outputs(argv),
        "params": params,
        "seed": getattr(args, "seed", 0),
        "rng_algorithm": unitaries.RNG_ALGORITHM,
        "version": _version(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "replay":
        try:
            with open(args.manifest_path, encoding="utf-8") as fh:
                stored = json.load(fh)["argv"]
        except (OSError, KeyError, ValueError) as exc:
            print(f"asbreak: cannot read manifest: {exc}", file=sys.stderr)
            return 2
        extra = []
        if args.out:
            extra += ["--out", args.out]
        if args.manifest:
            extra += ["--manifest", args.manifest]
        return main(list(stored) + extra)

    try:
        run = _prepare(args)
    except (InputError, ASBreakError, ValueError, OSError) as exc:
        print(f"asbreak: {exc}", file=sys.stderr)
        return 2

    try:
        records, lines = run()
    except ASBreakError as exc:
        print(f"asbreak: numerical failure: {exc}", file=sys.stderr)
        return 1

    single = args.command in ("classify", "switch")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_records_csv(fh, records)
    elif not single:
        write_records_csv(sys.stdout, records)
    for line in lines:
        print(line, file=sys.stdout if single else sys.stderr)

    manifest_path = args.manifest or (args.out + ".manifest.json" if args.out else None)
    if manifest_path:
        with open(manifest_path, "w", encoding="utf-8") as fh:
            json.dump(_manifest(args, argv), fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())

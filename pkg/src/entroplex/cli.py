"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, bounds, experiments
from ._backend import BACKEND
from .documents import (
    SCHEMA,
    DocumentError,
    channel_from_doc,
    load_json,
    measurement_from_doc,
    state_from_doc,
    to_csv,
)
from .errors import ValidationError
from .quantum import OrthonormalBasis, RandomSource, coherent_information

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.floating, float)):
        x = float(x)
        # JSON has no infinities
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _report(command: str, **payload) -> dict:
    doc = {"schema": SCHEMA, "tool_version": __version__, "command": command, "backend": BACKEND}
    doc.update(payload)
    return doc


def _emit(doc: dict, out: str | None, started: float):
    doc["timing"] = {"elapsed_s": round(time.perf_counter() - started, 6)}
    text = json.dumps(_jsonable(doc), indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: str | None, header, rows):
    if path:
        Path(path).write_text(to_csv(header, rows))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ENTROPLEX_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise DocumentError(f"ENTROPLEX_SEED must be an integer, got {env!r}") from None


def cmd_bounds(args, started):
    xdoc, xdig = load_json(args.x)
    zdoc, zdig = load_json(args.z)
    X = measurement_from_doc(xdoc, args.x)
    Z = measurement_from_doc(zdoc, args.z)
    inputs = {"x": xdig, "z": zdig}
    rho_a = None
    if args.state:
        sdoc, sdig = load_json(args.state)
        rho = state_from_doc(sdoc, args.state)
        inputs["state"] = sdig
        rho_a = rho.reduce(0) if len(rho.dims) > 1 else rho
    report = bounds.bound_report(X, Z, rho_a)
    _emit(_report("bounds", inputs=inputs, seed=None, bounds=report.as_dict()), args.out, started)
    return EXIT_OK


def cmd_verify(args, started):
    seed = _seed(args)
    trials = args.trials if args.trials is not None else experiments.PRESETS[args.preset]
    try:
        dims = experiments.parse_dims(args.dims) if args.dims else None
    except ValueError as exc:
        raise DocumentError(f"--dims: {exc}") from None
    names = experiments.SUITES if args.suite == "all" else (args.suite,)
    suites = {}
    failures = 0
    for name in names:
        # every suite starts from the master seed, so "all" reproduces single-suite runs
        records = experiments.run_suite(name, seed=seed, trials=trials, dims=dims, tol=args.tol, state=args.state)
        failed = [r for r in records if not r.passed]
        failures += len(failed)
        entry = {
            "records": len(records),
            "failures": len(failed),
            "min_slack": min((r.slack for r in records), default=None),
        }
        if not args.summary_only:
            entry["results"] = [r.as_dict() for r in records]
        suites[name] = entry
    doc = _report(
        "verify",
        inputs={},
        seed=seed,
        parameters={"suite": args.suite, "trials": trials, "dims": args.dims, "tol": args.tol, "state": args.state},
        suites=suites,
        passed=failures == 0,
    )
    _emit(doc, args.out, started)
    return EXIT_OK if failures == 0 else EXIT_FAILED


def cmd_example1(args, started):
    X, Z = experiments.example1_bases()
    report = experiments.example1_report()
    payload = {"bounds": report.as_dict()}
    seed = None
    if args.haar_samples:
        seed = _seed(args)
        mean, err = experiments.haar_average_q_state(X, Z, args.haar_samples, RandomSource(seed))
        payload["haar_average_q_state"] = {"mean": mean, "stderr": err, "samples": args.haar_samples}
    _emit(_report("example1", inputs={}, seed=seed, **payload), args.out, started)
    return EXIT_OK


def cmd_fig1(args, started):
    curve = experiments.fig1_curve(args.points)
    _write_csv(args.csv, ["p", "lambda_min"], curve)
    best = max(curve, key=lambda t: t[1])
    doc = _report(
        "fig1",
        inputs={},
        seed=None,
        curve=[list(t) for t in curve],
        maximum={"p": best[0], "lambda_min": best[1]},
    )
    _emit(doc, args.out, started)
    return EXIT_OK


def cmd_gap(args, started):
    try:
        dims = [int(d) for d in args.dims.split(",") if d.strip()]
    except ValueError:
        raise DocumentError(f"cannot parse --dims {args.dims!r}") from None
    try:
        points = experiments.gap_scan(dims, args.theta)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    header = ["d", "theta", "c_max", "c_2", "delta", "predicted_delta"]
    _write_csv(args.csv, header, [[p.d, p.theta, p.c_max, p.c_2, p.delta, p.predicted_delta] for p in points])
    doc = _report(
        "gap",
        inputs={},
        seed=None,
        points=[p.as_dict() for p in points],
        slope=experiments.gap_slope(points) if len(points) > 1 else None,
        predicted_slope=0.5 * (1 - math.cos(args.theta)),
    )
    _emit(doc, args.out, started)
    return EXIT_OK


def cmd_capacity(args, started):
    docs = {}
    inputs = {}
    for key in ("channel", "x", "xb", "z", "zb"):
        path = getattr(args, key)
        docs[key], inputs[key] = load_json(path)
    channel = channel_from_doc(docs["channel"], args.channel)
    bases = {}
    for key in ("x", "xb", "z", "zb"):
        m = measurement_from_doc(docs[key], getattr(args, key))
        if not isinstance(m, OrthonormalBasis):
            raise ValidationError(f"{getattr(args, key)}: capacity witness needs orthonormal bases")
        bases[key] = m
    terms = bounds.witness_terms(channel, bases["x"], bases["xb"], bases["z"], bases["zb"])
    terms["coherent_information"] = coherent_information(channel)
    _emit(_report("capacity", inputs=inputs, seed=None, capacity=terms), args.out, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entroplex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"entroplex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="complementarity bounds for a pair of measurements")
    p.add_argument("--x", required=True, help="basis or POVM document for X")
    p.add_argument("--z", required=True, help="basis or POVM document for Z")
    p.add_argument("--state", help="state document; its first subsystem is A")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("suite", choices=experiments.SUITES + ("all",))
    p.add_argument("--seed", type=int, default=None, help="master seed (default: $ENTROPLEX_SEED or 0)")
    p.add_argument("--trials", type=int, default=None, help="instances per suite (overrides --preset)")
    p.add_argument("--preset", choices=sorted(experiments.PRESETS), default="smoke")
    p.add_argument("--dims", help="comma-separated dimension tuples, e.g. 2x2,3x3x3")
    p.add_argument(
        "--tol", type=float, default=None,
        help=f"allowed negative slack (default {experiments.SLACK_TOL:g}; 1e-9 for the norm lemmas)",
    )
    p.add_argument("--state", choices=("random", "maxent"), default="random")
    p.add_argument("--summary-only", action="store_true", help="omit per-record results")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example1", help="bounds for the qutrit example pair")
    p.add_argument("--haar-samples", type=int, default=0, help="also average q over this many Haar pure states")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("fig1", help="lambda_min of the Delta(p) family for the qutrit example")
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--csv", help="write (p, lambda_min) rows here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("gap", help="q' - q_MU for the rotated-Fourier construction")
    p.add_argument("--dims", default="8,16,32,64,128")
    p.add_argument("--theta", type=float, default=math.pi / 4)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("capacity", help="quantum-capacity witness of a channel")
    p.add_argument("--channel", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--xb", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--zb", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_capacity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except (DocumentError, OSError) as exc:
        print(f"entroplex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # ValidationError and friends: the input parsed but violates an invariant
        print(f"entroplex: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``pseudofib {verify,frame,classify,selftest}``."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness, oneill, sampling
from .classify import BaseAssumption, Geometry, ProblemInstance, Status, admissible, classify
from .errors import ContractViolation
from .frames import build_fibre_frame, build_horizontal_basis, index_decomposition
from .hopf import Fibration, FibrationKind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(harness.EXIT_USAGE)


def _kind(value: str) -> FibrationKind:
    try:
        return FibrationKind.parse(value)
    except ContractViolation as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def _add_fibration(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", type=_kind, required=True,
                   help="real-to-complex | real-to-quaternionic | complex-to-quaternionic (or rc, rq, cq)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pseudofib", description="Generalized Hopf fibrations of pseudo-hyperbolic spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check the curvature identities on a canonical fibration")
    _add_fibration(v)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--tol", type=_positive_float, default=None,
                   help="one tolerance for every identity (default: per identity, or $PSEUDOFIB_TOL)")
    v.add_argument("--suites", default=",".join(harness.SUITES), help="comma separated subset of "
                   + ", ".join(harness.SUITES))
    v.add_argument("--with-samples", action="store_true", help="list sampled vectors in text output")
    _add_output(v)

    f = sub.add_parser("frame", help="build a fibre frame and adapted horizontal basis at a random point")
    _add_fibration(f)
    _add_output(f)

    c = sub.add_parser("classify", help="decide existence of a submersion with totally geodesic fibres")
    c.add_argument("--geometry", choices=[g.value for g in Geometry], required=True)
    c.add_argument("--total-dim", type=int, required=True,
                   help="dimension over the total space's scalars (n for CH^n_s)")
    c.add_argument("--total-index", type=int, default=0)
    c.add_argument("--fibre-dim", type=int, required=True, help="real dimension of the fibres")
    c.add_argument("--indefinite-fibres", action="store_true",
                   help="fibres are not negative definite")
    c.add_argument("--base", choices=[b.value for b in BaseAssumption], default=BaseAssumption.NONE.value)
    c.add_argument("--curvature-sign", type=int, choices=(-1, 1), default=-1)
    _add_output(c)

    s = sub.add_parser("selftest", help="quick end-to-end check")
    s.add_argument("--seed", type=int, default=0)
    _add_output(s)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args) -> int:
    suites = tuple(x.strip() for x in args.suites.split(",") if x.strip())
    report = harness.run_verify(args.kind, args.m, args.t, args.samples, args.seed, args.tol, suites)
    if args.format == "json":
        text = harness.render_json(report)
    else:
        text = harness.render_text(report, include_samples=args.with_samples)
    _emit(text, args.out)
    return 0 if report.passed else harness.EXIT_VERIFY_FAILED


def frame_summary(kind, m: int, t: int, seed: int) -> dict:
    F = Fibration(kind, m, t)
    rng = sampling.make_rng(seed)
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    frame = build_fibre_frame(F, p, X)
    basis = build_horizontal_basis(F, p, X, frame)
    decomposition = index_decomposition(basis, F)
    sols = admissible(F.base_dim, F.fibre_dim, F.base_index, F.fibre_dim)
    G = basis.gram()
    return {
        "fibration": F.describe(),
        "seed": seed,
        "p": [float(x) for x in p],
        "X": [float(x) for x in X],
        "frame_signs": list(frame.signs),
        "frame_gram": frame.gram().tolist(),
        "L_signs": list(basis.L_signs),
        "basis_size": len(basis.vectors()),
        "basis_gram_diagonal": [float(x) for x in np.diag(G)],
        "basis_offdiagonal_max": float(np.max(np.abs(G - np.diag(np.diag(G))))),
        "index_decomposition": list(decomposition),
        "arithmetic": [list(s) for s in sols],
        "consistent": decomposition in sols,
    }


def _cmd_frame(args) -> int:
    if args.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC:
        raise ContractViolation("frames need a total space of constant curvature (use rc or rq)")
    d = frame_summary(args.kind, args.m, args.t, args.seed)
    if args.format == "json":
        text = json.dumps(d, indent=2) + "\n"
    else:
        lines = [f"{k}: {json.dumps(v) if isinstance(v, list) else v}" for k, v in d.items()]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if d["consistent"] else harness.EXIT_VERIFY_FAILED


def _cmd_classify(args) -> int:
    inst = ProblemInstance(
        geometry=args.geometry,
        total_dim=args.total_dim,
        total_index=args.total_index,
        fibre_dim=args.fibre_dim,
        fibre_negative_definite=not args.indefinite_fibres,
        base_assumption=args.base,
        curvature_sign=args.curvature_sign,
    )
    verdict = classify(inst)
    _emit(harness.render_verdict(verdict, args.format), args.out)
    return harness.EXIT_CODES[verdict.status]


def selftest(seed: int = 0) -> dict:
    checks = {}
    F = Fibration(FibrationKind.REAL_TO_COMPLEX, 1, 0)
    p, X, Y = F.embed([1, 0]), F.embed([0, 1]), F.embed([0, 1j])
    a = oneill.A_tensor(F, p, X, Y)
    checks["anchor-value"] = abs(F.g(a, a) + 1.0) < 1e-7
    for kind in FibrationKind:
        report = harness.run_verify(kind, 1, 0, samples=5, seed=seed, frame_samples=1)
        checks[f"verify-{kind.value}"] = report.passed
    expected = [
        (ProblemInstance("real", 3, 1, 1), Status.EXISTS),
        (ProblemInstance("real", 15, 7, 7, base_assumption="index-extremal"), Status.EXISTS),
        (ProblemInstance("real", 23, 7, 7, base_assumption="isotropic"), Status.NOT_EXISTS),
        (ProblemInstance("complex", 3, 1, 2), Status.EXISTS),
        (ProblemInstance("quaternionic", 3, 1, 4, base_assumption="isotropic"), Status.NOT_EXISTS),
    ]
    checks["classification"] = all(classify(i).status is s for i, s in expected)
    return checks


def _cmd_selftest(args) -> int:
    checks = selftest(args.seed)
    if args.format == "json":
        text = json.dumps({"checks": checks, "pass": all(checks.values())}, indent=2) + "\n"
    else:
        text = "".join(f"{'PASS' if ok else 'FAIL'} {name}\n" for name, ok in checks.items())
    _emit(text, args.out)
    return 0 if all(checks.values()) else harness.EXIT_VERIFY_FAILED


COMMANDS = {"verify": _cmd_verify, "frame": _cmd_frame, "classify": _cmd_classify, "selftest": _cmd_selftest}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ContractViolation as exc:
        print(f"pseudofib: error: {exc}", file=sys.stderr)
        return harness.EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Verification suites and report rendering.

``run_verify`` draws seeded samples on a canonical fibration and records, per
identity, the largest residual seen.  Reports are deterministic given their
inputs; only ``wall_time`` varies between runs.
"""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import oneill, sampling
from .classify import CITATIONS, ClassificationVerdict, Status, admissible
from .errors import ContractViolation
from .frames import build_fibre_frame, build_horizontal_basis, index_decomposition, structure_constants
from .hopf import Fibration, FibrationKind
from .spaceform import curvature_complex_form, curvature_quaternionic_form

TOL_ENV = "PSEUDOFIB_TOL"
BASE_CURVATURE = -4.0
FRAME_SAMPLES = 8
CONSTANCY_POINTS = 10

EXIT_CODES = {
    Status.EXISTS: 0,
    Status.NOT_EXISTS: 3,
    Status.INADMISSIBLE: 4,
    Status.OUTSIDE: 5,
}
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

# id -> (default tolerance, what is measured)
IDENTITIES = {
    "a-quadratic": (1e-7, "g(A_X V, A_X W) - c g(X, X) g(V, W)"),
    "a-star-inverse": (1e-7, "A*_X A_X V + c g(X, X) V"),
    "a-alternating": (1e-7, "A_X Y + A_Y X"),
    "a-skew-adjoint": (1e-9, "g(A_X V, Y) + g(V, A_X Y)"),
    "a-extension-independence": (2e-7, "A_X Y from two different extensions of Y"),
    "a-kernel-constancy": (1e-6, "A_X Y along the fibre when A_X Y = 0 at p"),
    "t-vanishes": (1e-7, "T_V W and T_V Y (totally geodesic fibres)"),
    "mixed-curvature": (1e-6, "R(X, U, Y, V) - g(nabla_U A_X Y, V) - g(A_Y U, A_X V)"),
    "base-curvature": (1e-6, "relative error of R(X,Y,X,Y) + 3 g(A_X Y, A_X Y) against constant holomorphic/quaternionic curvature -4"),
    "composite-pushforward": (1e-6, "A-tensor of the composite computed upstairs vs on the intermediate quotient"),
    "scalar-product-preservation": (1e-12, "g(X lam, Y lam) - g(X, Y) and fibre invariance of the projection"),
    "transport-horizontality": (1e-12, "distance of X lam from the horizontal space at p lam"),
    "a-equivariance": (1e-7, "A at transported arguments minus transported A"),
    "frame-gram-constancy": (1e-6, "Gram matrix of the fibre frame along the fibre minus its signs"),
    "basis-orthonormality": (1e-6, "off-diagonal Gram entries of the horizontal basis"),
    "basis-transport": (1e-6, "transported horizontal basis minus the basis recomputed along the fibre"),
    "index-decomposition": (0.5, "mismatch count between (k, q1, q2) and the index arithmetic"),
    "structure-constants": (1e-6, "g(hat-nabla_{v_i} v_j, v_l) minus sgn(ijl) g(v_3, v_3)"),
    "third-vector-gauge": (1e-6, "hat-nabla_{v_1} v_2 - v_3 along the fibre"),
    "fibre-connection-circle": (1e-6, "hat-nabla_{v_1} v_1 for one-dimensional fibres"),
}

SUITES = ("oneill", "equivariance", "frames")


@dataclass
class IdentityRecord:
    identity: str
    description: str
    samples: int = 0
    max_residual: float = 0.0
    tolerance: float = 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def add(self, residual: float) -> None:
        residual = float(residual)
        if not np.isfinite(residual):
            residual = float("inf")
        self.samples += 1
        self.max_residual = max(self.max_residual, residual)

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "description": self.description,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    fibration: str
    kind: str
    m: int
    t: int
    seed: int
    samples: int
    generator: str
    records: list = field(default_factory=list)
    sampled: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def record(self, identity: str) -> IdentityRecord:
        for r in self.records:
            if r.identity == identity:
                return r
        raise KeyError(identity)

    def body(self) -> dict:
        return {
            "fibration": self.fibration,
            "kind": self.kind,
            "m": self.m,
            "t": self.t,
            "seed": self.seed,
            "samples": self.samples,
            "generator": self.generator,
            "pass": self.passed,
            "identities": [r.as_dict() for r in self.records],
            "sampled": self.sampled,
        }

    def as_dict(self) -> dict:
        out = self.body()
        out["wall_time"] = self.wall_time
        return out


def default_tolerance(identity: str, tol: float | None = None) -> float:
    if tol is not None:
        return tol
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ContractViolation(f"{TOL_ENV} must be a number, got {env!r}") from None
    return IDENTITIES[identity][0]


def _vec(v) -> list:
    return [float(x) for x in np.asarray(v).ravel()]


def _inf(v) -> float:
    return float(np.max(np.abs(v), initial=0.0))


class _Recorder:
    def __init__(self, tol):
        self.tol = tol
        self.records: dict[str, IdentityRecord] = {}

    def __call__(self, identity: str, residual: float) -> None:
        rec = self.records.get(identity)
        if rec is None:
            rec = IdentityRecord(identity, IDENTITIES[identity][1], tolerance=default_tolerance(identity, self.tol))
            self.records[identity] = rec
        rec.add(residual)


def _structures(F: Fibration, p):
    return [lambda V, a=a: F.horizontal_project(p, F.right_mul(V, a)) for a in F.horizontal_units]


def _base_curvature_relerr(F: Fibration, p, X, Y) -> float:
    AXY = oneill.A_tensor(F, p, X, Y)
    R = oneill.total_curvature(F, X, Y, X, Y)
    computed = R + 3.0 * F.g(AXY, AXY)
    J = _structures(F, p)
    if F.kind is FibrationKind.REAL_TO_COMPLEX:
        ref = curvature_complex_form(X, Y, J[0], BASE_CURVATURE, F.g)
    else:
        ref = curvature_quaternionic_form(X, Y, J, BASE_CURVATURE, F.g)
    scale = abs(R) + 3.0 * abs(F.g(AXY, AXY)) + abs(ref)
    return abs(computed - ref) / max(scale, 1e-300)


def _oneill_sample(F: Fibration, rng, rec: _Recorder) -> dict:
    c = oneill.TOTAL_CURVATURE
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    Y = sampling.unit_horizontal(F, p, rng)
    V = sampling.vertical(F, p, rng)
    W = sampling.vertical(F, p, rng)
    lam = sampling.fibre_element(F, rng)
    gXX = F.g(X, X)
    A = oneill.A_tensor

    AXV, AXW, AXY = A(F, p, X, V), A(F, p, X, W), A(F, p, X, Y)
    rec("a-quadratic", abs(F.g(AXV, AXW) - c * gXX * F.g(V, W)))
    rec("a-star-inverse", _inf(A(F, p, X, AXV) + c * gXX * V))
    rec("a-alternating", _inf(AXY + A(F, p, Y, X)))
    rec("a-skew-adjoint", abs(F.g(AXV, Y) + F.g(V, AXY)))

    # a second extension of Y that agrees with it only at p
    B1, B2 = rng.standard_normal(p.size), rng.standard_normal(p.size)
    bent = lambda x: F.horizontal_project(x, F.tangent_project(x, Y + F.g(x - p, B1) * B2))  # noqa: E731
    alt = F.vertical_project(p, oneill.covariant_derivative(F, p, X, bent))
    rec("a-extension-independence", _inf(alt - AXY))

    rec("t-vanishes", max(_inf(oneill.T_tensor(F, p, V, W)), _inf(oneill.T_tensor(F, p, V, Y))))
    if F.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC:
        rec("composite-pushforward", oneill.composite_pushforward_residual(F.m, F.t, p, X, Y))
    else:
        # both need a total space of constant curvature
        Y0 = Y - A(F, p, X, AXY) / (-c * gXX)
        q = F.right_mul(p, lam)
        rec("a-kernel-constancy", _inf(A(F, q, F.right_mul(X, lam), F.right_mul(Y0, lam))))
        rec("mixed-curvature", oneill.mixed_curvature_residual(F, p, X, Y, V, W))
    rec("base-curvature", _base_curvature_relerr(F, p, X, Y))
    return {"p": _vec(p), "X": _vec(X), "Y": _vec(Y), "V": _vec(V), "W": _vec(W), "lambda": _vec(lam)}


def _equivariance_sample(F: Fibration, rng, rec: _Recorder) -> dict:
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    Y = sampling.unit_horizontal(F, p, rng)
    V = sampling.vertical(F, p, rng)
    lam = sampling.fibre_element(F, rng)
    q = F.right_mul(p, lam)
    Xq, Yq = F.right_mul(X, lam), F.right_mul(Y, lam)
    same_fibre = 0.0 if F.project(q) == F.project(p) else 1.0
    rec("scalar-product-preservation", max(abs(F.g(Xq, Yq) - F.g(X, Y)), same_fibre))
    rec("transport-horizontality", max(_inf(Xq - F.horizontal_project(q, F.tangent_project(q, Xq))),
                                       _inf(Yq - F.horizontal_project(q, F.tangent_project(q, Yq)))))
    # the composite's A-tensor is only equivariant under the circle it quotients by
    mu = sampling.fibre_element(F, rng, circle=True)
    r = F.right_mul(p, mu)
    Xr, Yr, Vr = F.right_mul(X, mu), F.right_mul(Y, mu), F.right_mul(V, mu)
    A = oneill.A_tensor
    res = max(_inf(A(F, r, Xr, Yr) - F.right_mul(A(F, p, X, Y), mu)),
              _inf(A(F, r, Xr, Vr) - F.right_mul(A(F, p, X, V), mu)))
    rec("a-equivariance", res)
    return {"p": _vec(p), "X": _vec(X), "Y": _vec(Y), "V": _vec(V), "lambda": _vec(lam), "mu": _vec(mu)}


def _frames_sample(F: Fibration, rng, rec: _Recorder) -> dict:
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    frame = build_fibre_frame(F, p, X)
    points = sampling.fibre_points(F, p, rng)
    eps = np.diag(frame.signs)
    rec("frame-gram-constancy", max(_inf(frame.gram(q) - eps) for q in points))

    B = build_horizontal_basis(F, p, X, frame)
    G = B.gram()
    rec("basis-orthonormality", _inf(G - np.diag(np.diag(G))))
    far = points[sampling.DETERMINISTIC_FIBRE_POINTS:][:CONSTANCY_POINTS]
    rec("basis-transport", max(_inf(np.array(B.transported(q)) - np.array(B.recomputed(q))) for q in far))
    sols = admissible(F.base_dim, F.fibre_dim, F.base_index, F.fibre_dim)
    rec("index-decomposition", 0.0 if index_decomposition(B, F) in sols else 1.0)

    r = F.fibre_dim
    if r == 3:
        worst = 0.0
        for q in far[:2]:
            C = structure_constants(frame, q)
            e3 = F.g(*[frame.value(2, q)] * 2)
            expected = np.zeros((3, 3, 3))
            for perm in permutations(range(3)):
                expected[perm] = _perm_sign(perm) * e3
            worst = max(worst, _inf(C - expected))
        rec("structure-constants", worst)
        rec("third-vector-gauge", max(
            _inf(oneill.fibre_connection(F, q, frame.value(0, q), frame.field(1)) - frame.value(2, q))
            for q in far[:4]))
    else:
        rec("fibre-connection-circle", max(
            _inf(oneill.fibre_connection(F, q, frame.value(0, q), frame.field(0))) for q in far[:4]))
    return {"p": _vec(p), "X": _vec(X)}



def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def run_verify(kind, m: int, t: int, samples: int = 200, seed: int = 0, tol: float | None = None,
               suites=SUITES, frame_samples: int = FRAME_SAMPLES) -> VerificationReport:
    """Run the identity suites on a canonical fibration.

    ``tol`` replaces every identity's default tolerance when given.  The
    frame suite is expensive and uses at most ``frame_samples`` samples; it is
    skipped for the composite kind, whose total space is not of constant
    curvature.
    """
    if not isinstance(samples, int) or samples < 1:
        raise ContractViolation(f"samples must be a positive integer, got {samples!r}")
    if tol is not None and not tol > 0:
        raise ContractViolation(f"tol must be positive, got {tol!r}")
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ContractViolation(f"unknown suites {sorted(unknown)}")
    F = Fibration(kind, m, t)
    start = time.perf_counter()
    rng = sampling.make_rng(seed)
    rec = _Recorder(tol)
    sampled = []
    runners = {"oneill": (_oneill_sample, samples), "equivariance": (_equivariance_sample, samples),
               "frames": (_frames_sample, min(samples, frame_samples))}
    for suite in SUITES:
        if suite not in suites:
            continue
        if suite == "frames" and F.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC:
            continue
        fn, count = runners[suite]
        for i in range(count):
            sampled.append({"suite": suite, "index": i, **fn(F, rng, rec)})
    report = VerificationReport(F.describe(), F.kind.value, m, t, seed, samples, sampling.GENERATOR,
                                list(rec.records.values()), sampled)
    report.wall_time = time.perf_counter() - start
    return report


# -- rendering -----------------------------------------------------------------

def render_json(report: VerificationReport, include_time: bool = True) -> str:
    data = report.as_dict() if include_time else report.body()
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def render_text(report: VerificationReport, include_time: bool = True, include_samples: bool = False) -> str:
    lines = [
        f"fibration: {report.fibration}",
        f"kind: {report.kind}",
        f"m: {report.m}",
        f"t: {report.t}",
        f"seed: {report.seed}",
        f"samples: {report.samples}",
        f"generator: {report.generator}",
        f"pass: {str(report.passed).lower()}",
        "identities:",
    ]
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"  - {r.identity}: {status} max_residual={r.max_residual:.3e} "
                     f"tolerance={r.tolerance:.1e} samples={r.samples}")
    if include_samples:
        lines.append("sampled:")
        for s in report.sampled:
            lines.append("  - " + json.dumps(s))
    if include_time:
        lines.append(f"wall_time: {report.wall_time:.3f}")
    return "\n".join(lines) + "\n"


def verdict_dict(v: ClassificationVerdict) -> dict:
    inst = v.instance
    out = {"status": v.status.value, "exit_code": EXIT_CODES[v.status], "citation": list(v.citation),
           "explanation": [CITATIONS[c] for c in v.citation]}
    if inst is not None:
        out["instance"] = {
            "geometry": inst.geometry.value,
            "total_dim": inst.total_dim,
            "total_index": inst.total_index,
            "fibre_dim": inst.fibre_dim,
            "fibre_negative_definite": inst.fibre_negative_definite,
            "base_assumption": inst.base_assumption.value,
            "curvature_sign": inst.curvature_sign,
        }
    out["witness"] = None if v.witness is None else v.witness.description
    out["arithmetic"] = [list(s) for s in v.arithmetic]
    if v.note:
        out["note"] = v.note
    return out


def render_verdict(v: ClassificationVerdict, fmt: str = "text") -> str:
    d = verdict_dict(v)
    if fmt == "json":
        return json.dumps(d, indent=2, ensure_ascii=False) + "\n"
    lines = [f"status: {d['status']}"]
    if d["witness"]:
        lines.append(f"witness: {d['witness']}")
    lines.append("citation: " + ", ".join(d["citation"]))
    for c, e in zip(d["citation"], d["explanation"]):
        lines.append(f"  {c}: {e}")
    if d["arithmetic"]:
        lines.append("arithmetic (k, q1, q2): " + "; ".join(str(tuple(s)) for s in d["arithmetic"]))
    if "note" in d:
        lines.append(f"note: {d['note']}")
    return "\n".join(lines) + "\n"

"""Existence and nonexistence of submersions with totally geodesic fibres.

A decision procedure over dimension and index arithmetic.  Total spaces are
real, complex or quaternionic pseudo-hyperbolic spaces; dimensions are given
over the total space's own scalars (``total_dim`` is ``n`` for ``CH^n_s``) while
the fibre dimension is always real.

Verdicts cite the result they rest on by a stable key (see ``CITATIONS``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import ContractViolation
from .hopf import Fibration, FibrationKind

CITATIONS = {
    "index-arithmetic": "base dimension n = k(r+1) and index s = q1(r'+1) + q2(r-r')",
    "real-small-fibres": "definite fibres of dimension <= 3: complex or quaternionic Hopf families",
    "real-special-base": "isotropic or index-extremal base: the two Hopf families or H^15_{7+8t} -> H^8_{8t}(-4)",
    "lorentzian-total": "Lorentzian total space: the case of index one, reached without simple connectivity",
    "fibre-dim-two": "two-dimensional fibres are impossible",
    "no-cayley-base": "no submersion H^23_{7+8t} -> CaH^2_t",
    "complex-total": "complex total space: only CH^{2m+1}_{2t+1} -> HH^m_t",
    "complex-large-fibres": "complex fibres have real dimension at most 2",
    "quaternionic-total": "no submersion from HH^n_s with quaternionic fibres",
    "sign-mirror": "positive curvature handled by negating both metrics",
    "outside-hypotheses": "no classification result applies",
}


class Geometry(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNIONIC = "quaternionic"


_REAL_SCALE = {Geometry.REAL: 1, Geometry.COMPLEX: 2, Geometry.QUATERNIONIC: 4}


class BaseAssumption(str, Enum):
    NONE = "none"
    ISOTROPIC = "isotropic"
    INDEX_EXTREMAL = "index-extremal"


class Status(str, Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    INADMISSIBLE = "Inadmissible"
    OUTSIDE = "OutsideTheoremHypotheses"


@dataclass(frozen=True)
class ProblemInstance:
    """A candidate submersion from a pseudo-hyperbolic total space.

    ``curvature_sign = +1`` means a pseudo-sphere; it is decided through the
    mirrored hyperbolic instance of index ``total_dim - total_index``, and
    ``fibre_negative_definite`` then refers to the mirrored fibres (positive
    definite ones upstairs).
    """

    geometry: Geometry
    total_dim: int
    total_index: int
    fibre_dim: int
    fibre_negative_definite: bool = True
    base_assumption: BaseAssumption = BaseAssumption.NONE
    curvature_sign: int = -1

    def __post_init__(self):
        try:
            if type(self.geometry) is not Geometry:
                object.__setattr__(self, "geometry", Geometry(self.geometry))
            if type(self.base_assumption) is not BaseAssumption:
                object.__setattr__(self, "base_assumption", BaseAssumption(self.base_assumption))
        except ValueError as exc:
            raise ContractViolation(str(exc)) from None
        for name in ("total_dim", "total_index", "fibre_dim", "curvature_sign"):
            if type(getattr(self, name)) is not int:
                raise ContractViolation(f"{name} must be an integer")
        N, S, r = self.total_dim, self.total_index, self.fibre_dim
        if not 0 <= S <= N:
            raise ContractViolation(f"need 0 <= total_index <= total_dim, got S={S}, N={N}")
        if not 1 <= r < self.real_total_dim:
            raise ContractViolation(f"need 1 <= fibre_dim < {self.real_total_dim}, got r={r}")
        if self.curvature_sign not in (-1, 1):
            raise ContractViolation("curvature_sign must be -1 or +1")
        if self.curvature_sign == 1 and self.geometry is not Geometry.REAL:
            raise ContractViolation("positive curvature is only handled for real total spaces")

    @property
    def real_total_dim(self) -> int:
        return _REAL_SCALE[self.geometry] * self.total_dim

    def mirrored(self) -> "ProblemInstance":
        return ProblemInstance(self.geometry, self.total_dim, self.total_dim - self.total_index, self.fibre_dim,
                               self.fibre_negative_definite, self.base_assumption, -self.curvature_sign)


@dataclass(frozen=True)
class Witness:
    """A canonical model realising an instance."""

    description: str
    total_dim: int
    total_index: int
    fibre_dim: int
    fibration: Fibration | None = None
    mirrored: bool = False


@dataclass(frozen=True)
class ClassificationVerdict:
    status: Status
    citation: tuple
    witness: Witness | None = None
    arithmetic: tuple = ()
    note: str = ""
    instance: ProblemInstance | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.status is Status.EXISTS and self.witness is None:
            raise ContractViolation("an existence verdict needs a witness")


def admissible(n: int, r: int, s: int, r_neg: int) -> list[tuple[int, int, int]]:
    """All ``(k, q1, q2)`` with ``n = k(r+1)``, ``q1 + q2 = k`` and ``s = q1(r'+1) + q2(r-r')``."""
    if min(n, r, s, r_neg) < 0 or r_neg > r or s > n:
        raise ContractViolation(f"need nonnegative n, r, s, r' with r' <= r and s <= n; got {(n, r, s, r_neg)}")
    if n == 0 or n % (r + 1):
        return []
    k = n // (r + 1)
    return [(k, q1, k - q1) for q1 in range(k + 1) if q1 * (r_neg + 1) + (k - q1) * (r - r_neg) == s]


def _verdict(status, keys, inst, witness=None, arithmetic=(), note="", mirrored=False):
    keys = tuple(keys) + (("sign-mirror",) if mirrored else ())
    return ClassificationVerdict(status, keys, witness, tuple(arithmetic), note, inst)


def _extremal_violation(inst: ProblemInstance, s: int, n: int) -> bool:
    return inst.base_assumption is BaseAssumption.INDEX_EXTREMAL and s not in (0, n)


def classify_real(inst: ProblemInstance) -> ClassificationVerdict:
    if inst.geometry is not Geometry.REAL:
        raise ContractViolation("classify_real needs a real total space")
    original = inst
    mirrored = inst.curvature_sign > 0
    if mirrored:
        inst = inst.mirrored()
    N, S, r = inst.total_dim, inst.total_index, inst.fibre_dim
    n = N - r

    def done(status, keys, witness=None, arithmetic=(), note=""):
        return _verdict(status, keys, original, witness, arithmetic, note, mirrored)

    if r == 2:
        return done(Status.NOT_EXISTS, ("fibre-dim-two",))
    if not inst.fibre_negative_definite:
        if inst.base_assumption is BaseAssumption.NONE:
            return done(Status.OUTSIDE, ("outside-hypotheses",), note="fibres not negative definite")
        return done(Status.NOT_EXISTS, ("real-special-base",), note="every model has negative definite fibres")
    s = S - r
    if s < 0:
        return done(Status.INADMISSIBLE, ("index-arithmetic",), note="fibre index exceeds total index")
    sols = admissible(n, r, s, r)
    if not sols or _extremal_violation(inst, s, n):
        return done(Status.INADMISSIBLE, ("index-arithmetic",), arithmetic=sols)
    if r in (1, 3):
        kind = FibrationKind.REAL_TO_COMPLEX if r == 1 else FibrationKind.REAL_TO_QUATERNIONIC
        F = Fibration(kind, n // (r + 1), s // (r + 1))
        keys = ("real-small-fibres", "lorentzian-total") if S == 1 else ("real-small-fibres",)
        w = Witness(F.describe(), original.total_dim, original.total_index, r, F, mirrored)
        return done(Status.EXISTS, keys, w, sols)
    if inst.base_assumption is BaseAssumption.NONE:
        return done(Status.OUTSIDE, ("outside-hypotheses",), arithmetic=sols, note="fibre dimension >= 4")
    if (N, r) == (15, 7):
        desc = f"H^15_{S} -> H^8_{s}(-4)"
        w = Witness(desc, original.total_dim, original.total_index, r, None, mirrored)
        return done(Status.EXISTS, ("real-special-base",), w, sols, note="octonionic model, no numeric realisation")
    if (N, r) == (23, 7):
        return done(Status.NOT_EXISTS, ("no-cayley-base",), arithmetic=sols)
    return done(Status.NOT_EXISTS, ("real-special-base",), arithmetic=sols)


def classify_complex(inst: ProblemInstance) -> ClassificationVerdict:
    if inst.geometry is not Geometry.COMPLEX:
        raise ContractViolation("classify_complex needs a complex total space")
    N, S, r = inst.total_dim, inst.total_index, inst.fibre_dim
    if r % 2:
        raise ContractViolation(f"complex fibres have even real dimension, got {r}")
    small = r <= 2 and inst.fibre_negative_definite
    if not small and inst.base_assumption is BaseAssumption.NONE:
        return _verdict(Status.OUTSIDE, ("outside-hypotheses",), inst)
    if not inst.fibre_negative_definite:
        return _verdict(Status.NOT_EXISTS, ("complex-total",), inst, note="the model has negative definite fibres")
    # compose with the circle fibration of the real quadric: fibres grow by one timelike direction
    n, s = 2 * N - r, 2 * S - r
    if s < 0:
        return _verdict(Status.INADMISSIBLE, ("index-arithmetic",), inst, note="fibre index exceeds total index")
    sols = admissible(n, r + 1, s, r + 1)
    if not sols or _extremal_violation(inst, s, n):
        return _verdict(Status.INADMISSIBLE, ("index-arithmetic",), inst, arithmetic=sols)
    if r == 2:
        F = Fibration(FibrationKind.COMPLEX_TO_QUATERNIONIC, (N - 1) // 2, (S - 1) // 2)
        w = Witness(F.describe(), N, S, r, F)
        return _verdict(Status.EXISTS, ("complex-total",), inst, w, sols)
    return _verdict(Status.NOT_EXISTS, ("complex-large-fibres", "complex-total"), inst, arithmetic=sols)


def classify_quaternionic(inst: ProblemInstance) -> ClassificationVerdict:
    if inst.geometry is not Geometry.QUATERNIONIC:
        raise ContractViolation("classify_quaternionic needs a quaternionic total space")
    if inst.base_assumption is BaseAssumption.NONE:
        return _verdict(Status.OUTSIDE, ("outside-hypotheses",), inst)
    return _verdict(Status.NOT_EXISTS, ("quaternionic-total",), inst)


def classify(inst: ProblemInstance) -> ClassificationVerdict:
    return _CLASSIFIERS[inst.geometry](inst)


_CLASSIFIERS = {
    Geometry.REAL: classify_real,
    Geometry.COMPLEX: classify_complex,
    Geometry.QUATERNIONIC: classify_quaternionic,
}

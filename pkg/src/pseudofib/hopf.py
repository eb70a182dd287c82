"""Canonical fibrations of pseudo-hyperbolic quadrics by right scalar actions.

Every model lives on the real quadric ``H^{N}_{S}(-1)`` realised inside
``C^{m+1}`` or ``H^{m+1}`` with the Hermitian form of index ``t + 1``.  Points
and tangent vectors are flat float arrays of realified coordinates; the fibre
group (``U(1)`` or ``Sp(1)``) acts by right multiplication of every
coordinate.

``COMPLEX_TO_QUATERNIONIC`` is handled entirely upstairs: a tangent vector of
``CH^{2m+1}_{2t+1}`` at ``theta(p)`` is represented by its ``theta``-horizontal
lift at ``p`` (orthogonal to ``p i``), and its vertical space is
``span{p j, p k}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import algebra
from .errors import ContractViolation, FibreMismatch
from .spaceform import RealModel, geodesic

POINT_TOL = 1e-9


class FibrationKind(str, Enum):
    REAL_TO_COMPLEX = "real-to-complex"
    REAL_TO_QUATERNIONIC = "real-to-quaternionic"
    COMPLEX_TO_QUATERNIONIC = "complex-to-quaternionic"

    @classmethod
    def parse(cls, name: str) -> "FibrationKind":
        aliases = {
            "rc": cls.REAL_TO_COMPLEX,
            "realtocomplex": cls.REAL_TO_COMPLEX,
            "rq": cls.REAL_TO_QUATERNIONIC,
            "realtoquaternionic": cls.REAL_TO_QUATERNIONIC,
            "cq": cls.COMPLEX_TO_QUATERNIONIC,
            "complextoquaternionic": cls.COMPLEX_TO_QUATERNIONIC,
        }
        key = name.strip().lower()
        try:
            return cls(key)
        except ValueError:
            pass
        try:
            return aliases[key.replace("-", "").replace("_", "")]
        except KeyError:
            raise ContractViolation(f"unknown fibration kind {name!r}") from None


@dataclass(frozen=True)
class BasePoint:
    """A fibre, stored as its representative in canonical gauge."""

    rep: np.ndarray
    kind: FibrationKind

    def __eq__(self, other):
        if not isinstance(other, BasePoint):
            return NotImplemented
        return self.kind == other.kind and np.allclose(self.rep, other.rep, rtol=0, atol=1e-9)

    __hash__ = None


@dataclass(frozen=True)
class Fibration:
    kind: FibrationKind
    m: int
    t: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", FibrationKind.parse(self.kind) if isinstance(self.kind, str) else self.kind)
        if self.m < 1 or not 0 <= self.t <= self.m:
            raise ContractViolation(f"need m >= 1 and 0 <= t <= m, got m={self.m}, t={self.t}")

    # -- bookkeeping -------------------------------------------------------
    @property
    def width(self) -> int:
        return 2 if self.kind is FibrationKind.REAL_TO_COMPLEX else 4

    @property
    def fibre_dim(self) -> int:
        return {FibrationKind.REAL_TO_COMPLEX: 1, FibrationKind.REAL_TO_QUATERNIONIC: 3,
                FibrationKind.COMPLEX_TO_QUATERNIONIC: 2}[self.kind]

    @property
    def fibre_index(self) -> int:
        return self.fibre_dim

    @property
    def base_dim(self) -> int:
        return 2 * self.m if self.kind is FibrationKind.REAL_TO_COMPLEX else 4 * self.m

    @property
    def base_index(self) -> int:
        return 2 * self.t if self.kind is FibrationKind.REAL_TO_COMPLEX else 4 * self.t

    @property
    def total_dim(self) -> int:
        """Real dimension of the total space (of ``CH`` itself for the composite kind)."""
        return self.base_dim + self.fibre_dim

    @property
    def total_index(self) -> int:
        return self.base_index + self.fibre_index

    @property
    def model(self) -> RealModel:
        """The real quadric carrying the computations (upstairs for the composite kind)."""
        w = self.width
        return RealModel(w * (self.m + 1) - 1, w * (self.t + 1) - 1, -1.0)

    @property
    def ambient_dim(self) -> int:
        return self.width * (self.m + 1)

    @property
    def signs(self) -> np.ndarray:
        if "signs" not in self._cache:
            self._cache["signs"] = self.model.signs
        return self._cache["signs"]

    @property
    def vertical_units(self) -> list[np.ndarray]:
        if "vertical" not in self._cache:
            u = algebra.units(self.width)
            self._cache["vertical"] = u[1:] if self.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC else u
        return self._cache["vertical"]

    @property
    def horizontal_units(self) -> list[np.ndarray]:
        """Units whose right action spans the complement of the horizontal space."""
        if "horizontal" not in self._cache:
            self._cache["horizontal"] = algebra.units(self.width)
        return self._cache["horizontal"]

    @property
    def quotient_units(self) -> list[np.ndarray]:
        """Directions removed from the tangent space by the intermediate quotient."""
        return algebra.units(4)[:1] if self.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC else []

    def describe(self) -> str:
        m, t = self.m, self.t
        if self.kind is FibrationKind.REAL_TO_COMPLEX:
            return f"H^{2 * m + 1}_{2 * t + 1} -> CH^{m}_{t}"
        if self.kind is FibrationKind.REAL_TO_QUATERNIONIC:
            return f"H^{4 * m + 3}_{4 * t + 3} -> HH^{m}_{t}"
        return f"CH^{2 * m + 1}_{2 * t + 1} -> HH^{m}_{t}"

    # -- coordinates -------------------------------------------------------
    def g(self, u, v) -> float:
        return float(np.dot(self.signs * u, v))

    def embed(self, coords) -> np.ndarray:
        """Realify complex (or quaternion ``(n, 4)``) coordinates to a flat array."""
        arr = np.asarray(coords)
        n = self.m + 1
        if self.width == 2:
            z = np.asarray(coords, dtype=complex)
            if z.shape != (n,):
                raise ContractViolation(f"expected {n} complex coordinates")
            return np.stack([z.real, z.imag], axis=-1).reshape(-1)
        if np.iscomplexobj(arr):
            if arr.shape != (n,):
                raise ContractViolation(f"expected {n} coordinates")
            out = np.zeros((n, 4))
            out[:, 0] = arr.real
            out[:, 1] = arr.imag
            return out.reshape(-1)
        arr = np.asarray(arr, dtype=float)
        if arr.shape == (n,):
            out = np.zeros((n, 4))
            out[:, 0] = arr
            return out.reshape(-1)
        if arr.shape != (n, 4):
            raise ContractViolation(f"expected shape {(n, 4)}")
        return arr.reshape(-1).copy()

    def coords(self, x) -> np.ndarray:
        """Inverse of :meth:`embed` (complex array or ``(n, 4)`` quaternion array)."""
        w = np.asarray(x, dtype=float).reshape(self.m + 1, self.width)
        if self.width == 2:
            return w[:, 0] + 1j * w[:, 1]
        return w.copy()

    def scalar(self, lam) -> np.ndarray:
        if isinstance(lam, np.ndarray) and lam.shape == (self.width,) and lam.dtype == float:
            return lam
        return algebra.as_scalar(lam, self.width)

    def right_mul(self, x, lam) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(self.m + 1, self.width)
        return (x @ algebra.right_matrix(self.scalar(lam)).T).reshape(-1)

    def left_coefficient(self, p, v) -> np.ndarray:
        """The scalar ``u`` with ``v = p u`` when ``v`` lies in ``p`` times the scalars.

        Uses ``sum eps_k conj(p_k) p_k = (p, p) = -1``.
        """
        P = np.asarray(p, dtype=float).reshape(self.m + 1, self.width)
        V = np.asarray(v, dtype=float).reshape(self.m + 1, self.width)
        eps = self.signs[:: self.width]
        return -np.sum(eps[:, None] * algebra.mul(algebra.conj(P), V), axis=0)

    # -- points ------------------------------------------------------------
    def check_point(self, p, tol: float = POINT_TOL) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.ambient_dim,):
            raise ContractViolation(f"expected {self.ambient_dim} real coordinates, got shape {p.shape}")
        if abs(self.g(p, p) + 1.0) > tol * (1.0 + np.dot(p, p)):
            raise ContractViolation("point is not on the total quadric (p, p) = -1")
        return p

    def random_point(self, rng: np.random.Generator, spread: float = 0.5) -> np.ndarray:
        return self.model.random_point(rng, spread)

    def geodesic(self, p, v, t: float):
        return geodesic(p, v, t, -1.0, self.signs)

    # -- splitting -----------------------------------------------------------
    def _sweep(self, p, v, units) -> np.ndarray:
        # the vectors p a for unit imaginary a are g-orthonormal with g = -1
        out = np.array(v, dtype=float)
        for a in units:
            pa = self.right_mul(p, a)
            out += self.g(v, pa) * pa
        return out

    def tangent_project(self, p, w) -> np.ndarray:
        """Project an ambient vector onto the (lifted) tangent space at ``p``."""
        w = np.asarray(w, dtype=float)
        out = w + self.g(w, p) * p
        if self.kind is not FibrationKind.COMPLEX_TO_QUATERNIONIC:
            return out
        return self._sweep(p, out, self.quotient_units)

    def vertical_basis(self, p) -> list[np.ndarray]:
        p = self.check_point(p)
        return [self.right_mul(p, a) for a in self.vertical_units]

    def horizontal_project(self, p, v) -> np.ndarray:
        return self._sweep(p, v, self.horizontal_units)

    def vertical_project(self, p, v) -> np.ndarray:
        out = np.zeros(self.ambient_dim)
        for a in self.vertical_units:
            pa = self.right_mul(p, a)
            out -= self.g(v, pa) * pa
        return out

    def horizontal_space(self, p) -> np.ndarray:
        """Euclidean-orthonormal basis (columns) of the horizontal space at ``p``."""
        rows = [self.signs * p] + [self.signs * self.right_mul(p, a) for a in self.horizontal_units]
        _, s, vt = np.linalg.svd(np.array(rows))
        return vt[len(rows):].T

    def is_horizontal(self, p, v, tol: float = 1e-9) -> bool:
        scale = 1.0 + np.linalg.norm(v) * (1.0 + np.linalg.norm(p))
        return np.linalg.norm(v - self.horizontal_project(p, self.tangent_project(p, v))) < tol * scale

    # -- fibre action ----------------------------------------------------------
    def fibre_action(self, p, lam) -> np.ndarray:
        lam = self.scalar(lam)
        if abs(np.linalg.norm(lam) - 1.0) > 1e-12:
            raise ContractViolation(f"fibre element must be a unit scalar, |lam| = {np.linalg.norm(lam)}")
        return self.right_mul(p, lam)

    def fibre_element(self, p, q, tol: float = 1e-8) -> np.ndarray:
        """The unit scalar ``lam`` with ``q = p lam``; raises if ``q`` is off the fibre."""
        lam = self.left_coefficient(p, q)
        scale = 1.0 + np.linalg.norm(q)
        if abs(np.linalg.norm(lam) - 1.0) > tol * scale or np.linalg.norm(self.right_mul(p, lam) - q) > tol * scale:
            raise FibreMismatch("q is not in the fibre through p")
        return lam

    def basic_transport(self, p, X, q) -> np.ndarray:
        """Right-translate the horizontal vector ``X`` at ``p`` to ``q = p lam``."""
        return self.right_mul(X, self.fibre_element(p, q))

    def gauge(self, p, width: int | None = None) -> np.ndarray:
        """Scalar ``mu`` putting ``p mu`` in canonical gauge.

        The largest-modulus entry becomes a positive real.  For ``width=2`` on a
        quaternionic point only the ``U(1)`` action by ``exp(i phi)`` is used: with
        ``q = w1 + w2 j`` one has ``q e^{i phi} = w1 e^{i phi} + w2 e^{-i phi} j``.
        """
        P = np.asarray(p, dtype=float).reshape(self.m + 1, self.width)
        if width is None or width == self.width:
            mods = np.linalg.norm(P, axis=1)
            k = _first_max(mods)
            return algebra.conj(P[k]) / mods[k]
        if width != 2 or self.width != 4:
            raise ContractViolation("partial gauge only for U(1) inside Sp(1)")
        w1 = P[:, 0] + 1j * P[:, 1]
        w2 = P[:, 2] + 1j * P[:, 3]
        mods = np.concatenate([np.abs(w1), np.abs(w2)])
        k = _first_max(mods)
        n = self.m + 1
        z = w1[k] if k < n else np.conj(w2[k - n])
        phase = np.conj(z) / abs(z)
        return np.array([phase.real, phase.imag, 0.0, 0.0])

    def project(self, p) -> BasePoint:
        p = self.check_point(p)
        return BasePoint(self.right_mul(p, self.gauge(p)), self.kind)

    # -- base quantities -----------------------------------------------------
    def _require_horizontal(self, p, *vectors):
        for v in vectors:
            if not self.is_horizontal(p, v):
                raise ContractViolation("vector is not horizontal at p")

    def base_inner(self, p, X, Y) -> float:
        self._require_horizontal(p, X, Y)
        return self.g(X, Y)

    def base_structures(self, p, X) -> list[np.ndarray]:
        """Images of ``X`` under the induced complex / quaternionic structures of the base."""
        self._require_horizontal(p, X)
        return [self.horizontal_project(p, self.right_mul(X, a)) for a in algebra.units(self.width)]

    def total_structure(self, p, X) -> np.ndarray:
        """Complex structure of ``CH`` on a lifted vector (composite kind only)."""
        if self.kind is not FibrationKind.COMPLEX_TO_QUATERNIONIC:
            raise ContractViolation("only the composite kind has a complex total space")
        return self.tangent_project(p, self.right_mul(X, algebra.I))


def _first_max(values: np.ndarray, rtol: float = 1e-12) -> int:
    top = values.max()
    return int(np.flatnonzero(values >= top * (1.0 - rtol))[0])

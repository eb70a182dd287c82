"""Linear algebra for diagonal indefinite forms over R, C and H.

Vectors are held in the natural representation of their ring:

* real: float array of shape ``(n,)``
* complex: complex array of shape ``(n,)``
* quaternion: float array of shape ``(n, 4)``

The form is ``<x, y> = -sum_{i<neg} x_i conj(y_i) + sum_{i>=neg} x_i conj(y_i)``,
conjugate-linear in the second slot; quaternion scalars act on the right, so
``<x a, y b> = <x, y>`` only up to the usual sandwich ``a ... conj(b)`` and
``<x lam, y lam> = |lam|^2 <x, y>``.  The real metric ``g = Re <.,.>`` is the
plain diagonal form on the realified coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import null_space

from . import algebra
from .errors import ContractViolation, DegenerateSubspace


class Ring(str, Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNION = "quaternion"

    @property
    def width(self) -> int:
        return {"real": 1, "complex": 2, "quaternion": 4}[self.value]


class CausalType(str, Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    NULL = "null"


@dataclass(frozen=True)
class Signature:
    neg: int
    pos: int

    def __post_init__(self):
        if self.neg < 0 or self.pos < 0:
            raise ContractViolation(f"negative signature entry: {self}")

    @property
    def dim(self) -> int:
        return self.neg + self.pos

    def signs(self) -> np.ndarray:
        return np.concatenate([-np.ones(self.neg), np.ones(self.pos)])


@dataclass(frozen=True)
class IndefiniteForm:
    ring: Ring
    signature: Signature

    def __post_init__(self):
        object.__setattr__(self, "ring", Ring(self.ring))

    @property
    def dim(self) -> int:
        return self.signature.dim

    def signs(self) -> np.ndarray:
        return self.signature.signs()

    def real_signs(self) -> np.ndarray:
        """Diagonal of the real metric on realified coordinates."""
        return np.repeat(self.signs(), self.ring.width)

    def real_form(self) -> "IndefiniteForm":
        w = self.ring.width
        return IndefiniteForm(Ring.REAL, Signature(w * self.signature.neg, w * self.signature.pos))

    def coerce(self, x) -> np.ndarray:
        """Return ``x`` as an array in this ring's representation, checking its shape."""
        if self.ring is Ring.QUATERNION:
            arr = np.asarray(x, dtype=float)
            if arr.shape != (self.dim, 4):
                raise ContractViolation(f"expected shape {(self.dim, 4)}, got {arr.shape}")
        elif self.ring is Ring.COMPLEX:
            arr = np.asarray(x, dtype=complex)
            if arr.shape != (self.dim,):
                raise ContractViolation(f"expected length {self.dim}, got shape {arr.shape}")
        else:
            arr = np.asarray(x)
            if np.iscomplexobj(arr):
                raise ContractViolation("complex entries in a real vector")
            arr = arr.astype(float)
            if arr.shape != (self.dim,):
                raise ContractViolation(f"expected length {self.dim}, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ContractViolation("non-finite coordinates")
        return arr

    def realify(self, x) -> np.ndarray:
        x = self.coerce(x)
        if self.ring is Ring.COMPLEX:
            return np.stack([x.real, x.imag], axis=-1).reshape(-1)
        return np.asarray(x, dtype=float).reshape(-1)

    def derealify(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=float).reshape(self.dim, self.ring.width)
        if self.ring is Ring.COMPLEX:
            return w[:, 0] + 1j * w[:, 1]
        if self.ring is Ring.REAL:
            return w[:, 0].copy()
        return w.copy()


def inner(x, y, form: IndefiniteForm):
    """The form ``<x, y>``; a float, complex, or length-4 quaternion array."""
    x = form.coerce(x)
    y = form.coerce(y)
    signs = form.signs()
    if form.ring is Ring.QUATERNION:
        terms = algebra.qmul(x, algebra.conj(y))
        return np.sum(signs[:, None] * terms, axis=0)
    if form.ring is Ring.COMPLEX:
        return complex(np.sum(signs * x * np.conj(y)))
    return float(np.sum(signs * x * y))


def real_metric(x, y, form: IndefiniteForm) -> float:
    """``g(x, y) = Re <x, y>``."""
    s = form.real_signs()
    return float(np.dot(s * form.realify(x), form.realify(y)))


def causal_type(v, form: IndefiniteForm, tol: float = 1e-9) -> CausalType:
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    q = real_metric(v, v, form)
    if q < -tol:
        return CausalType.TIMELIKE
    if q > tol:
        return CausalType.SPACELIKE
    return CausalType.NULL


class Frame(NamedTuple):
    vectors: list
    signs: tuple


def orthonormalize_real(vectors: Sequence[np.ndarray], signs: np.ndarray, tol: float = 1e-9) -> Frame:
    """Pivoted Gram-Schmidt for the diagonal real form with the given ``signs``.

    At each step the remaining candidate whose residual has the largest
    ``|g(res, res)|`` is normalised next.  Candidates whose residual vanishes in
    the Euclidean sense are dependent and dropped; if every remaining residual
    is non-zero but null, the span is degenerate.
    """
    signs = np.asarray(signs, dtype=float)
    residuals = [np.array(v, dtype=float) for v in vectors]
    scale = max((np.linalg.norm(v) for v in residuals), default=1.0) or 1.0
    out: list[np.ndarray] = []
    eps: list[int] = []
    while residuals:
        residuals = [r for r in residuals if np.linalg.norm(r) > tol * scale]
        if not residuals:
            break
        q = np.array([np.dot(signs * r, r) for r in residuals])
        best = int(np.argmax(np.abs(q)))
        if abs(q[best]) < tol * scale**2:
            raise DegenerateSubspace(
                f"{len(residuals)} residual(s) left, all null (max |g| = {abs(q[best]):.3e})"
            )
        u = residuals.pop(best) / np.sqrt(abs(q[best]))
        e = 1 if q[best] > 0 else -1
        out.append(u)
        eps.append(e)
        # g(r, u) / g(u, u) with g(u, u) = e
        residuals = [r - e * np.dot(signs * r, u) * u for r in residuals]
    return Frame(out, tuple(eps))


def orthonormalize(vectors, form: IndefiniteForm, tol: float = 1e-9) -> Frame:
    """Orthonormalise ``vectors`` for the real metric of ``form``.

    Returns the frame in the ring's own representation together with the signs
    ``eps_i = g(u_i, u_i)``.
    """
    real = [form.realify(v) for v in vectors]
    frame = orthonormalize_real(real, form.real_signs(), tol)
    return Frame([form.derealify(u) for u in frame.vectors], frame.signs)


def kernel_basis(matrix, tol: float = 1e-9) -> list[np.ndarray]:
    """Euclidean-orthonormal basis of the numerical kernel.

    Singular values below ``tol * sigma_max`` count as zero.
    """
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    if not np.all(np.isfinite(a)):
        raise ContractViolation("non-finite matrix entries")
    if a.size == 0:
        return [np.eye(a.shape[1])[i] for i in range(a.shape[1])]
    ns = null_space(a, rcond=tol)
    return [ns[:, i] for i in range(ns.shape[1])]

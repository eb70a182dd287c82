"""Quadric models of real pseudo-hyperbolic spaces and closed-form curvatures.

``H^m_s(c)`` is the quadric ``<x, x> = 1/c`` in ``R^{m+1}`` carrying the form
of index ``s + 1`` (the first ``s + 1`` coordinates are negative).  Curvature
tensors follow the convention ``R(E, F) = [nabla_E, nabla_F] - nabla_[E, F]``
with ``R(E, F, G, H) = g(R(G, H) F, E)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import ContractViolation
from .ilin import IndefiniteForm, Ring, Signature

NULL_SPEED = 1e-10

Metric = Callable[[np.ndarray, np.ndarray], float]


class TangentVector(NamedTuple):
    """A vector ``v`` attached to the base point ``at``."""

    at: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class RealModel:
    m: int
    s: int
    c: float = -1.0

    def __post_init__(self):
        if self.m < 1 or not 0 <= self.s <= self.m:
            raise ContractViolation(f"need m >= 1 and 0 <= s <= m, got m={self.m}, s={self.s}")
        if not self.c < 0:
            raise ContractViolation(f"curvature must be negative, got {self.c}")

    @property
    def form(self) -> IndefiniteForm:
        return IndefiniteForm(Ring.REAL, Signature(self.s + 1, self.m - self.s))

    @property
    def signs(self) -> np.ndarray:
        return self.form.signs()

    def metric(self, u, v) -> float:
        return float(np.dot(self.signs * np.asarray(u, dtype=float), np.asarray(v, dtype=float)))

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return abs(self.metric(x, x) - 1.0 / self.c) < tol * (1.0 + np.dot(x, x))

    def check_point(self, x, tol: float = 1e-9) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.m + 1,):
            raise ContractViolation(f"expected {self.m + 1} coordinates, got shape {x.shape}")
        if not self.contains(x, tol):
            raise ContractViolation("point is not on the quadric")
        return x

    def tangent_project(self, x, w) -> np.ndarray:
        """``w - c g(w, x) x``: the tangential part of an ambient vector at ``x``."""
        x = np.asarray(x, dtype=float)
        w = np.asarray(w, dtype=float)
        return w - self.c * self.metric(w, x) * x

    def is_tangent(self, x, v, tol: float = 1e-9) -> bool:
        return abs(self.metric(v, x)) < tol * (1.0 + np.linalg.norm(v) * np.linalg.norm(x))

    def geodesic(self, x, v, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Point and velocity at time ``t`` of the geodesic with ``gamma(0)=x``, ``gamma'(0)=v``."""
        return geodesic(x, v, t, self.c, self.signs)

    def random_point(self, rng: np.random.Generator, spread: float = 0.5) -> np.ndarray:
        """A point on the quadric; ``spread`` bounds how far it sits from the 'origin'."""
        neg = self.s + 1
        b = spread * rng.standard_normal(self.m - self.s)
        a = rng.standard_normal(neg)
        a *= np.sqrt(-1.0 / self.c + np.dot(b, b)) / np.linalg.norm(a)
        return np.concatenate([a, b])


def geodesic(x, v, t: float, c: float, signs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    a = float(np.dot(signs * v, v))
    if abs(a) < NULL_SPEED:
        return x + t * v, v.copy()
    # gamma'' = kappa gamma
    kappa = -c * a
    w = np.sqrt(abs(kappa))
    if kappa > 0:
        ch, sh = np.cosh(w * t), np.sinh(w * t)
        return ch * x + (sh / w) * v, (w * sh) * x + ch * v
    co, si = np.cos(w * t), np.sin(w * t)
    return co * x + (si / w) * v, (-w * si) * x + co * v


def _unwrap(vectors: Sequence) -> list[np.ndarray]:
    base = None
    out = []
    for v in vectors:
        if isinstance(v, TangentVector):
            at = np.asarray(v.at, dtype=float)
            if base is None:
                base = at
            elif at.shape != base.shape or not np.allclose(at, base, rtol=0, atol=1e-12):
                raise ContractViolation("tangent vectors live at different base points")
            out.append(np.asarray(v.v, dtype=float))
        else:
            out.append(np.asarray(v, dtype=float))
    return out


def curvature_constant(X, Y, Z, W, c: float, metric: Metric) -> float:
    """``R(X, Y, Z, W) = c (g(X, Z) g(Y, W) - g(X, W) g(Y, Z))``."""
    X, Y, Z, W = _unwrap([X, Y, Z, W])
    g = metric
    return c * (g(X, Z) * g(Y, W) - g(X, W) * g(Y, Z))


def curvature_complex_form(X, Y, complex_structure: Callable, c: float, metric: Metric) -> float:
    """Sectional numerator ``R(X, Y, X, Y)`` of a space of constant holomorphic curvature ``c``."""
    X, Y = _unwrap([X, Y])
    g = metric
    return (c / 4.0) * (g(X, X) * g(Y, Y) - g(X, Y) ** 2 + 3.0 * g(X, complex_structure(Y)) ** 2)


def curvature_quaternionic_form(X, Y, structures: Sequence[Callable], c: float, metric: Metric) -> float:
    """Sectional numerator ``R(X, Y, X, Y)`` of a space of constant quaternionic curvature ``c``."""
    X, Y = _unwrap([X, Y])
    g = metric
    extra = sum(3.0 * g(X, J(Y)) ** 2 for J in structures)
    return (c / 4.0) * (g(X, X) * g(Y, Y) - g(X, Y) ** 2 + extra)

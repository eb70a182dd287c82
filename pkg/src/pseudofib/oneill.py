"""O'Neill's tensors A and T on the canonical fibrations, computed numerically.

The Levi-Civita connection of the quadric is the tangential part of the flat
derivative (Gauss formula).  A vector field is any callable ``x -> vector``;
it is differentiated along the geodesic leaving ``p`` in direction ``X`` by a
central difference with one Richardson step.  Horizontal arguments are
extended by projecting a constant vector, vertical ones by right translation
``x -> x u`` of their fibre coefficient ``u``.  Both tensors are pointwise, so
the extension choice does not change the values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra
from .errors import ContractViolation, NullDirection
from .hopf import Fibration, FibrationKind
from .ilin import kernel_basis
from .spaceform import curvature_complex_form, curvature_constant

STEP = 1e-4
# outer step when the differentiated field is itself built from derivatives:
# its values carry ~1e-11 of noise, which a 1e-4 step would amplify to ~1e-7
NESTED_STEP = 2e-3
TOTAL_CURVATURE = -1.0
BASE_CURVATURE = -4.0

Field = Callable[[np.ndarray], np.ndarray]


def richardson_derivative(f: Callable[[float], np.ndarray], h: float = STEP) -> np.ndarray:
    """``f'(0)`` from central differences at ``h`` and ``h/2`` plus one Richardson step."""
    d1 = (np.asarray(f(h)) - np.asarray(f(-h))) / (2.0 * h)
    d2 = (np.asarray(f(h / 2)) - np.asarray(f(-h / 2))) / h
    return (4.0 * d2 - d1) / 3.0


def covariant_derivative(F: Fibration, p, X, field: Field, h: float = STEP) -> np.ndarray:
    """``nabla_X field`` at ``p`` (lifted to the intermediate quotient for the composite kind)."""
    p = np.asarray(p, dtype=float)
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        return np.zeros_like(p)
    d = richardson_derivative(lambda t: field(F.geodesic(p, X, t)[0]), h)
    return F.tangent_project(p, d)


# -- field extensions -------------------------------------------------------

def horizontal_extension(F: Fibration, Y) -> Field:
    Y = np.asarray(Y, dtype=float)
    return lambda x: F.horizontal_project(x, F.tangent_project(x, Y))


def tangent_extension(F: Fibration, Y) -> Field:
    Y = np.asarray(Y, dtype=float)
    return lambda x: F.tangent_project(x, Y)


def vertical_extension(F: Fibration, p, V) -> Field:
    """``x -> x u`` where ``V = p u``."""
    u = F.left_coefficient(p, F.vertical_project(p, V))
    u[0] = 0.0
    return lambda x: F.right_mul(x, u)


def basic_field(F: Fibration, p, X) -> Field:
    """The right-translate of ``X`` along the fibre through ``p``."""
    X = np.asarray(X, dtype=float)
    return lambda q: F.basic_transport(p, X, q)


def _is_zero(v, scale: float = 1.0) -> bool:
    return float(np.max(np.abs(v), initial=0.0)) <= 1e-14 * scale


# -- tensors -----------------------------------------------------------------

def A_tensor(F: Fibration, p, E, G, h: float = STEP) -> np.ndarray:
    """``A_E G = h nabla_{hE} vG + v nabla_{hE} hG``."""
    p = np.asarray(p, dtype=float)
    E = F.tangent_project(p, E)
    G = F.tangent_project(p, G)
    hE = F.horizontal_project(p, E)
    out = np.zeros_like(p)
    if _is_zero(hE):
        return out
    vG = F.vertical_project(p, G)
    hG = F.horizontal_project(p, G)
    if not _is_zero(vG):
        out += F.horizontal_project(p, covariant_derivative(F, p, hE, vertical_extension(F, p, vG), h))
    if not _is_zero(hG):
        out += F.vertical_project(p, covariant_derivative(F, p, hE, horizontal_extension(F, hG), h))
    return out


def T_tensor(F: Fibration, p, E, G, h: float = STEP) -> np.ndarray:
    """``T_E G = h nabla_{vE} vG + v nabla_{vE} hG``."""
    p = np.asarray(p, dtype=float)
    E = F.tangent_project(p, E)
    G = F.tangent_project(p, G)
    vE = F.vertical_project(p, E)
    out = np.zeros_like(p)
    if _is_zero(vE):
        return out
    vG = F.vertical_project(p, G)
    hG = F.horizontal_project(p, G)
    if not _is_zero(vG):
        out += F.horizontal_project(p, covariant_derivative(F, p, vE, vertical_extension(F, p, vG), h))
    if not _is_zero(hG):
        out += F.vertical_project(p, covariant_derivative(F, p, vE, horizontal_extension(F, hG), h))
    return out


@dataclass
class AStar:
    """Matrix of ``Y -> A_X Y`` from horizontal to vertical space at ``p``.

    ``matrix[a, j]`` is the coefficient of ``vertical[a]`` in ``A_X horizontal[:, j]``;
    ``horizontal`` has Euclidean-orthonormal columns and ``vertical`` is the
    g-orthonormal (timelike) fibre basis.
    """

    X: np.ndarray
    matrix: np.ndarray
    horizontal: np.ndarray
    vertical: list

    @property
    def rank(self) -> int:
        return self.matrix.shape[0] - len(kernel_basis(self.matrix.T, 1e-7))

    def kernel(self, tol: float = 1e-7) -> list[np.ndarray]:
        return [self.horizontal @ k for k in kernel_basis(self.matrix, tol)]

    def apply(self, coeffs) -> np.ndarray:
        c = self.matrix @ np.asarray(coeffs, dtype=float)
        return sum((ci * v for ci, v in zip(c, self.vertical)), np.zeros_like(self.X))


def A_star(F: Fibration, p, X, tol: float = 1e-9, h: float = STEP) -> AStar:
    p = np.asarray(p, dtype=float)
    X = np.asarray(X, dtype=float)
    if abs(F.g(X, X)) <= tol * max(1.0, float(np.dot(X, X))):
        raise NullDirection("A*_X needs g(X, X) != 0")
    H = F.horizontal_space(p)
    V = F.vertical_basis(p)
    M = np.zeros((len(V), H.shape[1]))
    for j in range(H.shape[1]):
        w = A_tensor(F, p, X, H[:, j], h)
        # vertical basis has g(V_a, V_a) = -1
        M[:, j] = [-F.g(w, v) for v in V]
    return AStar(X, M, H, V)


def total_curvature(F: Fibration, X, Y, Z, W) -> float:
    """Curvature ``R(X, Y, Z, W)`` of the total space; needs ``Z = X`` for the composite kind."""
    if F.kind is not FibrationKind.COMPLEX_TO_QUATERNIONIC:
        return curvature_constant(X, Y, Z, W, TOTAL_CURVATURE, F.g)
    if not np.array_equal(np.asarray(X), np.asarray(Z)):
        raise ContractViolation("only R(X, Y, X, W) is available on the complex total space")
    Y = np.asarray(Y, dtype=float)
    W = np.asarray(W, dtype=float)

    def sec(U):
        return curvature_complex_form(X, U, lambda V: F.right_mul(V, [0, 1, 0, 0]), BASE_CURVATURE, F.g)

    # R(X, ., X, .) is symmetric, so polarise the sectional numerator
    return 0.5 * (sec(Y + W) - sec(Y) - sec(W))


def base_curvature(F: Fibration, p, X, Y, Z, h: float = STEP) -> float:
    """``R'(pi_* X, pi_* Y, pi_* X, pi_* Z) = R(X, Y, X, Z) + 3 g(A_X Y, A_X Z)``."""
    AXY = A_tensor(F, p, X, Y, h)
    AXZ = AXY if np.array_equal(np.asarray(Y), np.asarray(Z)) else A_tensor(F, p, X, Z, h)
    return total_curvature(F, X, Y, X, Z) + 3.0 * F.g(AXY, AXZ)


def mixed_curvature_residual(F: Fibration, p, X, Y, U, V, h: float = STEP, outer: float = NESTED_STEP) -> float:
    """``|R(X, U, Y, V) - g(nabla_U A_X Y, V) - g(A_Y U, A_X V)|`` with basic ``X, Y``."""
    if F.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC:
        raise ContractViolation("needs a total space of constant curvature")
    p = np.asarray(p, dtype=float)
    Xb = basic_field(F, p, X)
    Yb = basic_field(F, p, Y)
    AXY = lambda q: A_tensor(F, q, Xb(q), Yb(q), h)  # noqa: E731
    lhs = curvature_constant(X, U, Y, V, TOTAL_CURVATURE, F.g)
    grad = covariant_derivative(F, p, U, AXY, outer)
    rhs = F.g(grad, V) + F.g(A_tensor(F, p, Y, U, h), A_tensor(F, p, X, V, h))
    return abs(lhs - rhs)


def fibre_connection(F: Fibration, p, vi, field_j: Field, h: float = NESTED_STEP) -> np.ndarray:
    """``hat-nabla_{v_i} v_j`` at ``p``: vertical part of the derivative along the fibre.

    Frame fields are themselves A-tensor values, hence the nested step.
    """
    return F.vertical_project(p, covariant_derivative(F, p, vi, field_j, h))


def quotient_lift(F: Fibration, p, Y) -> Field:
    """A ``U(1)``-equivariant horizontal field through ``Y`` at ``p``.

    ``Y`` is carried to the ``U(1)`` gauge representative of ``p``; at any ``x``
    the point is moved into gauge ``s = x mu``, the carried vector is projected
    there and brought back by ``conj(mu)``.  The result is the horizontal lift
    of a genuine vector field on the intermediate complex quotient.
    """
    mu_p = F.gauge(p, width=2)
    Ys = F.right_mul(np.asarray(Y, dtype=float), mu_p)

    def lift(x):
        mu = F.gauge(x, width=2)
        s = F.right_mul(x, mu)
        return F.right_mul(F.horizontal_project(s, F.tangent_project(s, Ys)), algebra.conj(mu))

    return lift


def composite_pushforward_residual(m: int, t: int, p, X, Y, h: float = STEP) -> float:
    """Compare two computations of the complex-to-quaternionic A-tensor.

    Route one takes the A-tensor of the quaternionic fibration of the real
    quadric and drops its ``p i`` component.  Route two differentiates a
    ``U(1)``-invariant lift of ``Y`` on the intermediate complex quotient.
    Returns the max-norm of the difference.
    """
    eta = Fibration(FibrationKind.REAL_TO_QUATERNIONIC, m, t)
    comp = Fibration(FibrationKind.COMPLEX_TO_QUATERNIONIC, m, t)
    p = eta.check_point(p)
    X = comp.horizontal_project(p, comp.tangent_project(p, X))
    Y = comp.horizontal_project(p, comp.tangent_project(p, Y))
    route_one = comp.vertical_project(p, A_tensor(eta, p, X, Y, h))
    route_two = comp.vertical_project(p, covariant_derivative(comp, p, X, quotient_lift(comp, p, Y), h))
    return float(np.max(np.abs(route_one - route_two)))

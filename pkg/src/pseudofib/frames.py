"""Global fibre frames and adapted horizontal bases built from the A-tensor.

A fibre frame is ``v_i = A_X Y_i`` where ``X`` and the ``Y_i`` are basic along
the fibre through ``p``.  Starting from ``X`` the horizontal basis is grown one
block ``{L, A_L v_1, ..., A_L v_r}`` at a time, each new ``L`` taken in the joint
kernel of the previous ``A*_L`` maps intersected with the orthocomplement of
everything built so far.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationContradiction, ContractViolation, DegenerateKernel, NullDirection
from .hopf import Fibration, FibrationKind
from .ilin import kernel_basis
from .oneill import STEP, A_star, A_tensor, fibre_connection

CURVATURE = -1.0
KERNEL_TOL = 1e-7


def _unit_check(F: Fibration, X, tol: float) -> float:
    gXX = F.g(X, X)
    if abs(gXX) <= tol * max(1.0, float(np.dot(X, X))):
        raise NullDirection("reference horizontal vector is null")
    return gXX


@dataclass
class FibreFrame:
    """``v_i = A_X Y_i`` along the fibre through ``p``; ``seeds`` are the ``Y_i`` at ``p``."""

    fibration: Fibration
    p: np.ndarray
    X: np.ndarray
    seeds: list
    signs: tuple
    h: float = STEP

    @property
    def rank(self) -> int:
        return len(self.seeds)

    def value(self, j: int, q) -> np.ndarray:
        F = self.fibration
        lam = F.fibre_element(self.p, q)
        return A_tensor(F, q, F.right_mul(self.X, lam), F.right_mul(self.seeds[j], lam), self.h)

    def field(self, j: int):
        return lambda q: self.value(j, q)

    def at(self, q=None) -> list[np.ndarray]:
        q = self.p if q is None else q
        return [self.value(j, q) for j in range(self.rank)]

    def gram(self, q=None) -> np.ndarray:
        vs = self.at(q)
        g = self.fibration.g
        return np.array([[g(a, b) for b in vs] for a in vs])


def build_fibre_frame(F: Fibration, p, X, gauge: bool = True, tol: float = 1e-9, h: float = STEP) -> FibreFrame:
    """Fibre frame seeded by ``Y_i(p) = A_X v_ip / (c g(X, X))``.

    With this scaling ``v_i(p) = -v_ip``.  For three-dimensional fibres and
    ``gauge=True`` the third seed is replaced so that ``v_3 = hat-nabla_{v_1} v_2``.
    """
    if F.kind is FibrationKind.COMPLEX_TO_QUATERNIONIC:
        raise ContractViolation("fibre frames need a total space of constant curvature")
    p = F.check_point(p)
    X = np.asarray(X, dtype=float)
    if not F.is_horizontal(p, X):
        raise ContractViolation("X must be horizontal at p")
    gXX = _unit_check(F, X, tol)
    scale = 1.0 / (CURVATURE * gXX)
    seeds = [scale * A_tensor(F, p, X, v, h) for v in F.vertical_basis(p)]
    frame = FibreFrame(F, p, X, seeds, (), h)
    if gauge and F.fibre_dim == 3:
        v1, _, _ = frame.at()
        w = fibre_connection(F, p, v1, frame.field(1))
        seeds[2] = scale * A_tensor(F, p, X, -w, h)
    vs = frame.at()
    frame.signs = tuple(int(np.sign(F.g(v, v))) for v in vs)
    return frame


def structure_constants(frame: FibreFrame, q=None) -> np.ndarray:
    """``C[i, j, l] = g(hat-nabla_{v_i} v_j, v_l)`` at ``q``."""
    F = frame.fibration
    q = frame.p if q is None else np.asarray(q, dtype=float)
    vs = frame.at(q)
    r = frame.rank
    C = np.zeros((r, r, r))
    for i in range(r):
        for j in range(r):
            w = fibre_connection(F, q, vs[i], frame.field(j))
            C[i, j] = [F.g(w, v) for v in vs]
    return C


@dataclass
class HorizontalBasis:
    fibration: Fibration
    frame: FibreFrame
    L: list
    L_signs: tuple
    blocks: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.L)

    def vectors(self) -> list[np.ndarray]:
        out = []
        for L, block in zip(self.L, self.blocks):
            out.append(L)
            out.extend(block)
        return out

    def gram(self) -> np.ndarray:
        vs = self.vectors()
        g = self.fibration.g
        return np.array([[g(a, b) for b in vs] for a in vs])

    def transported(self, q) -> list[np.ndarray]:
        """Right-translates of the basis vectors at ``p`` to ``q``."""
        F = self.fibration
        lam = F.fibre_element(self.frame.p, q)
        return [F.right_mul(v, lam) for v in self.vectors()]

    def recomputed(self, q) -> list[np.ndarray]:
        """The basis rebuilt at ``q`` from basic ``L`` and the frame fields there."""
        F = self.fibration
        lam = F.fibre_element(self.frame.p, q)
        vs = self.frame.at(q)
        out = []
        for L in self.L:
            Lq = F.right_mul(L, lam)
            out.append(Lq)
            out.extend(A_tensor(F, q, Lq, v, self.frame.h) for v in vs)
        return out


def build_horizontal_basis(F: Fibration, p, X, frame: FibreFrame | None = None,
                           tol: float = 1e-9, kernel_tol: float = KERNEL_TOL) -> HorizontalBasis:
    """Grow ``{L_a} + {A_{L_a} v_j}`` from ``L_0 = X`` until it spans the horizontal space.

    Each new ``L`` is the kernel vector maximising ``|g|``: the eigenvector of the
    kernel's Gram matrix with the largest ``|eigenvalue|``.
    """
    p = F.check_point(p)
    X = np.asarray(X, dtype=float)
    if abs(abs(F.g(X, X)) - 1.0) > 1e-9:
        raise ContractViolation("X must be a unit vector, g(X, X) = +-1")
    if frame is None:
        frame = build_fibre_frame(F, p, X, tol=tol)
    vs = frame.at()
    H = F.horizontal_space(p)
    n = H.shape[1]
    signs = F.signs
    Ls: list[np.ndarray] = [X]
    blocks: list[list[np.ndarray]] = []
    stars: list[np.ndarray] = []
    span: list[np.ndarray] = []
    while True:
        L = Ls[-1]
        blocks.append([A_tensor(F, p, L, v, frame.h) for v in vs])
        stars.append(A_star(F, p, L, tol, frame.h).matrix)
        span.extend([L, *blocks[-1]])
        if len(span) >= n:
            break
        rows = np.vstack(stars + [np.array([(signs * s) @ H for s in span])])
        K = kernel_basis(rows, kernel_tol)
        if not K:
            raise RuntimeError("joint kernel is empty before the horizontal space is exhausted")
        W = H @ np.array(K).T
        G = W.T @ (signs[:, None] * W)
        evals, evecs = np.linalg.eigh(G)
        best = int(np.argmax(np.abs(evals)))
        if abs(evals[best]) < tol:
            raise DegenerateKernel(f"joint kernel of dimension {len(K)} is null (max |g| = {abs(evals[best]):.3e})")
        Ls.append(W @ evecs[:, best] / np.sqrt(abs(evals[best])))
    if len(span) != n:
        raise RuntimeError(f"built {len(span)} vectors for a horizontal space of dimension {n}")
    L_signs = tuple(int(np.sign(F.g(L, L))) for L in Ls)
    return HorizontalBasis(F, frame, Ls, L_signs, blocks)


def index_decomposition(B: HorizontalBasis, F: Fibration | None = None) -> tuple[int, int, int]:
    """``(k, q1, q2)``: number of blocks and of timelike / spacelike ``L``.

    Raises if ``n = k(r + 1)`` or ``s = q1(r' + 1) + q2(r - r')`` fails for the
    fibration's declared base dimension and index.
    """
    F = B.fibration if F is None else F
    k = B.k
    q1 = sum(1 for e in B.L_signs if e < 0)
    q2 = k - q1
    r = F.fibre_dim
    r_neg = sum(1 for e in B.frame.signs if e < 0)
    if F.base_dim != k * (r + 1):
        raise ClassificationContradiction(f"n = {F.base_dim} but k(r + 1) = {k * (r + 1)}")
    s_pred = q1 * (r_neg + 1) + q2 * (r - r_neg)
    timelike = sum(1 for v in B.vectors() if F.g(v, v) < 0)
    if F.base_index != s_pred or timelike != s_pred:
        raise ClassificationContradiction(
            f"base index {F.base_index}, counted {timelike} timelike, formula gives {s_pred}")
    return k, q1, q2

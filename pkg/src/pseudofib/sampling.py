"""Seeded sampling of points, tangent vectors and fibre elements.

All randomness comes from NumPy's Philox-4x64 counter-based generator keyed by
the user seed, so a stream is fixed by ``(seed, draw order)``.
"""
from __future__ import annotations

import numpy as np
from scipy.stats import qmc

from . import algebra
from .hopf import Fibration
from .ilin import orthonormalize_real

GENERATOR = "numpy.random.Philox (4x64, 10 rounds), key = seed"
MIN_CAUSAL = 0.2
DETERMINISTIC_FIBRE_POINTS = 16


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def unit_horizontal(F: Fibration, p, rng: np.random.Generator, max_tries: int = 1000) -> np.ndarray:
    """A random horizontal vector with ``g(X, X) = +-1``, kept away from the light cone.

    Coefficients are drawn in a g-orthonormal basis of the horizontal space and
    rejected when ``|g(X, X)| < MIN_CAUSAL |c|^2``.
    """
    frame = orthonormalize_real(list(F.horizontal_space(p).T), F.signs)
    E = np.array(frame.vectors).T
    eps = np.array(frame.signs, dtype=float)
    for _ in range(max_tries):
        c = rng.standard_normal(E.shape[1])
        q = float(np.dot(eps * c, c))
        if abs(q) >= MIN_CAUSAL * float(np.dot(c, c)):
            return E @ c / np.sqrt(abs(q))
    raise RuntimeError("could not draw a non-null horizontal vector")


def vertical(F: Fibration, p, rng: np.random.Generator) -> np.ndarray:
    return sum(c * v for c, v in zip(rng.standard_normal(F.fibre_dim), F.vertical_basis(p)))


def fibre_element(F: Fibration, rng: np.random.Generator, circle: bool = False) -> np.ndarray:
    """A random unit scalar; ``circle=True`` restricts to ``U(1)`` inside the quaternions."""
    if circle or F.width == 2:
        phi = rng.uniform(0.0, 2.0 * np.pi)
        lam = np.zeros(F.width)
        lam[:2] = np.cos(phi), np.sin(phi)
        return lam
    return algebra.random_unit(rng, 4)


def deterministic_fibre_elements(width: int, count: int = DETERMINISTIC_FIBRE_POINTS) -> list[np.ndarray]:
    """Roots of unity, or unit quaternions from a Halton sequence (Shoemake's map)."""
    if width == 2:
        return [np.array([np.cos(a), np.sin(a)]) for a in 2.0 * np.pi * np.arange(count) / count]
    u = qmc.Halton(d=3, scramble=False).random(count + 1)[1:]
    u1, a, b = u[:, 0], 2.0 * np.pi * u[:, 1], 2.0 * np.pi * u[:, 2]
    s, c = np.sqrt(1.0 - u1), np.sqrt(u1)
    return list(np.stack([c * np.cos(b), s * np.sin(a), s * np.cos(a), c * np.sin(b)], axis=1))


def fibre_points(F: Fibration, p, rng: np.random.Generator, n_random: int = DETERMINISTIC_FIBRE_POINTS,
                 n_deterministic: int = DETERMINISTIC_FIBRE_POINTS) -> list[np.ndarray]:
    lams = deterministic_fibre_elements(F.width, n_deterministic)
    lams += [fibre_element(F, rng) for _ in range(n_random)]
    return [F.right_mul(p, lam) for lam in lams]

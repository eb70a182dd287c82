"""Real, complex and quaternionic scalars stored as float arrays.

A scalar of width ``w`` is an array whose last axis has length ``w``:
``w = 1`` is a real number, ``w = 2`` a complex number ``(re, im)`` and
``w = 4`` a quaternion ``(1, i, j, k)``.  Every function broadcasts over the
leading axes, so a coordinate vector of ``n`` quaternions is simply an
``(n, 4)`` array.
"""
from __future__ import annotations

import numpy as np

WIDTHS = (1, 2, 4)

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])


def _width(a: np.ndarray) -> int:
    w = a.shape[-1]
    if w not in WIDTHS:
        raise ValueError(f"scalar width must be one of {WIDTHS}, got {w}")
    return w


def qmul(a, b) -> np.ndarray:
    """Hamilton product of quaternion arrays (broadcasting)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


def cmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1 = np.moveaxis(a, -1, 0)
    b0, b1 = np.moveaxis(b, -1, 0)
    return np.stack([a0 * b0 - a1 * b1, a0 * b1 + a1 * b0], axis=-1)


def mul(a, b) -> np.ndarray:
    """Product of two scalar arrays of equal width."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    w = _width(a)
    if b.shape[-1] != w:
        raise ValueError("scalar widths differ")
    if w == 4:
        return qmul(a, b)
    if w == 2:
        return cmul(a, b)
    return a * b


def conj(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a[..., 1:] *= -1.0
    return a


def norm(a) -> np.ndarray:
    return np.linalg.norm(np.asarray(a, dtype=float), axis=-1)


def inverse(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return conj(a) / np.sum(a * a, axis=-1, keepdims=True)


def real(a) -> np.ndarray:
    return np.asarray(a, dtype=float)[..., 0]


def units(width: int) -> list[np.ndarray]:
    """The imaginary units of the given width (empty for the reals)."""
    return [np.eye(width)[k] for k in range(1, width)]


def unit(width: int) -> np.ndarray:
    return np.eye(width)[0]


def exp_imaginary(u) -> np.ndarray:
    """``exp(u)`` for a purely imaginary scalar ``u`` (first component ignored)."""
    u = np.asarray(u, dtype=float)
    v = u.copy()
    v[..., 0] = 0.0
    theta = np.linalg.norm(v, axis=-1, keepdims=True)
    safe = np.where(theta > 0, theta, 1.0)
    out = v * (np.sin(theta) / safe)
    out[..., 0] = np.cos(theta[..., 0])
    return out


def as_scalar(value, width: int) -> np.ndarray:
    """Coerce a Python/NumPy number or a length-``width`` sequence to a scalar array."""
    if np.iscomplexobj(value) or isinstance(value, (int, float, complex)):
        z = complex(value)
        out = np.zeros(width)
        out[0] = z.real
        if z.imag:
            if width < 2:
                raise ValueError("complex value for a real scalar")
            out[1] = z.imag
        return out
    arr = np.asarray(value, dtype=float)
    if arr.shape == (width,):
        return arr.copy()
    if arr.shape == (2,) and width == 4:
        return np.array([arr[0], arr[1], 0.0, 0.0])
    raise ValueError(f"cannot read {value!r} as a scalar of width {width}")


def right_matrix(lam) -> np.ndarray:
    """Real matrix ``R`` with ``q lam = R q`` for a single scalar ``lam``."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape == (4,):
        a, b, c, d = lam
        return np.array([[a, -b, -c, -d], [b, a, d, -c], [c, -d, a, b], [d, c, -b, a]])
    if lam.shape == (2,):
        a, b = lam
        return np.array([[a, -b], [b, a]])
    if lam.shape == (1,):
        return lam.reshape(1, 1).copy()
    raise ValueError(f"not a single scalar: shape {lam.shape}")


def right_mul(x, lam) -> np.ndarray:
    """Multiply each coordinate of ``x`` (shape ``(n, w)``) on the right by ``lam``."""
    x = np.asarray(x, dtype=float)
    lam = np.asarray(lam, dtype=float)
    return mul(x, np.broadcast_to(lam, x.shape))


def random_unit(rng: np.random.Generator, width: int) -> np.ndarray:
    v = rng.standard_normal(width)
    return v / np.linalg.norm(v)

"""Closed forms and brute-force references used to check the numerical code.

Nothing here calls the differentiation machinery under test.
"""
import itertools

import numpy as np


def closed_A_horizontal(F, p, X, Y):
    """A_X Y = sum_a g(Y, X a) (p a) over the vertical units a."""
    out = np.zeros_like(p)
    for a in F.vertical_units:
        out += F.g(Y, F.right_mul(X, a)) * F.right_mul(p, a)
    return out


def closed_A_vertical(F, p, X, V):
    """A_X (p u) = h(X u)."""
    u = F.left_coefficient(p, V)
    u[0] = 0.0
    return F.horizontal_project(p, F.right_mul(X, u))


def quaternion_product_table(a, b):
    """Hamilton product spelled out through the multiplication table of 1, i, j, k."""
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    out = np.zeros(4)
    for i in range(4):
        for j in range(4):
            sign, k = table[i, j]
            out[k] += sign * a[i] * b[j]
    return out


def brute_admissible(n, r, s, r_neg):
    """All (k, q1, q2) by exhaustive search over k, q1, q2 <= n."""
    out = []
    for k, q1, q2 in itertools.product(range(1, n + 1), range(n + 1), range(n + 1)):
        if q1 + q2 == k and n == k * (r + 1) and s == q1 * (r_neg + 1) + q2 * (r - r_neg):
            out.append((k, q1, q2))
    return sorted(out)


def hopf_families_sphere_slice(N, r):
    """Hopf fibrations of round spheres with totally geodesic fibres, by (N, r)."""
    return (r == 1 and N % 2 == 1 and N >= 3) or (r == 3 and N % 4 == 3 and N >= 7) or (N, r) == (15, 7)


def flat_covariant_derivative(signs, c, x, X, field, h=1e-3):
    """Covariant derivative on the quadric via a fourth-order stencil along the geodesic.

    Independent of the package: its own geodesic and its own stencil.
    """
    a = float(np.dot(signs * X, X))
    kappa = -c * a
    w = np.sqrt(abs(kappa))

    def gamma(t):
        if abs(a) < 1e-14:
            return x + t * X
        if kappa > 0:
            return np.cosh(w * t) * x + np.sinh(w * t) / w * X
        return np.cos(w * t) * x + np.sin(w * t) / w * X

    d = (-field(gamma(2 * h)) + 8 * field(gamma(h)) - 8 * field(gamma(-h)) + field(gamma(-2 * h))) / (12 * h)
    return d - c * float(np.dot(signs * d, x)) * x

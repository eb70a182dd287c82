import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudofib.errors import ContractViolation
from pseudofib.spaceform import (
    RealModel,
    TangentVector,
    curvature_complex_form,
    curvature_constant,
    curvature_quaternionic_form,
)

from oracles import flat_covariant_derivative

seeds = st.integers(min_value=0, max_value=2**32 - 1)
models = st.sampled_from([RealModel(2, 0), RealModel(3, 1), RealModel(4, 2, -0.5), RealModel(5, 5, -2.0)])


def tangent(M, x, rng):
    return M.tangent_project(x, rng.standard_normal(x.size))


@given(models, seeds, st.floats(-2, 2))
def test_geodesic_stays_on_quadric_and_keeps_speed(M, seed, t):
    rng = np.random.default_rng(seed)
    x = M.random_point(rng)
    v = tangent(M, x, rng)
    y, w = M.geodesic(x, v, t)
    assert M.contains(y, tol=1e-8)
    assert np.isclose(M.metric(w, w), M.metric(v, v), rtol=1e-7, atol=1e-7 * (1 + np.dot(v, v)))
    assert M.is_tangent(y, w, tol=1e-7)


@given(models, seeds)
def test_geodesic_solves_its_ode(M, seed):
    # gamma'' = -c g(v, v) gamma, checked by an independent second difference
    rng = np.random.default_rng(seed)
    x = M.random_point(rng)
    v = tangent(M, x, rng)
    v /= max(1.0, np.linalg.norm(v))
    h = 1e-3
    acc = (M.geodesic(x, v, h)[0] - 2 * x + M.geodesic(x, v, -h)[0]) / h**2
    assert np.allclose(acc, -M.c * M.metric(v, v) * x, atol=1e-5 * (1 + np.abs(x).max()))


def test_null_geodesic_is_a_line():
    M = RealModel(2, 1)
    x = np.array([1.0, 0.0, 0.0])
    n = np.array([0.0, 1.0, 1.0])
    assert abs(M.metric(n, n)) < 1e-15 and M.is_tangent(x, n)
    y, w = M.geodesic(x, n, 0.7)
    assert np.allclose(y, x + 0.7 * n)
    assert np.allclose(w, n)
    assert M.contains(y)


def test_timelike_geodesic_on_hyperbolic_plane():
    M = RealModel(2, 0)
    x = np.array([1.0, 0.0, 0.0])
    v = np.array([0.0, 1.0, 0.0])
    y, _ = M.geodesic(x, v, 1.0)
    assert np.allclose(y, [np.cosh(1.0), np.sinh(1.0), 0.0])


def test_model_validation():
    with pytest.raises(ContractViolation):
        RealModel(0, 0)
    with pytest.raises(ContractViolation):
        RealModel(2, 3)
    with pytest.raises(ContractViolation):
        RealModel(2, 1, 1.0)
    with pytest.raises(ContractViolation):
        RealModel(2, 0).check_point([1.0, 1.0, 1.0])
    with pytest.raises(ContractViolation):
        RealModel(2, 0).check_point([1.0, 0.0])


def test_tangent_vectors_at_different_points_rejected():
    M = RealModel(2, 0)
    a = TangentVector(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    b = TangentVector(np.array([np.cosh(1), np.sinh(1), 0]), np.array([0, 0, 1.0]))
    with pytest.raises(ContractViolation):
        curvature_constant(a, b, a, b, -1.0, M.metric)
    assert curvature_constant(a, a, a, a, -1.0, M.metric) == 0.0


@given(seeds)
def test_constant_curvature_symmetries(seed):
    rng = np.random.default_rng(seed)
    M = RealModel(4, 1)
    x = M.random_point(rng)
    X, Y, Z, W = (tangent(M, x, rng) for _ in range(4))
    R = lambda a, b, c, d: curvature_constant(a, b, c, d, M.c, M.metric)  # noqa: E731
    assert np.isclose(R(X, Y, Z, W), -R(Y, X, Z, W))
    assert np.isclose(R(X, Y, Z, W), R(Z, W, X, Y))
    assert abs(R(X, Y, Z, W) + R(X, Z, W, Y) + R(X, W, Y, Z)) < 1e-9 * (1 + abs(R(X, Y, Z, W)))


def _projected(M, e):
    return lambda x: M.tangent_project(x, e)


def test_curvature_sign_convention_by_finite_differences(rng):
    # R(E, F, G, H) = g(R(G, H) F, E) with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]
    M = RealModel(2, 0)
    x = M.random_point(rng, spread=0.3)
    E, Fv, G, H = (rng.standard_normal(3) for _ in range(4))
    signs, c = M.signs, M.c

    def nabla(Xf, Yf):
        return lambda y: flat_covariant_derivative(signs, c, y, Xf(y), Yf)

    Gf, Hf, Ff = _projected(M, G), _projected(M, H), _projected(M, Fv)
    bracket = lambda y: nabla(Gf, Hf)(y) - nabla(Hf, Gf)(y)  # noqa: E731
    RGHF = nabla(Gf, nabla(Hf, Ff))(x) - nabla(Hf, nabla(Gf, Ff))(x) - nabla(bracket, Ff)(x)
    numeric = M.metric(RGHF, M.tangent_project(x, E))
    closed = curvature_constant(*(M.tangent_project(x, v) for v in (E, Fv, G, H)), c, M.metric)
    assert numeric == pytest.approx(closed, abs=1e-5)


def test_complex_form_is_constant_holomorphic_curvature():
    # on C^2 with J = i, a unit X and Y = JX give R(X, JX, X, JX) = c
    g = lambda a, b: float(np.dot(a, b))  # noqa: E731
    J = lambda v: np.array([-v[1], v[0], -v[3], v[2]])  # noqa: E731
    X = np.array([1.0, 0, 0, 0])
    assert curvature_complex_form(X, J(X), J, -4.0, g) == pytest.approx(-4.0)
    # a totally real plane has a quarter of it
    Y = np.array([0, 0, 1.0, 0])
    assert curvature_complex_form(X, Y, J, -4.0, g) == pytest.approx(-1.0)
    assert curvature_quaternionic_form(X, Y, [J], -4.0, g) == pytest.approx(-1.0)

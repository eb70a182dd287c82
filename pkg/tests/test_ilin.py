import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudofib.errors import ContractViolation, DegenerateSubspace
from pseudofib.ilin import (
    CausalType,
    IndefiniteForm,
    Ring,
    Signature,
    causal_type,
    inner,
    kernel_basis,
    orthonormalize,
    orthonormalize_real,
    real_metric,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_vec(form, rng):
    if form.ring is Ring.COMPLEX:
        return rng.standard_normal(form.dim) + 1j * rng.standard_normal(form.dim)
    if form.ring is Ring.QUATERNION:
        return rng.standard_normal((form.dim, 4))
    return rng.standard_normal(form.dim)


def test_minkowski_inner():
    form = IndefiniteForm(Ring.REAL, Signature(1, 3))
    assert inner([1, 0, 0, 0], [1, 0, 0, 0], form) == -1.0
    assert causal_type([1, 1, 0, 0], form) is CausalType.NULL
    assert causal_type([1, 0, 0, 0], form) is CausalType.TIMELIKE
    assert causal_type([0, 0, 2, 0], form) is CausalType.SPACELIKE


def test_complex_inner_conjugate_linear_in_second_slot():
    form = IndefiniteForm(Ring.COMPLEX, Signature(1, 1))
    x, y = np.array([1, 2j]), np.array([1j, 1])
    assert np.isclose(inner(x * 1j, y, form), 1j * inner(x, y, form))
    assert np.isclose(inner(x, y * 1j, form), -1j * inner(x, y, form))
    assert np.isclose(inner(y, x, form), np.conj(inner(x, y, form)))


@given(seeds)
def test_real_metric_is_real_part(seed):
    rng = np.random.default_rng(seed)
    for ring in Ring:
        form = IndefiniteForm(ring, Signature(2, 3))
        x, y = random_vec(form, rng), random_vec(form, rng)
        z = inner(x, y, form)
        re = z[0] if ring is Ring.QUATERNION else np.real(z)
        assert np.isclose(real_metric(x, y, form), re)


@given(seeds)
def test_quaternion_form_scales_by_right_unit(seed):
    rng = np.random.default_rng(seed)
    form = IndefiniteForm(Ring.QUATERNION, Signature(1, 2))
    x = random_vec(form, rng)
    lam = rng.standard_normal(4)
    from pseudofib import algebra
    xl = algebra.right_mul(x, lam)
    assert np.isclose(real_metric(xl, xl, form), np.dot(lam, lam) * real_metric(x, x, form))


@given(seeds, st.integers(0, 4), st.integers(0, 4))
def test_orthonormalize_gives_diagonal_gram_and_inertia(seed, neg, pos):
    if neg + pos == 0:
        return
    rng = np.random.default_rng(seed)
    form = IndefiniteForm(Ring.REAL, Signature(neg, pos))
    vecs = [rng.standard_normal(neg + pos) for _ in range(neg + pos)]
    frame = orthonormalize(vecs, form)
    G = np.array([[real_metric(a, b, form) for b in frame.vectors] for a in frame.vectors])
    assert np.allclose(G, np.diag(frame.signs), atol=1e-8)
    # Sylvester: a basis of the whole space sees the form's inertia
    assert sorted(frame.signs) == [-1] * neg + [1] * pos


def test_orthonormalize_drops_dependent_vectors():
    signs = np.array([-1.0, 1.0, 1.0])
    frame = orthonormalize_real([np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), np.array([0, 1.0, 0])], signs)
    assert len(frame.vectors) == 2


def test_null_span_is_degenerate():
    signs = np.array([-1.0, 1.0])
    with pytest.raises(DegenerateSubspace):
        orthonormalize_real([np.array([1.0, 1.0])], signs)


def test_complex_orthonormalize_roundtrip():
    form = IndefiniteForm(Ring.COMPLEX, Signature(1, 1))
    frame = orthonormalize([np.array([1, 0.5j]), np.array([0.2, 1 + 1j])], form)
    assert frame.vectors[0].dtype == complex
    assert len(frame.vectors) == 2
    for u, e in zip(frame.vectors, frame.signs):
        assert np.isclose(real_metric(u, u, form), e)
    assert abs(real_metric(*frame.vectors, form)) < 1e-12


def test_coerce_errors():
    form = IndefiniteForm(Ring.REAL, Signature(1, 1))
    with pytest.raises(ContractViolation):
        form.coerce([1, 2, 3])
    with pytest.raises(ContractViolation):
        form.coerce([1j, 0])
    with pytest.raises(ContractViolation):
        form.coerce([np.nan, 0])
    with pytest.raises(ContractViolation):
        Signature(-1, 2)
    with pytest.raises(ContractViolation):
        causal_type([1, 0], form, tol=0)


def test_realify_roundtrip():
    form = IndefiniteForm(Ring.COMPLEX, Signature(1, 2))
    z = np.array([1 + 2j, -1j, 3])
    assert np.allclose(form.derealify(form.realify(z)), z)
    assert list(form.real_signs()) == [-1, -1, 1, 1, 1, 1]


def test_kernel_basis():
    K = kernel_basis(np.array([[1.0, 1.0, 0.0]]))
    assert len(K) == 2
    for k in K:
        assert abs(k[0] + k[1]) < 1e-12
    assert len(kernel_basis(np.eye(3))) == 0
    with pytest.raises(ContractViolation):
        kernel_basis(np.array([[np.inf]]))

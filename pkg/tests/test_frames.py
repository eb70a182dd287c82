import itertools

import numpy as np
import pytest

from pseudofib import sampling
from pseudofib.classify import admissible
from pseudofib.errors import ClassificationContradiction, ContractViolation, NullDirection
from pseudofib.frames import (
    HorizontalBasis,
    build_fibre_frame,
    build_horizontal_basis,
    index_decomposition,
    structure_constants,
)
from pseudofib.hopf import Fibration
from pseudofib.oneill import A_tensor, fibre_connection


def start(kind, m, t, rng):
    F = Fibration(kind, m, t)
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    return F, p, X


def test_seed_normalisation(rng):
    # v_j(p) = A_X A_X v_jp / (c g(X, X)) = -v_jp, so the Gram matrix is eps_j delta_jl
    F, p, X = start("rq", 1, 0, rng)
    frame = build_fibre_frame(F, p, X, gauge=False)
    for v, vp in zip(frame.at(), F.vertical_basis(p)):
        assert np.allclose(v, -vp, atol=1e-9)
    assert frame.signs == (-1, -1, -1)


def test_circle_frame_constant_along_fibre(rng):
    F, p, X = start("rc", 2, 1, rng)
    frame = build_fibre_frame(F, p, X)
    for q in sampling.fibre_points(F, p, rng, n_random=8, n_deterministic=0):
        assert frame.gram(q)[0, 0] == pytest.approx(-1.0, abs=1e-9)


def test_quaternionic_frame_gram_is_minus_identity(rng):
    F, p, X = start("rq", 1, 0, rng)
    frame = build_fibre_frame(F, p, X)
    for q in sampling.fibre_points(F, p, rng, n_random=4, n_deterministic=4):
        assert np.allclose(frame.gram(q), -np.eye(3), atol=1e-6)


def test_third_vector_gauge_and_structure_constants(rng):
    F, p, X = start("rq", 2, 1, rng)
    frame = build_fibre_frame(F, p, X)
    q = sampling.fibre_points(F, p, rng, n_random=1, n_deterministic=0)[0]
    v = frame.at(q)
    assert np.allclose(fibre_connection(F, q, v[0], frame.field(1)), v[2], atol=1e-6)
    C = structure_constants(frame, q)
    e3 = F.g(v[2], v[2])
    for i, j, l in itertools.product(range(3), repeat=3):
        if len({i, j, l}) < 3:
            expected = 0.0
        else:
            expected = e3 * (1 if (i, j, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] else -1)
        assert C[i, j, l] == pytest.approx(expected, abs=1e-6)


def test_frame_rejects_bad_input(rng):
    F, p, X = start("rc", 2, 1, rng)
    with pytest.raises(ContractViolation):
        build_fibre_frame(F, p, p)
    with pytest.raises(ContractViolation):
        build_fibre_frame(Fibration("cq", 1, 0), *start("cq", 1, 0, rng)[1:])
    H = F.horizontal_space(p)
    from pseudofib.ilin import orthonormalize_real
    fr = orthonormalize_real(list(H.T), F.signs)
    t = [v for v, e in zip(fr.vectors, fr.signs) if e < 0][0]
    s = [v for v, e in zip(fr.vectors, fr.signs) if e > 0][0]
    with pytest.raises(NullDirection):
        build_fibre_frame(F, p, t + s)
    with pytest.raises(ContractViolation):
        build_horizontal_basis(F, p, 2.0 * X)


def test_quaternionic_basis_single_block(rng):
    F, p, X = start("rq", 1, 0, rng)
    B = build_horizontal_basis(F, p, X)
    assert B.k == 1
    assert len(B.vectors()) == 4
    assert np.allclose(B.gram(), np.eye(4), atol=1e-6)
    assert index_decomposition(B) == (1, 0, 1)


def test_circle_basis_two_blocks(rng):
    F = Fibration("rc", 2, 1)
    p = F.random_point(rng)
    X = sampling.unit_horizontal(F, p, rng)
    B = build_horizontal_basis(F, p, X)
    assert B.k == 2
    assert index_decomposition(B) == (2, 1, 1)
    G = B.gram()
    assert np.allclose(G, np.diag(np.diag(G)), atol=1e-8)


def test_block_orthogonality(rng):
    F, p, X = start("rq", 2, 1, rng)
    B = build_horizontal_basis(F, p, X)
    vs = B.frame.at()
    for (La, blockA), Lb in itertools.product(zip(B.L, B.blocks), B.L):
        for w in blockA:
            assert abs(F.g(w, Lb)) < 1e-8
    for (La, blockA), (Lb, blockB) in itertools.product(zip(B.L, B.blocks), repeat=2):
        for (j, wa), (l, wb) in itertools.product(enumerate(blockA), enumerate(blockB)):
            expected = -F.g(La, Lb) * B.frame.signs[l] * (j == l)
            assert F.g(wa, wb) == pytest.approx(expected, abs=1e-6)
    assert len(vs) == 3


@pytest.mark.parametrize("kind", ["rc", "rq"])
@pytest.mark.parametrize("m,t", [(m, t) for m in (1, 2, 3) for t in range(m + 1)])
def test_index_decomposition_on_every_small_model(kind, m, t):
    rng = sampling.make_rng(1000 * m + t)
    F, p, X = start(kind, m, t, rng)
    B = build_horizontal_basis(F, p, X)
    got = index_decomposition(B)
    assert got in admissible(F.base_dim, F.fibre_dim, F.base_index, F.fibre_dim)
    assert got == (F.base_dim // (F.fibre_dim + 1), t, m - t) if kind == "rq" else got[1] == t


def test_basis_vectors_are_basic_along_fibre(rng):
    F, p, X = start("rq", 2, 1, rng)
    B = build_horizontal_basis(F, p, X)
    for q in sampling.fibre_points(F, p, rng, n_random=3, n_deterministic=0):
        assert np.allclose(np.array(B.transported(q)), np.array(B.recomputed(q)), atol=1e-6)


def test_contradiction_detected(rng):
    F, p, X = start("rq", 1, 0, rng)
    B = build_horizontal_basis(F, p, X)
    flipped = HorizontalBasis(F, B.frame, B.L, tuple(-e for e in B.L_signs), B.blocks)
    with pytest.raises(ClassificationContradiction):
        index_decomposition(flipped)
    with pytest.raises(ClassificationContradiction):
        index_decomposition(B, Fibration("rq", 1, 1))


def test_arithmetic_only_octonionic_parameters():
    assert admissible(8, 7, 0, 7) == [(1, 0, 1)]


def test_basis_block_matches_A(rng):
    F, p, X = start("rc", 1, 0, rng)
    B = build_horizontal_basis(F, p, X)
    v = B.frame.at()[0]
    assert np.allclose(B.blocks[0][0], A_tensor(F, p, X, v))

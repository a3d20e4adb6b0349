from fractions import Fraction

import numpy as np
import pytest

from drkit import damek_ricci as dr
from drkit.clifford import build_irreducible, build_module
from drkit.errors import DegeneratePlaneError, DimensionMismatchError, PreconditionError
from drkit.exact import random_rational, sample_rng, unit_vectors

SPACES = [(1, 1, 0), (2, 1, 0), (3, 1, 1), (5, 1, 0), (7, 1, 0)]


@pytest.fixture(params=SPACES, ids=lambda p: f"m{p[0]}-{p[1]}{p[2]}")
def space(request):
    return dr.DRSpace.from_multiplicities(*request.param)


def _rat(sp, seed, k=3):
    rng = sample_rng(seed, sp.dim)
    return [random_rational(rng, sp.dim) for _ in range(k)]


def test_bracket_antisymmetric_and_jacobi(space):
    X, Y, Z = _rat(space, 1)
    br = lambda a, b: dr.bracket(space, a, b)
    assert np.all(br(X, Y) == -br(Y, X))
    jac = br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))
    assert all(x == 0 for x in jac)


def test_derivation_weights(space):
    A = space.basis_vector(space.dim - 1, True)
    V = space.basis_vector(0, True)
    Y = space.basis_vector(space.dim_v, True)
    assert np.all(dr.bracket(space, A, V) == V / 2)
    assert np.all(dr.bracket(space, A, Y) == Y)


def test_jacobi_operator_exact_properties(space):
    T = _rat(space, 2, 1)[0]
    M = dr.jacobi_op(space, T)
    assert np.all(M == M.T)
    assert all(x == 0 for x in M @ T)
    assert np.trace(M) == dr.einstein_c1(space) * (T @ T)


def test_curvature_symmetries_exact(space):
    X, Y, Z = _rat(space, 3)
    W = _rat(space, 4, 1)[0]
    R = lambda a, b, c, d: dr.curvature(space, a, b, c) @ d
    assert R(X, Y, Z, W) == -R(Y, X, Z, W)
    assert R(X, Y, Z, W) == -R(X, Y, W, Z)
    assert R(X, Y, Z, W) == R(Z, W, X, Y)
    bianchi = dr.curvature(space, X, Y, Z) + dr.curvature(space, Y, Z, X) + dr.curvature(space, Z, X, Y)
    assert all(x == 0 for x in bianchi)
    # R(W, T)T recovers the Jacobi operator
    assert np.all(dr.curvature(space, W, X, X) == dr.jacobi_apply(space, X, W))


def test_jacobi_of_A():
    sp = dr.DRSpace(build_irreducible(3))
    ev = np.linalg.eigvalsh(dr.jacobi_op(sp, sp.A))
    np.testing.assert_allclose(np.sort(ev), [-1] * 3 + [-0.25] * 4 + [0], atol=1e-14)


@pytest.mark.parametrize("m, upper", [(1, -0.25), (3, -0.25), (2, 0.0), (4, 0.0), (6, 0.0)])
def test_sectional_range_and_closed_form(m, upper):
    sp = dr.DRSpace(build_irreducible(m))
    rng = np.random.default_rng(m)
    for _ in range(30):
        # orthonormal pair with T2 free of A
        T2 = rng.standard_normal(sp.dim)
        T2[-1] = 0
        T2 /= np.linalg.norm(T2)
        T1 = rng.standard_normal(sp.dim)
        T1 -= (T1 @ T2) * T2
        T1 /= np.linalg.norm(T1)
        k = dr.sectional(sp, T1, T2)
        assert -1 - 1e-12 <= k <= upper + 1e-12
        assert k == pytest.approx(dr.sectional_closed_form(sp, T1, T2), abs=1e-12)


def test_sectional_degenerate_plane():
    sp = dr.DRSpace(build_irreducible(2))
    T = sp.A
    with pytest.raises(DegeneratePlaneError):
        dr.sectional(sp, T, 2 * T)
    with pytest.raises(PreconditionError):
        dr.sectional_closed_form(sp, sp.basis_vector(0), sp.A)


@pytest.mark.parametrize("m", [1, 3, 4, 6, 7])
def test_two_stein_probe(m):
    sp = dr.DRSpace(build_irreducible(m))
    p = dr.two_stein_probe(sp, 200, 9)
    assert p.maxdev < 1e-9
    assert p.c1 == pytest.approx(float(dr.einstein_c1(sp)), abs=1e-12)
    assert p.c2 == pytest.approx(sp.dim_v / 16 + m, abs=1e-9)


def test_probe_needs_two_samples():
    with pytest.raises(PreconditionError):
        dr.two_stein_probe(dr.DRSpace(build_irreducible(1)), 1, 0)


@pytest.mark.parametrize("m", [2, 5, 6])
def test_k_operator(m):
    sp = dr.DRSpace(build_irreducible(m))
    rng = sample_rng(5, m)
    V = random_rational(rng, sp.dim_v)
    Y = np.array([Fraction(3, 5), Fraction(4, 5)] + [Fraction(0)] * (m - 2), dtype=object)
    K = dr.k_operator(sp, V, Y)
    assert all(isinstance(x, Fraction) for x in K.ravel())
    assert all(x == 0 for x in K @ Y)
    assert np.all(K @ K == dr.k_squared(sp, V, Y))
    Vf, Yf = V.astype(float), Y.astype(float)
    w, U = np.linalg.eigh((K @ K).astype(float))
    for mu, X in zip(w, U.T):
        if abs(X @ Yf) > 1e-9:
            continue
        a, b = dr.k2_minus_one_residuals(sp, Vf, Yf, X)
        assert (a < 1e-9) == (b < 1e-9)


def test_k_operator_float_for_irrational_norm():
    sp = dr.DRSpace(build_irreducible(3))
    V = np.array([Fraction(1)] + [Fraction(0)] * 3, dtype=object)
    Y = np.array([Fraction(1), Fraction(1), Fraction(0)], dtype=object)
    assert dr.k_operator(sp, V, Y).dtype == float
    with pytest.raises(PreconditionError):
        dr.k_numerator(sp, 0 * V, Y)


def test_nabla_forms_agree(space):
    T, W = _rat(space, 6, 2)
    N = dr.nabla_jacobi_op(space, T)
    assert np.all(N == N.T)
    assert np.all(N @ W == dr.nabla_jacobi(space, T, W))
    assert np.all(dr.nabla_polarized(space, T, T, T, W) == dr.nabla_jacobi(space, T, W))


def test_nabla_vanishes_on_symmetric_space():
    sp = dr.DRSpace(build_irreducible(1))
    for T in unit_vectors(0, 5, sp.dim):
        np.testing.assert_allclose(dr.nabla_jacobi_op(sp, T), 0, atol=1e-14)


def test_nabla_nonzero_on_nonsymmetric_space():
    sp = dr.DRSpace(build_irreducible(5))
    T = unit_vectors(0, 1, sp.dim)[0]
    assert np.abs(dr.nabla_jacobi_op(sp, T)).max() > 1e-3


def test_tangent_vec_round_trip():
    sp = dr.DRSpace(build_module(3, 1, 1))
    T = _rat(sp, 7, 1)[0]
    tv = dr.TangentVec.from_flat(sp, T)
    assert np.all(tv.flat(sp) == T)
    assert tv.norm2() == T @ T


def test_shape_errors():
    sp = dr.DRSpace(build_irreducible(2))
    with pytest.raises(DimensionMismatchError):
        dr.jacobi_op(sp, np.zeros(sp.dim + 1))
    with pytest.raises(DimensionMismatchError):
        sp.vec(V=np.zeros(3))
    with pytest.raises(DimensionMismatchError):
        sp.vec(Y=np.zeros(5))

"""The compiled and numpy kernels must agree with each other and with the exact paths."""
import numpy as np
import pytest

from drkit import _pykernels, kernels
from drkit import damek_ricci as dr
from drkit import octonion as octo
from drkit.clifford import build_irreducible
from drkit.exact import unit_vectors


def test_backend_switch_round_trip():
    prev = kernels.use_backend("python")
    assert kernels.BACKEND == "python"
    assert kernels.jacobi_matrix is _pykernels.jacobi_matrix
    kernels.use_backend(prev)
    assert kernels.BACKEND == prev


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


@pytest.mark.skipif("compiled" not in kernels.available(), reason="extension not built")
def test_backends_agree():
    c, p = kernels.module("compiled"), kernels.module("python")
    rng = np.random.default_rng(1)
    X, Y, Z = rng.standard_normal((3, 50, 16))
    for eps in (1, -1):
        np.testing.assert_allclose(c.cayley_curvature_batch(X, Y, Z, eps),
                                   p.cayley_curvature_batch(X, Y, Z, eps), atol=1e-13)
        np.testing.assert_allclose(c.cayley_sectional_batch(X, Y, eps),
                                   p.cayley_sectional_batch(X, Y, eps), atol=1e-13)
        np.testing.assert_allclose(c.cayley_jacobi_matrix(X[0], eps), p.cayley_jacobi_matrix(X[0], eps), atol=1e-13)
    a, b = rng.standard_normal((2, 30, 8))
    np.testing.assert_allclose(c.oct_mul_batch(a, b), p.oct_mul_batch(a, b), atol=1e-13)
    for m in (1, 3, 6, 8):
        G = build_irreducible(m).float_generators
        Ts = unit_vectors(m, 40, 1 + G.shape[1] + m)
        np.testing.assert_allclose(c.jacobi_matrix_batch(G, Ts), p.jacobi_matrix_batch(G, Ts), atol=1e-13)
        for a_, b_ in zip(c.jacobi_traces_batch(G, Ts), p.jacobi_traces_batch(G, Ts)):
            np.testing.assert_allclose(a_, b_, atol=1e-12)


@pytest.mark.parametrize("m", [1, 2, 5, 7])
def test_jacobi_matrix_matches_exact_columns(backend, m):
    sp = dr.DRSpace(build_irreducible(m))
    rng = np.random.default_rng(m)
    from drkit.exact import random_rational

    T = random_rational(rng, sp.dim)
    exact = dr.jacobi_op(sp, T).astype(float)
    np.testing.assert_allclose(kernels.jacobi_matrix(sp.gens_float, T.astype(float)), exact, atol=1e-12)


def test_oct_mul_batch_matches_scalar(backend):
    rng = np.random.default_rng(4)
    a, b = rng.standard_normal((2, 10, 8))
    out = kernels.oct_mul_batch(a, b)
    for i in range(10):
        np.testing.assert_allclose(out[i], octo.oct_mul(a[i], b[i]), atol=1e-14)


def test_cayley_curvature_batch_matches_exact(backend):
    from drkit.exact import random_rational

    rng = np.random.default_rng(9)
    X, Y, Z = (random_rational(rng, 16) for _ in range(3))
    want = octo.cayley_curvature(X, Y, Z, 1).astype(float)
    got = kernels.cayley_curvature_batch(*(v.astype(float)[None] for v in (X, Y, Z)), 1)[0]
    np.testing.assert_allclose(got, want, atol=1e-12)

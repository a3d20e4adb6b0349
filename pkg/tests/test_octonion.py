from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drkit import octonion as octo
from drkit.exact import random_rational, sample_rng

frac = st.fractions(min_value=-4, max_value=4, max_denominator=5)
octs = st.lists(frac, min_size=8, max_size=8).map(lambda v: np.array(v, dtype=object))


def _e(k):
    return np.eye(8, dtype=np.int64)[k].astype(object)


@settings(max_examples=50, deadline=None)
@given(octs, octs)
def test_norm_is_multiplicative(a, b):
    ab = octo.oct_mul(a, b)
    assert ab @ ab == (a @ a) * (b @ b)


@settings(max_examples=50, deadline=None)
@given(octs, octs)
def test_alternative_laws(a, b):
    m = octo.oct_mul
    assert np.all(m(m(a, a), b) == m(a, m(a, b)))
    assert np.all(m(m(b, a), a) == m(b, m(a, a)))


@given(octs)
def test_conjugate_product_is_norm(a):
    p = octo.oct_mul(a, octo.conj(a))
    assert p[0] == a @ a and all(x == 0 for x in p[1:])


def test_not_associative():
    a, b, c = _e(1), _e(2), _e(4)
    m = octo.oct_mul
    assert np.any(m(m(a, b), c) != m(a, m(b, c)))


def test_imaginary_units_square_to_minus_one():
    for k in range(1, 8):
        sq = octo.oct_mul(_e(k), _e(k))
        assert sq[0] == -1 and all(x == 0 for x in sq[1:])


@pytest.mark.parametrize("n", [2, 4, 8])
def test_left_mul_operator_matches_product(n):
    rng = np.random.default_rng(n)
    a, b = rng.standard_normal((2, n))
    np.testing.assert_allclose(octo.left_mul_operator(a) @ b, octo.cd_mul(a, b), atol=1e-14)
    np.testing.assert_allclose(octo.right_mul_operator(b) @ a, octo.cd_mul(a, b), atol=1e-14)


def test_left_mul_skew_and_orthogonal_for_unit_imaginary():
    a = np.zeros(8)
    a[1:] = np.random.default_rng(0).standard_normal(7)
    a /= np.linalg.norm(a)
    L = octo.left_mul_operator(a)
    np.testing.assert_allclose(L + L.T, 0, atol=1e-15)
    np.testing.assert_allclose(L @ L.T, np.eye(8), atol=1e-14)


@pytest.mark.parametrize("k", range(1, 8))
def test_max_isotropic_dimension_is_four(k):
    dim, witness = octo.max_isotropic_dimension(_e(k).astype(float))
    assert dim == 4
    L = octo.left_mul_operator(_e(k).astype(float))
    np.testing.assert_allclose(witness @ L @ witness.T, 0, atol=1e-12)


@pytest.mark.parametrize("eps", [1, -1])
def test_xi_spectrum(eps):
    assert octo.xi_jacobi_spectrum(eps) == {Fraction(0): 1, Fraction(eps): 7, Fraction(eps, 4): 8}
    # keys come out sorted
    assert list(octo.xi_jacobi_spectrum(eps)) == sorted(octo.xi_jacobi_spectrum(eps))


@pytest.mark.parametrize("eps", [1, -1])
def test_sectional_range(eps, backend):
    ks = octo.sectional_samples(eps, 3000, seed=5)
    lo, hi = sorted((eps / 4, eps))
    assert ks.min() >= lo - 1e-9 and ks.max() <= hi + 1e-9


def test_sectional_extremes_attained():
    plane = octo.CayleyPlane(1)
    X = octo.tangent(np.eye(8)[1], np.zeros(8))
    assert plane.sectional(octo.XI, X) == pytest.approx(1.0)
    Y = octo.tangent(np.zeros(8), np.eye(8)[3])
    assert plane.sectional(octo.XI, Y) == pytest.approx(0.25)


@pytest.mark.parametrize("eps", [1, -1])
def test_perp_xi_exact_and_control_nonzero(eps):
    rep = octo.perp_xi_checks(eps, samples=15, seed=2, exact=True)
    for k in ("eps_eps_eps", "quarter_eps_eps", "quarter_quarter_quarter"):
        assert isinstance(rep[k], Fraction) and rep[k] == 0
    assert rep["control_generic"] > 0.1


def test_adf_pairing_three_routes_agree():
    for i in range(10):
        rng = sample_rng(3, i)
        a, d, f = (random_rational(rng, 8) for _ in range(3))
        a[0] = Fraction(0)
        direct, via_conj, via_inner = octo.adf_pairing(a, d, f, 1)
        assert isinstance(direct, Fraction) and direct == via_inner
        # <(ad) f*, 1> = <ad, f>
        assert via_conj == via_inner


@pytest.mark.parametrize("eps", [1, -1])
def test_curvature_symmetries_exact(eps):
    plane = octo.CayleyPlane(eps)
    rng = sample_rng(11, eps + 1)
    X, Y, Z, W = (random_rational(rng, 16) for _ in range(4))
    R = plane.curvature4
    assert R(X, Y, Z, W) == -R(Y, X, Z, W)
    assert R(X, Y, Z, W) == -R(X, Y, W, Z)
    assert R(X, Y, Z, W) == R(Z, W, X, Y)
    assert octo.bianchi_residual(X, Y, Z, eps) == 0


def test_tensor_matches_pointwise():
    R = octo.CayleyPlane(1).tensor()
    rng = np.random.default_rng(0)
    X, Y, Z = rng.standard_normal((3, 16))
    want = octo.cayley_curvature(X, Y, Z, 1)
    got = np.einsum("ijkl,i,j,k->l", R, X, Y, Z)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_structure_table_is_read_only():
    idx, sgn = octo.structure_table(8)
    with pytest.raises(ValueError):
        idx[0, 0] = 3


def test_cayley_plane_rejects_bad_eps():
    with pytest.raises(ValueError):
        octo.CayleyPlane(2)

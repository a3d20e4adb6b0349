from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from drkit import damek_ricci as dr
from drkit import geodesy as geo
from drkit.clifford import build_irreducible
from drkit.errors import ExcludedCaseError, InconsistentCaseError, PreconditionError
from drkit.exact import sample_rng, to_exact, unit_vectors
from drkit.octonion import CayleyPlane


def _space(m):
    return dr.DRSpace(build_irreducible(m))


def _e(n, *idx):
    return to_exact(np.eye(n, dtype=np.int64)[list(idx)])


# -- subspaces -------------------------------------------------------------------

def test_subspace_exact_and_float_membership():
    sp = _space(2)
    L = geo.Subspace(sp, _e(sp.dim, 0, 1))
    assert L.exact and L.dim == 2
    w = L.basis[0] * Fraction(2, 3) - L.basis[1]
    assert L.contains(w) and L.residual(w) == 0
    off = sp.basis_vector(2, True)
    assert not L.contains(off) and L.residual(off) == 1
    Lf = L.to_float()
    assert not Lf.exact
    assert Lf.contains(w.astype(float)) and not Lf.contains(off.astype(float))


def test_subspace_drops_dependent_rows():
    sp = _space(1)
    rows = np.vstack([_e(sp.dim, 0), 2 * _e(sp.dim, 0), _e(sp.dim, 3)])
    assert geo.Subspace(sp, rows).dim == 2
    assert geo.Subspace(sp, rows.astype(float)).dim == 2


def test_subspace_rejects_bad_input():
    sp = _space(1)
    with pytest.raises(ValueError):
        geo.Subspace(sp, np.zeros((1, sp.dim + 1)))
    with pytest.raises(ValueError):
        geo.Subspace(sp, np.zeros((2, sp.dim)))


# -- homogeneous totally geodesic subalgebras ------------------------------------------

@pytest.mark.parametrize("m, exact", [(1, True), (3, True), (7, False)])
def test_a_plus_z_is_homogeneous_and_geodesic(m, exact):
    sp = _space(m)
    rows = _e(sp.dim, *range(sp.dim_v, sp.dim))
    L = geo.Subspace(sp, rows if exact else rows.astype(float))
    cert = geo.is_homogeneous_tg(L)
    assert cert and cert.details == {"dim_v'": 0, "dim_z'": m}
    assert geo.r_invariance_residual(L) <= 1e-13
    assert geo.nabla_r_invariance_residual(L) <= 1e-13


def test_complex_line_subalgebra():
    # a + span(V, J_1 V) + span(Z_1)
    sp = _space(3)
    V = _e(sp.dim_v, 0)[0]
    Z = _e(sp.m, 0)[0]
    rows = [sp.vec(V=V, s=Fraction(0)), sp.vec(V=sp.J(Z, V), s=Fraction(0)),
            sp.vec(Y=Z, s=Fraction(0)), sp.basis_vector(sp.dim - 1, True)]
    L = geo.Subspace(sp, rows)
    assert geo.is_homogeneous_tg(L)
    assert geo.r_invariance_residual(L) == 0
    assert geo.nabla_r_invariance_residual(L) == 0


@pytest.mark.parametrize("rows, condition", [
    (lambda sp: [sp.basis_vector(0, True)], "contains_A"),
    (lambda sp: [sp.basis_vector(sp.dim - 1, True), sp.basis_vector(0, True) + sp.basis_vector(sp.dim_v, True)],
     "splits"),
    (lambda sp: [sp.basis_vector(sp.dim - 1, True), sp.basis_vector(0, True), sp.basis_vector(1, True)],
     "bracket_closed"),
    (lambda sp: [sp.basis_vector(sp.dim - 1, True), sp.basis_vector(0, True), sp.basis_vector(sp.dim_v, True)],
     "J_closed"),
])
def test_homogeneity_failures_name_condition(rows, condition):
    sp = _space(3)
    cert = geo.is_homogeneous_tg(geo.Subspace(sp, rows(sp)))
    assert not cert and cert.condition == condition
    assert cert.as_record()["condition"] == condition


def test_homogeneity_needs_dr_space():
    L = geo.Subspace(CayleyPlane(1), np.eye(16)[:2])
    with pytest.raises(TypeError):
        geo.is_homogeneous_tg(L)


def test_cayley_projective_line_is_geodesic():
    # the first octonion factor spans a totally geodesic OP^1
    plane = CayleyPlane(1)
    L = geo.Subspace(plane, np.eye(16)[:8])
    assert geo.r_invariance_residual(L) < 1e-12
    assert geo.nabla_r_invariance_residual(L) == 0


def test_generic_plane_not_invariant():
    sp = _space(2)
    L = geo.Subspace(sp, unit_vectors(1, 2, sp.dim))
    assert geo.r_invariance_residual(L) > 1e-3


# -- the 15-dimensional example ------------------------------------------------------

@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("a, b, s", [(1, 0, 1), (0, 1, 2), (Fraction(2, 3), Fraction(-1, 2), Fraction(-3, 4))])
def test_example_exact(eps, a, b, s):
    ex = geo.build_example_15d(eps, a, b, s)
    assert ex.L.exact and ex.L.dim == 4
    assert geo.r_invariance_residual(ex.L) == 0
    assert geo.nabla_r_invariance_residual(ex.L) == 0
    # it is not a subalgebra of the homogeneous type
    assert geo.is_homogeneous_tg(ex.L).condition == "contains_A"


def test_example_float_is_minus_one():
    ex = geo.build_example_15d(1, 0.3, -1.1, 0.7)
    ok, worst = geo.is_minus_one_subspace(ex.L)
    assert ok and abs(worst + 1) < 1e-12
    T = ex.L.basis[0]
    assert geo.minus_one_restriction_residual(ex.L, T) < 1e-12


def test_example_eigenvector_sign():
    for eps in (1, -1):
        ex = geo.build_example_15d(eps)
        G = ex.space.rep.generators.astype(object)
        assert np.all(G[0] @ G[1] @ G[2] @ ex.W == eps * ex.W)


def test_example_rejects_zero_v():
    with pytest.raises(PreconditionError):
        geo.build_example_15d(1, 0, 0, 1)


def test_minus_one_needs_two_dims():
    sp = _space(1)
    with pytest.raises(PreconditionError):
        geo.is_minus_one_subspace(geo.Subspace(sp, np.eye(sp.dim)[:1]))


def test_a_plus_z_is_minus_one():
    sp = _space(3)
    L = geo.Subspace(sp, np.eye(sp.dim)[sp.dim_v:])
    assert geo.is_minus_one_subspace(L)[0]


# -- weak J^2 and z'' ----------------------------------------------------------------

@pytest.mark.parametrize("m, d, case", [(1, 1, "i"), (3, 2, "ii"), (3, 3, "ii"), (6, 3, "ii"), (7, 5, "iv")])
def test_closure_cases(m, d, case):
    sp = _space(m)
    r = geo.zdouble_closure(sp, _e(sp.dim_v, 0)[0], _e(m, *range(d)))
    assert r.case == case and r.zprime_dim == d


def test_quaternionic_triples_in_m7():
    sp = _space(7)
    V = _e(8, 0)[0]
    cases = [geo.zdouble_closure(sp, V, _e(7, *c)).case for c in combinations(range(7), 3)]
    assert cases.count("ii") == 7 and cases.count("iii") == 28


@pytest.mark.parametrize("m, d", [(2, 2), (5, 4), (6, 6)])
def test_weak_j2_fails(m, d):
    sp = _space(m)
    V, Z = _e(sp.dim_v, 0)[0], _e(m, *range(d))
    assert not geo.weak_j2_check(sp, V, Z)
    with pytest.raises(PreconditionError):
        geo.zdouble_closure(sp, V, Z)


def test_weak_j2_float_matches_exact():
    sp = _space(7)
    rng = np.random.default_rng(3)
    V = rng.standard_normal(8)
    Z = np.eye(7)[[0, 1, 3]]
    assert geo.weak_j2_check(sp, V, Z)
    assert geo.zdouble_closure(sp, V, Z).case == "iii"


@pytest.mark.parametrize("triple", [(1, 2, 2), (2, 3, 8), (4, 6, 8), (8, 7, 8)])
def test_classify_rejects(triple):
    with pytest.raises(InconsistentCaseError):
        geo.classify_dims(*triple)


# -- eigenvectors and the l4 block ---------------------------------------------------------

@pytest.mark.parametrize("m", [2, 5, 6])
def test_eigen_E_residuals(m):
    sp = _space(m)
    for T in unit_vectors(m, 10, sp.dim):
        V, Y, _ = sp.split(T)
        for mu, X in geo.k2_eigenpairs(sp, V, Y):
            if abs(mu + 1) < 1e-6:
                continue
            for pair in geo.eigen_E(sp, T, X, mu):
                assert pair.residual < 1e-9


def test_eigen_E_preconditions():
    sp = _space(3)
    T = unit_vectors(0, 1, sp.dim)[0]
    V, Y, _ = sp.split(T)
    mu, X = geo.k2_eigenpairs(sp, V, Y)[0]
    with pytest.raises(PreconditionError):
        geo.eigen_E(sp, 2 * T, X)
    with pytest.raises(PreconditionError):
        geo.eigen_E(sp, T, Y / np.linalg.norm(Y))


def test_eigen_E_excludes_minus_one():
    # m = 3 is quaternionic: K^2 = -id on Y-perp
    sp = _space(3)
    T = unit_vectors(4, 1, sp.dim)[0]
    V, Y, _ = sp.split(T)
    mu, X = geo.k2_eigenpairs(sp, V, Y)[0]
    assert mu == pytest.approx(-1)
    with pytest.raises(ExcludedCaseError):
        geo.eigen_E(sp, T, X)


fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@settings(max_examples=40, deadline=None)
@given(fr, fr, fr)
def test_closed_form_Q_squares_to_scalar(nv2, ny, mu):
    Q = geo.closed_form_Q(nv2, ny, mu)
    D = Q @ Q - nv2 ** 2 * ny ** 2 * (1 + mu) * np.eye(4, dtype=np.int64)
    assert all(x == 0 for x in D.ravel())


@pytest.mark.parametrize("m", [2, 6])
def test_l4_block_exact_and_float(m):
    sp = _space(m)
    i, cfg = 0, None
    while cfg is None:
        cfg = geo.exact_admissible_config(sp, sample_rng(17, i))
        i += 1
    blk = geo.l4_block_operator(sp, *cfg)
    assert blk.image_residual == 0 and blk.square_residual == 0
    T, X, mu = cfg
    fblk = geo.l4_block_operator(sp, T.astype(float), X.astype(float), float(mu))
    assert fblk.image_residual < 1e-10
    assert float(fblk.scalar) == pytest.approx(float(blk.scalar))


def test_l4_block_needs_rational_norm():
    sp = _space(2)
    T = sp.vec(V=_e(4, 0)[0], Y=np.array([Fraction(1), Fraction(1)], dtype=object), s=Fraction(0))
    with pytest.raises(PreconditionError):
        geo.l4_block_operator(sp, T, np.array([Fraction(1), Fraction(-1)], dtype=object))

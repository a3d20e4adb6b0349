from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from drkit import einstein as ein
from drkit.errors import DimensionMismatchError, PreconditionError

R0 = float(np.arctan2(1.0, float(ein.COT_R0)))


@pytest.fixture(scope="module")
def case717():
    return ein.solve_case_717()


@pytest.fixture(scope="module")
def case78():
    return ein.solve_case_78()


# -- spheres and focal points ------------------------------------------------------

def test_radius_matches_closed_form():
    assert ein.sphere_einstein_radius() == pytest.approx(float(ein.COT_R0), abs=1e-12)
    assert abs(ein.sphere_einstein_equation(R0)) < 1e-12
    assert np.pi / 2 < R0 < np.pi


@pytest.mark.parametrize("r", [0.3, 1.0, 2.0, 3.0])
def test_other_spheres_are_not_einstein(r):
    sphere = ein.SphereModel(r)
    assert ein.gauss_einstein_residual(sphere.hypersurface()) > 1e-3


def test_sphere_principal_half_angle():
    a1, a3 = ein.SphereModel(R0).principal
    # cot r = (cot^2(r/2) - 1) / (2 cot(r/2)) with cot(r/2) = 2 a3
    assert a1 == pytest.approx((4 * a3 * a3 - 1) / (4 * a3), abs=1e-14)
    assert a3 == pytest.approx(np.sqrt(6) / 8, abs=1e-14)


@pytest.mark.parametrize("r", [0.0, np.pi, -1.0])
def test_sphere_rejects_radius(r):
    with pytest.raises(ValueError):
        ein.SphereModel(r)


def test_focal_scan():
    scan = ein.jacobi_focal_scan(np.linspace(1e-3, np.pi - 1e-3, 5001))
    assert scan.radius == pytest.approx(R0, abs=1e-12)
    assert scan.rank == 0
    assert max(abs(c) for c in scan.coefficients) < 1e-12
    assert ein.normal_exp_rank(R0) == 0


@pytest.mark.parametrize("r", [0.5, 1.5, 2.9])
def test_normal_exp_rank_full_elsewhere(r):
    assert ein.normal_exp_rank(r) == 15


def test_focal_scan_errors():
    with pytest.raises(ValueError):
        ein.jacobi_focal_scan(np.linspace(0, 1, 10))
    # cos r and cos(r/2) never vanish together
    with pytest.raises(PreconditionError):
        ein.jacobi_focal_scan(np.linspace(0.1, 3.0, 1000), lambdas=(0.0, 0.0))


def test_jacobi_field_coefficient_solves_ode():
    r = np.linspace(0.1, 2.0, 7)
    h = 1e-4
    for kappa, lam in ((1.0, 0.3), (0.25, -1.2)):
        F = lambda x: ein.jacobi_field_coefficient(kappa, lam, x)
        second = (F(r + h) - 2 * F(r) + F(r - h)) / h ** 2
        np.testing.assert_allclose(second + kappa * F(r), 0, atol=1e-6)
        assert F(0.0) == 1.0
        assert (F(h) - F(-h)) / (2 * h) == pytest.approx(-lam, abs=1e-8)


# -- finiteness --------------------------------------------------------------------

@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("C", [0.3, 10 / 13, 2.0, -0.5])
def test_enumerate_H_is_finite_and_round_trips(eps, C):
    sols = ein.enumerate_H(eps, C)
    per_q = {}
    for s in sols:
        per_q[s.q] = per_q.get(s.q, 0) + 1
        h = ein.solution_to_data(s, eps, C)
        assert ein.gauss_einstein_residual(h) < 1e-10
        assert h.H == pytest.approx(s.H, abs=1e-10)
    assert all(n <= 4 for n in per_q.values())


def test_enumerate_H_contains_sphere():
    h = ein.SphereModel(R0).hypersurface()
    hits = [s for s in ein.enumerate_H(1, h.C) if abs(s.H - h.H) < 1e-8]
    assert [s.q for s in hits] == [(7, 0, 8, 0)]
    np.testing.assert_allclose(hits[0].lambdas, h.lambdas, atol=1e-10)


@pytest.mark.parametrize("eps", [1, -1])
def test_never_identically_satisfied(eps):
    for C in (-1.0, 0.0, 0.25, 1.0, 3.0):
        for q1 in range(8):
            for q3 in range(9):
                assert not ein.identically_satisfied((q1, 7 - q1, q3, 8 - q3), eps, C)


# -- the two multiplicity cases ----------------------------------------------------------

def test_case_78_values(case78):
    s6 = sp.sqrt(6)
    assert [(c.eps, c.eps_prime) for c in case78] == [(1, -1), (1, 1)]
    for c in case78:
        e = c.eps_prime
        assert sp.simplify(c.alphas["alpha1"] + e * 5 * s6 / 24) == 0
        assert sp.simplify(c.alphas["alpha3"] - e * s6 / 8) == 0
        assert ein.gauss_einstein_residual(c.hypersurface()) == 0


def test_case_78_matches_sphere(case78):
    c = next(c for c in case78 if c.eps_prime == 1)
    a1, a3 = ein.SphereModel(R0).principal
    assert float(c.alphas["alpha1"]) == pytest.approx(a1, abs=1e-12)
    assert float(c.alphas["alpha3"]) == pytest.approx(a3, abs=1e-12)


def test_case_717_values(case717):
    assert [(c.eps, c.eps_prime) for c in case717] == [(1, -1), (1, 1)]
    for c in case717:
        a1, a3, a4 = (c.alphas[k] for k in ("alpha1", "alpha3", "alpha4"))
        assert sp.simplify(a3 / a1 + sp.Rational(7, 6)) == 0
        assert sp.simplify(a4 / a1 - sp.Rational(9, 2)) == 0
        assert sp.simplify(a1 ** 2 - sp.Rational(9, 91)) == 0
        assert c.C == sp.Rational(10, 13)
        assert ein.gauss_einstein_residual(c.hypersurface()) == 0


@pytest.mark.parametrize("solver", [ein.solve_case_78, ein.solve_case_717])
def test_block_trace(solver):
    for c in solver():
        h = c.hypersurface()
        assert sum(h.jacobi) == 9 * c.eps


# -- the differentiated Gauss system ---------------------------------------------------------

def _difgauss_oracle(lam, H, gamma):
    """Generic differentiated Gauss expression, expanded term by term."""

    def expr(i, j, k):
        return ((lam[i] - lam[j]) * (lam[i] + lam[j] - 2 * lam[k] - H) * gamma(k, i, j)
                + lam[k] * (lam[j] - lam[k]) * gamma(i, j, k)
                + lam[k] * (lam[k] - lam[i]) * gamma(j, k, i))

    return expr


def _gamma_symbols():
    # <nabla_a X_b, X_c> = -<nabla_a X_c, X_b>; X, Y, Z are labelled 0, 1, 2
    x1, x2, x3 = sp.symbols("x1 x2 x3")
    table = {(2, 0, 1): x1, (0, 1, 2): x2, (1, 2, 0): x3}

    def gamma(a, b, c):
        if (a, b, c) in table:
            return table[(a, b, c)]
        if (a, c, b) in table:
            return -table[(a, c, b)]
        return sp.Symbol(f"g{a}{b}{c}")

    return (x1, x2, x3), gamma


def test_difgauss_system_matches_oracle_symbolically():
    a1, a3, a4, H = sp.symbols("alpha1 alpha3 alpha4 H")
    unknowns, gamma = _gamma_symbols()
    expr = _difgauss_oracle((a1, a3, a4), H, gamma)
    eqs = [expr(0, 1, 2), expr(2, 0, 1), expr(1, 2, 0)]
    A, rhs = sp.linear_eq_to_matrix(eqs, unknowns)
    assert rhs == sp.zeros(3, 1)
    got = sp.Matrix(ein.difgauss_system(a1, a3, a4, H))
    assert sp.simplify(A - got) == sp.zeros(3, 3)


def test_difgauss_system_matches_printed(case717):
    c = next(c for c in case717 if c.eps_prime == 1)
    system = ein.difgauss_system(c.alphas["alpha1"], c.alphas["alpha3"], c.alphas["alpha4"], c.H)
    rep = ein.q_matrix_report(system)
    assert rep.system_matches_printed
    assert rep.nonzero


def test_q_determinant_recomputed():
    rep = ein.q_matrix_report()
    M = sp.Matrix(ein.PRINTED_Q_INT)
    assert rep.det_integer == M.det()
    assert rep.det_entry_scale == Fraction(int(M.det()), 364 ** 3) == Fraction(-39015, 16562)
    # the printed value differs by a digit transposition
    assert rep.det_printed_value == Fraction(-39051, 16562)
    assert not rep.matches_printed
    assert rep.system_matches_printed is None


def test_alphalpha_reduction():
    li, lj, H, g, x2 = sp.symbols("li lj H g x2")
    row = ein.difgauss_row(li, lj, lj, H)
    # lambda_k = lambda_j forces <nabla_k X_i, X_j> = <nabla_j X_k, X_i> = -g, g = <nabla_k X_j, X_i>
    value = row[0] * (-g) + row[1] * x2 + row[2] * (-g)
    assert sp.expand(value + (li - lj) * (li - 2 * lj - H) * g) == 0


def test_difgauss_rejects_repeated_values():
    with pytest.raises(PreconditionError):
        ein.difgauss_system(1, 1, 2, 0)
    s = sp.sqrt(2)
    with pytest.raises(PreconditionError):
        ein.difgauss_system(s, 2 * s / 2, 3, 0)


def test_codazzi_rhs_antisymmetry():
    lam = sp.symbols("l0:4")
    conn = lambda a, b, c: sp.Symbol(f"G{a}{b}{c}") - sp.Symbol(f"G{a}{c}{b}")
    for i, j, k in ((0, 1, 2), (1, 3, 0), (2, 0, 3)):
        assert sp.expand(ein.codazzi_rhs(lam, conn, i, j, k) + ein.codazzi_rhs(lam, conn, k, j, i)) == 0


# -- small helpers ----------------------------------------------------------------------

@pytest.mark.parametrize("x, want", [
    (ein.COT_R0, (Fraction(0), 6, Fraction(-5, 24))),
    (sp.Rational(3, 7), (Fraction(3, 7), 1, Fraction(0))),
    (1 + sp.sqrt(91) / 26, (Fraction(1), 91, Fraction(1, 26))),
])
def test_algebraic_triple(x, want):
    assert ein.algebraic_triple(x) == want


def test_algebraic_triple_rejects_two_radicals():
    with pytest.raises(ValueError):
        ein.algebraic_triple(sp.sqrt(2) + sp.sqrt(3))


def test_block_eigenvalues():
    assert ein.block_eigenvalues(-1, exact=True) == (-1, sp.Rational(-1, 4))
    assert ein.block_eigenvalues(1) == (1.0, 0.25)
    with pytest.raises(ValueError):
        ein.block_eigenvalues(0)


def test_hypersurface_needs_fifteen():
    with pytest.raises(DimensionMismatchError):
        ein.HypersurfaceData(1, (0.0,) * 14, (1.0,) * 14, 0.0)

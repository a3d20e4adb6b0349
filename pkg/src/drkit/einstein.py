"""Einstein hypersurfaces of the Cayley plane: principal-curvature algebra.

The normal Jacobi operator R_xi has eigenvalue eps on a 7-dimensional block
and eps/4 on an 8-dimensional block of the tangent space.  An Einstein
hypersurface with principal curvatures lambda_i, mean curvature H = sum lambda_i
and Einstein-constant difference C satisfies

    -lambda_i^2 + H lambda_i + C = eps      (i = 1..7)
    -lambda_i^2 + H lambda_i + C = eps / 4  (i = 8..15).

Exact values are sympy expressions in Q(sqrt d); floats are used only for the
radius scan and the finite enumeration.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
import sympy as sp
from scipy.optimize import bisect

from .errors import DimensionMismatchError, PreconditionError
from .exact import det as exact_det

log = logging.getLogger(__name__)

N_AMBIENT = 16
BLOCKS = (7, 8)


def block_eigenvalues(eps: int, exact: bool = False) -> tuple:
    """Jacobi eigenvalues attached to the two blocks, (eps, eps/4)."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if exact:
        return sp.Integer(eps), sp.Rational(eps, 4)
    return float(eps), eps / 4


@dataclass(frozen=True)
class HypersurfaceData:
    """Principal curvatures, their Jacobi eigenvalues, and the constant C.

    ``jacobi[i]`` is the eigenvalue of R_xi on the i-th principal direction.
    """

    eps: int
    lambdas: tuple
    jacobi: tuple
    C: object
    q: tuple = ()

    def __post_init__(self):
        if len(self.lambdas) != N_AMBIENT - 1 or len(self.jacobi) != N_AMBIENT - 1:
            raise DimensionMismatchError("a hypersurface of the Cayley plane has 15 principal curvatures")

    @property
    def H(self):
        return sum(self.lambdas[1:], self.lambdas[0])

    @classmethod
    def from_blocks(cls, eps, values: Sequence, mults: Sequence[int], jac: Sequence, C=None, q=()):
        lambdas, jacobi = [], []
        for v, k, j in zip(values, mults, jac):
            lambdas += [v] * k
            jacobi += [j] * k
        if C is None:  # read C off the first block
            H = sum(lambdas[1:], lambdas[0])
            C = jacobi[0] + lambdas[0] ** 2 - H * lambdas[0]
        return cls(eps, tuple(lambdas), tuple(jacobi), C, tuple(q))


def _is_symbolic(x) -> bool:
    return isinstance(x, sp.Basic)


def gauss_residuals(h: HypersurfaceData) -> list:
    H = h.H
    return [-lam ** 2 + H * lam + h.C - j for lam, j in zip(h.lambdas, h.jacobi)]


def gauss_einstein_residual(h: HypersurfaceData):
    """max_i |-lambda_i^2 + H lambda_i + C - (Jacobi eigenvalue)|; exact for sympy input."""
    res = gauss_residuals(h)
    if any(_is_symbolic(r) for r in res):
        return max(sp.Abs(sp.radsimp(sp.expand(r))) for r in res)
    return float(max(abs(r) for r in res))


# -- geodesic spheres ------------------------------------------------------------

@dataclass(frozen=True)
class SphereModel:
    """Geodesic sphere of radius r in OP^2: cot r on the eigenvalue-1 block (x7),
    cot(r/2)/2 on the eigenvalue-1/4 block (x8)."""

    r: float

    def __post_init__(self):
        if not 0 < self.r < np.pi:
            raise ValueError("radius must lie in (0, pi)")

    @property
    def principal(self) -> tuple[float, float]:
        return 1 / np.tan(self.r), 0.5 / np.tan(self.r / 2)

    def hypersurface(self) -> HypersurfaceData:
        a, b = self.principal
        return HypersurfaceData.from_blocks(1, (a, b), BLOCKS, block_eigenvalues(1))


def sphere_einstein_equation(r: float) -> float:
    """Difference of the two Gauss expressions; zero iff the sphere is Einstein."""
    c, h2 = 1 / np.tan(r), 1 / np.tan(r / 2)
    H = 7 * c + 4 * h2
    return (1 + c * c - H * c) - (0.25 + 0.25 * h2 * h2 - H * 0.5 * h2)


def sphere_einstein_radius(grid: int = 4001, xtol: float = 1e-15) -> float:
    """cot r0 for the unique Einstein geodesic sphere, by sign-change scan plus bisection."""
    rs = np.linspace(0, np.pi, grid)[1:-1]
    f = np.array([sphere_einstein_equation(r) for r in rs])
    roots = []
    for i in np.flatnonzero(np.sign(f[:-1]) != np.sign(f[1:])):
        r = bisect(sphere_einstein_equation, rs[i], rs[i + 1], xtol=xtol, maxiter=200)
        roots.append(r)
    if len(roots) != 1:
        raise PreconditionError(f"expected a single Einstein radius, found {len(roots)}")
    return 1 / np.tan(roots[0])


COT_R0 = -5 * sp.sqrt(6) / 24


def jacobi_field_coefficient(kappa: float, lam: float, r):
    """F(r) with F'' + kappa F = 0, F(0) = 1, F'(0) = -lam."""
    k = np.sqrt(kappa)
    return np.cos(k * r) - lam / k * np.sin(k * r)


@dataclass
class FocalScan:
    radius: float
    cot: float
    coefficients: tuple
    rank: int


def jacobi_focal_scan(grid: np.ndarray, lambdas=None, tol: float = 1e-12) -> FocalScan:
    """Common zero of the Jacobi-field coefficients of both blocks on ``grid``.

    ``lambdas`` defaults to the principal curvatures of the Einstein sphere.
    The rank of the normal exponential differential at a radius is the number
    of directions whose coefficient is nonzero.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.min() <= 0 or grid.max() >= np.pi:
        raise ValueError("grid must lie inside (0, pi)")
    if lambdas is None:
        a1 = float(COT_R0)
        lambdas = (a1, float(sp.sqrt(6) / 8))
    kappas = (1.0, 0.25)
    f1 = lambda r: jacobi_field_coefficient(kappas[0], lambdas[0], r)
    f2 = lambda r: jacobi_field_coefficient(kappas[1], lambdas[1], r)
    v = f1(grid)
    for i in np.flatnonzero(np.sign(v[:-1]) != np.sign(v[1:])):
        r = bisect(f1, grid[i], grid[i + 1], xtol=1e-15, maxiter=200)
        c = (float(f1(r)), float(f2(r)))
        if abs(c[1]) <= 1e-9:
            rank = BLOCKS[0] * (abs(c[0]) > tol) + BLOCKS[1] * (abs(c[1]) > tol)
            return FocalScan(r, 1 / np.tan(r), c, int(rank))
    raise PreconditionError("no common zero of the Jacobi coefficients on the grid")


def normal_exp_rank(r: float, lambdas=None, tol: float = 1e-12) -> int:
    if lambdas is None:
        lambdas = (float(COT_R0), float(sp.sqrt(6) / 8))
    c1 = jacobi_field_coefficient(1.0, lambdas[0], r)
    c2 = jacobi_field_coefficient(0.25, lambdas[1], r)
    return int(BLOCKS[0] * (abs(c1) > tol) + BLOCKS[1] * (abs(c2) > tol))


# -- finiteness of the principal-curvature solutions -----------------------------------

@dataclass
class HSolution:
    H: float
    q: tuple
    lambdas: tuple
    residual: float


def _biquadratic(a: int, b: int, P: float, Q: float) -> np.ndarray:
    """Coefficients (in x = H^2) after clearing the radicals of
    13H = a sqrt(H^2 + P) + b sqrt(H^2 + Q)."""
    k = 169 - a * a - b * b
    m = a * a * P + b * b * Q
    ab2 = 4 * a * a * b * b
    return np.array([k * k - ab2, -2 * k * m - ab2 * (P + Q), m * m - ab2 * P * Q], dtype=float)


def identically_satisfied(q: tuple, eps: int, C: float) -> bool:
    """Whether the cleared equation holds for every H (never, for admissible q)."""
    q1, q2, q3, q4 = q
    coeffs = _biquadratic(q2 - q1, q4 - q3, 4 * C - 4 * eps, 4 * C - eps)
    return bool(np.all(coeffs == 0))


def enumerate_H(eps: int, C: float, tol: float = 1e-9) -> list[HSolution]:
    """All (H, q) with 13H = (q2-q1) sqrt(H^2+4C-4eps) + (q4-q3) sqrt(H^2+4C-eps).

    Roots of the cleared biquadratic that fail back-substitution are spurious
    (wrong radical sign) and are dropped.
    """
    P, Q = 4 * C - 4 * eps, 4 * C - eps
    out = []
    for q1, q3 in product(range(8), range(9)):
        q = (q1, 7 - q1, q3, 8 - q3)
        a, b = q[1] - q[0], q[3] - q[2]
        coeffs = _biquadratic(a, b, P, Q)
        if np.all(coeffs == 0):
            raise PreconditionError(f"equation is identically satisfied for q={q}")
        xs = np.roots(np.trim_zeros(coeffs, "f")) if np.any(coeffs[:2] != 0) else np.array([])
        for x in xs:
            if abs(x.imag) > 1e-9 * max(1.0, abs(x)):
                continue
            x = float(x.real)
            if x < -tol:
                continue
            x = max(x, 0.0)
            for H in {np.sqrt(x), -np.sqrt(x)}:
                if x + P < -tol or x + Q < -tol:
                    continue
                r1, r2 = np.sqrt(max(x + P, 0)), np.sqrt(max(x + Q, 0))
                res = abs(13 * H - a * r1 - b * r2)
                if res > tol * max(1.0, abs(H)):
                    log.debug("dropping spurious root H=%r for q=%r (residual %.3g)", H, q, res)
                    continue
                lambdas = ((H + r1) / 2,) * q[0] + ((H - r1) / 2,) * q[1] + \
                          ((H + r2) / 2,) * q[2] + ((H - r2) / 2,) * q[3]
                out.append(HSolution(float(H), q, lambdas, float(res)))
    out.sort(key=lambda s: (s.q, s.H))
    return out


def solution_to_data(sol: HSolution, eps: int, C: float) -> HypersurfaceData:
    jac = block_eigenvalues(eps)
    jacobi = (jac[0],) * 7 + (jac[1],) * 8
    return HypersurfaceData(eps, sol.lambdas, jacobi, C, sol.q)


# -- the two admissible multiplicity cases -------------------------------------------

@dataclass
class CaseSolution:
    """One real solution: eps, the orientation sign eps', block values, H and C."""

    case: str
    eps: int
    eps_prime: int
    alphas: dict
    H: sp.Expr
    C: sp.Expr
    mults: dict = field(default_factory=dict)

    def hypersurface(self) -> HypersurfaceData:
        jac = block_eigenvalues(self.eps, exact=True)
        names = list(self.mults)
        values = [self.alphas[k] for k in names]
        jacs = [jac[0] if k in ("alpha1", "alpha2") else jac[1] for k in names]
        return HypersurfaceData.from_blocks(self.eps, values, [self.mults[k] for k in names], jacs, C=self.C)


def _real_solutions(eqs, unknowns):
    sols = sp.solve(eqs, unknowns, dict=True)
    return [s for s in sols if all(sp.simplify(sp.im(s[u])) == 0 for u in unknowns)]


def solve_case_78() -> list[CaseSolution]:
    """alpha1 = 2 alpha3 + H, H = 7 alpha1 + 8 alpha3 and the Gauss pair, both signs of eps."""
    a1, a3, H, C = sp.symbols("alpha1 alpha3 H C")
    out = []
    for eps in (1, -1):
        e1, e4 = block_eigenvalues(eps, exact=True)
        eqs = [a1 - 2 * a3 - H, H - 7 * a1 - 8 * a3,
               -a1 ** 2 + H * a1 + C - e1, -a3 ** 2 + H * a3 + C - e4]
        for s in _real_solutions(eqs, [a1, a3, H, C]):
            sign = 1 if s[a3] > 0 else -1
            out.append(CaseSolution("78", eps, sign, {"alpha1": sp.radsimp(s[a1]), "alpha3": sp.radsimp(s[a3])},
                                    sp.radsimp(s[H]), sp.radsimp(s[C]), {"alpha1": 7, "alpha3": 8}))
    out.sort(key=lambda c: (c.eps, c.eps_prime))
    return out


def solve_case_717() -> list[CaseSolution]:
    """alpha1 = 2 alpha3 + H, H = 7 alpha1 + 7 alpha3 + alpha4, Gauss triple, alpha3 != alpha4."""
    a1, a3, a4, H, C = sp.symbols("alpha1 alpha3 alpha4 H C")
    out = []
    for eps in (1, -1):
        e1, e4 = block_eigenvalues(eps, exact=True)
        eqs = [a1 - 2 * a3 - H, H - 7 * a1 - 7 * a3 - a4,
               -a1 ** 2 + H * a1 + C - e1, -a3 ** 2 + H * a3 + C - e4, -a4 ** 2 + H * a4 + C - e4]
        for s in _real_solutions(eqs, [a1, a3, a4, H, C]):
            if sp.simplify(s[a3] - s[a4]) == 0:
                continue
            sign = 1 if s[a3] > 0 else -1
            alphas = {"alpha1": sp.radsimp(s[a1]), "alpha3": sp.radsimp(s[a3]), "alpha4": sp.radsimp(s[a4])}
            out.append(CaseSolution("717", eps, sign, alphas, sp.radsimp(s[H]), sp.radsimp(s[C]),
                                    {"alpha1": 7, "alpha3": 7, "alpha4": 1}))
    out.sort(key=lambda c: (c.eps, c.eps_prime))
    return out


# -- differentiated Gauss equations and the printed 3x3 matrix ---------------------------

def difgauss_row(li, lj, lk, H) -> tuple:
    """Coefficients of (<nabla_k X_i, X_j>, <nabla_i X_j, X_k>, <nabla_j X_k, X_i>)."""
    return ((li - lj) * (li + lj - 2 * lk - H), lk * (lj - lk), lk * (lk - li))


def difgauss_system(alpha1, alpha3, alpha4, H) -> list[list]:
    """Rows for the unknowns (<nabla_Z X, Y>, <nabla_X Y, Z>, <nabla_Y Z, X>).

    X, Y, Z are principal vectors for alpha1, alpha3, alpha4; the rows come from
    the cyclic substitutions (X, Y, Z), (Z, X, Y), (Y, Z, X).
    """
    vals = (alpha1, alpha3, alpha4)
    for i in range(3):
        for j in range(i + 1, 3):
            d = vals[i] - vals[j]
            if (sp.simplify(d) == 0) if _is_symbolic(d) else d == 0:
                raise PreconditionError("block values must be pairwise distinct")
    # substitution (X, Y, Z): terms are x1, x2, x3
    r1 = difgauss_row(alpha1, alpha3, alpha4, H)
    # (Z, X, Y): <nabla_Y Z, X> = x3, <nabla_Z X, Y> = x1, <nabla_X Y, Z> = x2
    t = difgauss_row(alpha4, alpha1, alpha3, H)
    r2 = (t[1], t[2], t[0])
    # (Y, Z, X): <nabla_X Y, Z> = x2, <nabla_Y Z, X> = x3, <nabla_Z X, Y> = x1
    t = difgauss_row(alpha3, alpha4, alpha1, H)
    r3 = (t[2], t[0], t[1])
    return [list(r1), list(r2), list(r3)]


PRINTED_Q_INT = ((-75 * 13, -27 * 34, 27 * 21),
                 (6 * 13, 12 * 34, 6 * 21),
                 (-7 * 13, 7 * 34, 27 * 21))
PRINTED_Q_PREFACTOR = Fraction(1, (4 * 91) ** 3)
PRINTED_DET = Fraction(-39051, 16562)
# the printed rows list the (X,Y,Z), (Y,Z,X), (Z,X,Y) substitutions in that order
PRINTED_ROW_ORDER = (0, 2, 1)


@dataclass
class QReport:
    det_integer: int
    det_printed_prefactor: Fraction
    det_entry_scale: Fraction
    det_printed_value: Fraction
    matches_printed: bool
    nonzero: bool
    system_matches_printed: bool | None = None


def q_matrix_report(system=None) -> QReport:
    """Exact determinants of the printed 3x3 matrix under both readings of its scale.

    With ``system`` (the output of :func:`difgauss_system` for the case-717
    values) also checks it equals the printed integer matrix times 1/364, up
    to the printed row order.
    """
    M = np.array(PRINTED_Q_INT, dtype=object)
    d_int = int(exact_det(M))
    d_pref = d_int * PRINTED_Q_PREFACTOR ** 3
    d_scale = Fraction(d_int, 364 ** 3)
    matches = None
    if system is not None:
        matches = all(sp.simplify(sympify_exact(system[PRINTED_ROW_ORDER[i]][j]) - sp.Rational(PRINTED_Q_INT[i][j], 364)) == 0
                      for i in range(3) for j in range(3))
    return QReport(d_int, d_pref, d_scale, PRINTED_DET, d_scale == PRINTED_DET, d_int != 0, matches)


# -- symbolic helpers ---------------------------------------------------------------

def codazzi_rhs(lam, conn, i, j, k):
    """(lam_i - lam_j)<nabla_k X_i, X_j> - (lam_k - lam_j)<nabla_i X_k, X_j>.

    ``conn(a, b, c)`` returns the symbol for <nabla_a X_b, X_c>.
    """
    return (lam[i] - lam[j]) * conn(k, i, j) - (lam[k] - lam[j]) * conn(i, k, j)


def sympify_exact(x) -> sp.Expr:
    """Exact sympy form; only float-bearing input goes through nsimplify."""
    if isinstance(x, Fraction):
        x = sp.Rational(x.numerator, x.denominator)
    x = sp.sympify(x)
    if x.atoms(sp.Float):
        x = sp.nsimplify(x)
    return sp.radsimp(x)


def algebraic_triple(x) -> tuple[Fraction, int, Fraction]:
    """Write x in Q(sqrt d) as (a, d, b) meaning a + b sqrt(d); d = 1 when rational."""
    x = sympify_exact(x)
    roots = sorted({p.base for p in x.atoms(sp.Pow) if p.exp == sp.Rational(1, 2) and p.base.is_Integer})
    if not roots:
        q = sp.Rational(x)
        return Fraction(int(q.p), int(q.q)), 1, Fraction(0)
    if len(roots) > 1:
        raise ValueError(f"{x} involves more than one square root")
    d = roots[0]
    r = sp.sqrt(d)
    conj = x.subs(r, -r)
    a = sp.Rational(sp.simplify((x + conj) / 2))
    b = sp.Rational(sp.simplify((x - conj) / (2 * r)))
    return Fraction(int(a.p), int(a.q)), int(d), Fraction(int(b.p), int(b.q))

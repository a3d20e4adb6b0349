"""Totally geodesic subspace tests in Damek-Ricci spaces and the Cayley plane.

A :class:`Subspace` is either float (orthonormal rows, deterministic
Gram-Schmidt) or exact (independent rational spanning rows).  Membership is a
projection residual with tolerance in float mode and an exact Gram solve in
exact mode, where the residuals returned are *squared* norms as Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np

from . import damek_ricci as dr
from .clifford import build_irreducible
from .damek_ricci import DRSpace
from .errors import ExcludedCaseError, InconsistentCaseError, PreconditionError
from .exact import (as_rows, const, gram_schmidt, independent_rows, is_exact, nullspace,
                    orth_residual, rank, residual_sq, solve, sqrt_exact, to_exact, zeros)
from .octonion import CayleyPlane

MEMBERSHIP_TOL = 1e-10


class Subspace:
    """Linear subspace of the tangent space of ``ambient`` (a DRSpace or CayleyPlane)."""

    def __init__(self, ambient, vectors, exact: bool | None = None, tol: float = MEMBERSHIP_TOL):
        rows = as_rows(vectors)
        if exact is None:
            exact = is_exact(rows)
        if rows.shape[1] != ambient.dim:
            raise ValueError(f"vectors must have length {ambient.dim}")
        self.ambient = ambient
        self.exact = exact
        self.tol = tol
        if exact:
            self.basis = independent_rows(to_exact(rows) if not is_exact(rows) else rows)
        else:
            self.basis = gram_schmidt(rows.astype(float), tol)
        if len(self.basis) == 0:
            raise ValueError("subspace must have dimension >= 1")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient!r}, exact={self.exact})"

    def residual(self, w):
        """Off-subspace part of w: norm (float) or squared norm (exact)."""
        if self.exact:
            return residual_sq(self.basis, w)
        return orth_residual(self.basis, np.asarray(w, dtype=float))

    def contains(self, w) -> bool:
        r = self.residual(w)
        if self.exact:
            return r == 0
        return r <= self.tol * max(1.0, float(np.linalg.norm(np.asarray(w, dtype=float))))

    def to_float(self) -> "Subspace":
        return Subspace(self.ambient, self.basis.astype(float), exact=False, tol=self.tol)


# -- ambient adapters ------------------------------------------------------------

def _jacobi(ambient):
    if isinstance(ambient, DRSpace):
        return lambda T, W: dr.jacobi_apply(ambient, T, W)
    if isinstance(ambient, CayleyPlane):
        return ambient.jacobi_apply
    raise TypeError(f"unsupported ambient {ambient!r}")


def _nabla3(ambient):
    if isinstance(ambient, DRSpace):
        return lambda T1, T2, T3, W: dr.nabla_polarized(ambient, T1, T2, T3, W)
    if isinstance(ambient, CayleyPlane):  # symmetric space
        return lambda T1, T2, T3, W: 0 * np.asarray(W)
    raise TypeError(f"unsupported ambient {ambient!r}")


def _worst(values, exact):
    values = list(values)
    if not values:
        return Fraction(0) if exact else 0.0
    return max(values)


def r_invariance_residual(L: Subspace):
    """Largest off-L part of R_{Ti,Tj} Tk over basis vectors (polarized Jacobi operators).

    L is invariant under R_T for every T in L exactly when all of these vanish,
    which is the same as R(L, L)L lying in L.
    """
    jac = _jacobi(L.ambient)
    B = L.basis
    half = const(1, 2, L.exact)
    vals = []
    for i, j in combinations_with_replacement(range(L.dim), 2):
        for k in range(L.dim):
            if i == j:
                w = jac(B[i], B[k])
            else:
                w = half * (jac(B[i] + B[j], B[k]) - jac(B[i], B[k]) - jac(B[j], B[k]))
            vals.append(L.residual(w))
    return _worst(vals, L.exact)


def nabla_r_invariance_residual(L: Subspace):
    """Largest off-L part of the symmetrized (nabla_T R_T) over basis triples and vectors."""
    nab = _nabla3(L.ambient)
    B = L.basis
    vals = []
    for i, j, k in combinations_with_replacement(range(L.dim), 3):
        for l in range(L.dim):
            vals.append(L.residual(nab(B[i], B[j], B[k], B[l])))
    return _worst(vals, L.exact)


# -- homogeneity -----------------------------------------------------------------

@dataclass
class Certificate:
    """Outcome of a structured check: the first failing condition, if any."""

    ok: bool
    condition: str = ""
    residual: object = 0
    witness: tuple = ()
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_record(self) -> dict:
        return {"ok": self.ok, "condition": self.condition, "residual": self.residual,
                "witness": list(self.witness)}


def _projections(sp: DRSpace, L: Subspace):
    vs, zs, As = [], [], []
    for T in L.basis:
        V, Y, s = sp.split(T)
        vs.append(sp.vec(V=V) if not L.exact else sp.vec(V=V, s=Fraction(0)))
        zs.append(sp.vec(Y=Y) if not L.exact else sp.vec(Y=Y, s=Fraction(0)))
        As.append(s * sp.basis_vector(sp.dim - 1, L.exact))
    return vs, zs, As


def is_homogeneous_tg(L: Subspace) -> Certificate:
    """Well-positioned subalgebra test: L = a + v' + z', [v', v'] in z', J_{z'} v' in v'."""
    sp = L.ambient
    if not isinstance(sp, DRSpace):
        raise TypeError("homogeneity criterion applies to Damek-Ricci spaces")
    A = sp.basis_vector(sp.dim - 1, L.exact)
    r = L.residual(A)
    if not L.contains(A):
        return Certificate(False, "contains_A", r)
    vs, zs, _ = _projections(sp, L)
    for idx, (pv, pz) in enumerate(zip(vs, zs)):
        for name, p in (("v_projection", pv), ("z_projection", pz)):
            if not L.contains(p):
                return Certificate(False, "splits", L.residual(p), (idx, name))
    vrows = _span_rows(vs, L.exact)
    zrows = _span_rows(zs, L.exact)
    for i, j in combinations(range(len(vrows)), 2):
        V1, V2 = sp.split(vrows[i])[0], sp.split(vrows[j])[0]
        w = sp.vec(Y=sp.br_v(V1, V2), s=0 * V1[0])
        if not L.contains(w):
            return Certificate(False, "bracket_closed", L.residual(w), (i, j))
    for i, Zr in enumerate(zrows):
        for j, Vr in enumerate(vrows):
            w = sp.vec(V=sp.J(sp.split(Zr)[1], sp.split(Vr)[0]), s=0 * Vr[0])
            if not L.contains(w):
                return Certificate(False, "J_closed", L.residual(w), (i, j))
    return Certificate(True, "", 0, (), {"dim_v'": len(vrows), "dim_z'": len(zrows)})


def _span_rows(vectors, exact):
    nz = [v for v in vectors if np.any(v != 0)]
    if not nz:
        return []
    if exact:
        return list(independent_rows(np.array(nz, dtype=object)))
    return list(gram_schmidt(np.array(nz, dtype=float), MEMBERSHIP_TOL))


# -- (-1)-subspaces ----------------------------------------------------------------

def is_minus_one_subspace(L: Subspace, tol: float = 1e-9) -> tuple[bool, float]:
    """All basis-pair sectional curvatures equal -1; returns (verdict, worst value)."""
    if L.dim < 2:
        raise PreconditionError("need dim L >= 2")
    sp = L.ambient
    worst = -1.0
    for i, j in combinations(range(L.dim), 2):
        k = float(dr.sectional(sp, L.basis[i], L.basis[j]))
        if abs(k + 1) > abs(worst + 1):
            worst = k
    return abs(worst + 1) <= tol, worst


def minus_one_restriction_residual(L: Subspace, T) -> float:
    """|| R_T restricted to L cap T-perp + id || for a unit T in L (float)."""
    Lf = L.to_float()
    T = np.asarray(T, dtype=float)
    Q = gram_schmidt(np.vstack([T, Lf.basis]))[1:]
    M = dr.jacobi_op(L.ambient, T)
    return float(np.abs(Q @ M @ Q.T + np.eye(len(Q))).max()) if len(Q) else 0.0


# -- weak J^2 property and the z'' closure --------------------------------------------

def _z_rows(sp: DRSpace, zprime) -> np.ndarray:
    rows = as_rows(zprime)
    if rows.shape[1] == sp.dim:
        rows = rows[:, sp.z_slice]
    if rows.shape[1] != sp.m:
        raise ValueError("z' vectors must live in z")
    return rows


def _pair_vectors(sp: DRSpace, V, Z) -> list[np.ndarray]:
    # J_{Xi}J_{Xj}V + <Xi,Xj>V is the skew part; equals J_{Xi}J_{Xj}V for orthogonal pairs
    out = []
    for i, j in combinations(range(len(Z)), 2):
        out.append(sp.J(Z[i], sp.J(Z[j], V)) + (Z[i] @ Z[j]) * V)
    return out


def weak_j2_check(sp: DRSpace, V, zprime, exact: bool | None = None) -> bool:
    """J_{X1} J_{X2} V lies in J_z V + R V for all pairs from a basis of z'."""
    V = np.asarray(V)
    Z = _z_rows(sp, zprime)
    if exact is None:
        exact = is_exact(V) or is_exact(Z)
    if exact:
        V, Z = to_exact(V) if not is_exact(V) else V, to_exact(Z) if not is_exact(Z) else Z
        Z = independent_rows(Z)
    else:
        V, Z = V.astype(float), gram_schmidt(Z.astype(float))
    if not np.any(V != 0):
        raise PreconditionError("V must be nonzero")
    gens = sp.gens(exact)
    target = as_rows([V] + [g @ V for g in gens])
    for w in _pair_vectors(sp, V, Z):
        if exact:
            if residual_sq(target, w) != 0:
                return False
        elif orth_residual(gram_schmidt(target), w) > MEMBERSHIP_TOL * max(1.0, np.linalg.norm(w)):
            return False
    return True


CASES = {"i": "dim z' = dim z'' = 1, dim v' = 2",
         "ii": "dim z' in {2,3}, dim z'' = 3, dim v' = 4",
         "iii": "dim z' = 3, dim z'' = 6, dim v' = 8",
         "iv": "dim z' in 4..7, dim z'' = 7, dim v' = 8"}


def classify_dims(d: int, dz2: int, dv: int) -> str:
    """Case label from (dim z', dim z'', dim v'); ambiguous or unmatched triples raise."""
    if (d, dz2, dv) == (1, 1, 2):
        return "i"
    if d in (2, 3) and dz2 == 3 and dv == 4:
        return "ii"
    if (d, dz2, dv) == (3, 6, 8):
        return "iii"
    if 4 <= d <= 7 and dz2 == 7 and dv == 8:
        return "iv"
    raise InconsistentCaseError(f"dimension triple {(d, dz2, dv)} matches no case")


@dataclass
class ClosureResult:
    zdouble: np.ndarray       # basis rows of z'' in z coordinates
    vprime_dim: int
    case: str
    zprime_dim: int


def zdouble_closure(sp: DRSpace, V, zprime, exact: bool | None = None) -> ClosureResult:
    """z'' = z' + span{Z : J_{X1}J_{X2}V = J_Z V, X1 orthogonal to X2 in z'} and its case."""
    V = np.asarray(V)
    Z = _z_rows(sp, zprime)
    if exact is None:
        exact = is_exact(V) or is_exact(Z)
    if not weak_j2_check(sp, V, Z, exact):
        raise PreconditionError("V and z' violate the weak J^2 property")
    if exact:
        V = to_exact(V) if not is_exact(V) else V
        Z = independent_rows(to_exact(Z) if not is_exact(Z) else Z)
    else:
        V, Z = V.astype(float), gram_schmidt(Z.astype(float))
    vv = V @ V
    gens = sp.gens(exact)
    z0 = []
    for w in _pair_vectors(sp, V, Z):
        # J_Z V = w  =>  Z_l = <w, J_l V> / |V|^2
        z0.append(np.array([(w @ (g @ V)) / vv for g in gens], dtype=object if exact else float))
    rows = list(Z) + z0
    if exact:
        zdouble = independent_rows(np.array(rows, dtype=object))
    else:
        zdouble = gram_schmidt(np.array(rows, dtype=float))
    dv = _module_dim(sp, V, Z, exact)
    return ClosureResult(zdouble, dv, classify_dims(len(Z), len(zdouble), dv), len(Z))


def _module_dim(sp: DRSpace, V, Z, exact: bool) -> int:
    """dim span(V, J_{X1}...J_{Xk}V) by closing under the J_{Xi}."""
    ops = [np.tensordot(x, sp.gens(exact), axes=1) for x in Z]
    span = [V]
    frontier = [V]
    while frontier:
        new = []
        for w in frontier:
            for J in ops:
                u = J @ w
                cand = span + [u]
                if _rank(cand, exact) > len(span):
                    span.append(u)
                    new.append(u)
        frontier = new
    return len(span)


def _rank(vectors, exact):
    if exact:
        return rank(np.array(vectors, dtype=object))
    return np.linalg.matrix_rank(np.array(vectors, dtype=float), tol=MEMBERSHIP_TOL)


# -- the 15-dimensional example --------------------------------------------------------

@dataclass
class Example15:
    space: DRSpace
    L: Subspace
    V: np.ndarray
    W: np.ndarray
    J7: np.ndarray
    eps: int
    T: list


def _eigvec_pm(P: np.ndarray, eps: int) -> np.ndarray:
    """Exact eigenvector of an involution P for eigenvalue eps: e + eps P e."""
    n = P.shape[0]
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        w = e + eps * (P @ e)
        if np.any(w != 0):
            return to_exact(w)
    raise AssertionError("involution has no eigenvector for this sign")


def build_example_15d(eps: int = 1, a=1, b=0, s=1, exact: bool | None = None) -> Example15:
    """m = 6, dim v = 8 space with L = span(V + sA, s X_i + J_i V), i = 1, 2, 3.

    W is an eigenvector of J_1 J_2 J_3 with eigenvalue ``eps`` and
    V = aW + b J_7 W, J_7 = J_1 ... J_6.
    """
    if exact is None:
        exact = not any(isinstance(x, float) for x in (a, b, s))
    sp = DRSpace(build_irreducible(6))
    G = sp.rep.generators
    P = G[0] @ G[1] @ G[2]
    J7 = G[0] @ G[1] @ G[2] @ G[3] @ G[4] @ G[5]
    W = _eigvec_pm(P, eps)
    if exact:
        a, b, s = Fraction(a), Fraction(b), Fraction(s)
        V = a * W + b * (J7.astype(object) @ W)
    else:
        Wf = W.astype(float)
        V = float(a) * Wf + float(b) * (J7 @ Wf)
        s = float(s)
    if not np.any(V != 0):
        raise PreconditionError("(a, b) must not both vanish")
    Ts = [sp.vec(V=V, s=s)]
    for i in range(3):
        Y = zeros(sp.m, exact)
        Y[i] = s
        Ts.append(sp.vec(V=sp.J(_unit(sp.m, i, exact), V), Y=Y, s=0 * s))
    L = Subspace(sp, Ts, exact=exact)
    return Example15(sp, L, V, W, J7, eps, Ts)


def _unit(n, i, exact):
    e = zeros(n, exact)
    e[i] = 1
    return e


# -- eigenvector construction and the l4 block operator ---------------------------------

@dataclass
class EigenPair:
    kappa: float
    E: np.ndarray
    residual: float


def _unit_check(T):
    nt = float(np.asarray(T, dtype=float) @ np.asarray(T, dtype=float))
    if abs(nt - 1) > 1e-12:
        raise PreconditionError("T must be a unit vector")


def eigen_E(sp: DRSpace, T, X, mu: float | None = None) -> list[EigenPair]:
    """Eigenvectors of R_T built from a unit eigenvector X of K^2 (eigenvalue mu != -1).

    kappa runs over the real roots of (4k + 4)(4k + 1)^2 = 27 |V|^4 |Y|^2 (1 + mu);
    each pair carries its residual |R_T E - kappa E| / |E|.  E is returned
    unnormalized, since any multiple is an eigenvector.
    """
    T = np.asarray(T, dtype=float)
    X = np.asarray(X, dtype=float)
    _unit_check(T)
    V, Y, s = sp.split(T)
    nv2, ny = float(V @ V), float(np.linalg.norm(Y))
    if nv2 == 0 or ny == 0:
        raise PreconditionError("V and Y must be nonzero")
    if abs(X @ X - 1) > 1e-10 or abs(X @ Y) > 1e-10 * ny:
        raise PreconditionError("X must be a unit vector orthogonal to Y")
    K = dr.k_operator(sp, V, Y)
    K2X = K @ (K @ X)
    if mu is None:
        mu = float(X @ K2X)
    if np.linalg.norm(K2X - mu * X) > 1e-9:
        raise PreconditionError("X is not an eigenvector of K^2")
    if abs(mu + 1) <= 1e-12:
        raise ExcludedCaseError("mu = -1 is excluded")
    c = 27 * nv2 ** 2 * ny ** 2 * (1 + mu)
    JYV = sp.J(Y, V)
    out = []
    for u in np.roots([1.0, 3.0, 0.0, -c]):
        if abs(u.imag) > 1e-9:
            continue
        u = float(u.real)
        if abs(u + 3 * nv2) < 1e-12:
            continue  # degenerate root, no eigenvector from this construction
        E = np.zeros(sp.dim)
        E[sp.z_slice] = u * (u + 3 * nv2) * X
        E[sp.v_slice] = (3 * (u + 3 * nv2) * sp.J(X, JYV) - 3 * s * u * sp.J(X, V)
                         - 9 * nv2 * ny * sp.J(K @ X, V))
        kappa = (u - 1) / 4
        res = np.linalg.norm(dr.jacobi_apply(sp, T, E) - kappa * E) / np.linalg.norm(E)
        out.append(EigenPair(kappa, E, float(res)))
    return out


def k2_eigenpairs(sp: DRSpace, V, Y) -> list[tuple[float, np.ndarray]]:
    """Float eigenpairs (mu, X) of K^2 restricted to z cap Y-perp."""
    V, Y = np.asarray(V, dtype=float), np.asarray(Y, dtype=float)
    K = dr.k_operator(sp, V, Y)
    B = gram_schmidt(np.vstack([Y / np.linalg.norm(Y), np.eye(sp.m)]))[1:]
    w, U = np.linalg.eigh(B @ K @ K @ B.T)
    return [(float(w[i]), B.T @ U[:, i]) for i in range(len(w))]


def closed_form_Q(nv2, ny, mu) -> np.ndarray:
    """Matrix of (2/3) nabla_T R_T on l4 in the basis (J_X V, J_KX J_Y V, J_X J_Y V, J_KX V).

    Row i lists the coordinates of the image of the i-th basis vector.
    """
    exact = any(isinstance(x, Fraction) for x in (nv2, ny, mu))
    z = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    rows = [[z, z, -one, ny],
            [z, z, -mu * ny, -ny * ny],
            [-ny * ny, -ny, z, z],
            [mu * ny, -one, z, z]]
    return nv2 * np.array(rows, dtype=object if exact else float)


@dataclass
class L4Block:
    basis: list
    images: list
    Q: np.ndarray
    image_residual: object
    square_residual: object
    scalar: object


def l4_block_operator(sp: DRSpace, T, X, mu=None) -> L4Block:
    """Compare (2/3) nabla_T R_T on l4 with the closed-form block matrix.

    Exact when T and X are exact, |Y| is rational and K^2 X = mu X holds
    exactly (X need not be normalized).  ``image_residual`` is the largest
    defect of the four image identities, ``square_residual`` the largest entry
    of Q^2 - |V|^4 |Y|^2 (1 + mu) id.
    """
    T, X = np.asarray(T), np.asarray(X)
    exact = is_exact(T) and is_exact(X)
    V, Y, _ = sp.split(T)
    nv2 = V @ V
    if exact:
        ny = sqrt_exact(Y @ Y)
        if ny is None:
            raise PreconditionError("exact mode needs a rational |Y|")
        K2 = dr.k_squared(sp, V, Y)
        if mu is None:
            mu = (X @ (K2 @ X)) / (X @ X)
        if any(x != 0 for x in K2 @ X - mu * X):
            raise PreconditionError("K^2 X = mu X does not hold exactly")
        if X @ Y != 0:
            raise PreconditionError("X must be orthogonal to Y")
        mu = Fraction(mu)
    else:
        T, X, V, Y = (np.asarray(a, dtype=float) for a in (T, X, V, Y))
        nv2 = float(V @ V)
        ny = float(np.linalg.norm(Y))
        K2 = dr.k_squared(sp, V, Y)
        if mu is None:
            mu = float(X @ K2 @ X / (X @ X))
    K = dr.k_operator(sp, V, Y)
    KX = K @ X
    JYV = sp.J(Y, V)
    basis = [sp.J(X, V), sp.J(KX, JYV), sp.J(X, JYV), sp.J(KX, V)]
    two3 = const(2, 3, exact)
    images = [two3 * dr.nabla_jacobi(sp, T, sp.vec(V=b))[sp.v_slice] for b in basis]
    Q = closed_form_Q(nv2, ny, mu)
    if exact:
        defects = [max(abs(x) for x in images[i] - sum(Q[i, j] * basis[j] for j in range(4)))
                   for i in range(4)]
    else:
        defects = [float(np.abs(images[i] - sum(Q[i, j] * basis[j] for j in range(4))).max())
                   for i in range(4)]
    scalar = nv2 * nv2 * ny * ny * (1 + mu)
    D = Q @ Q - scalar * np.eye(4, dtype=np.int64)
    sq = max(abs(x) for x in D.ravel())
    return L4Block(basis, images, Q, max(defects), sq, scalar)


def exact_admissible_config(sp: DRSpace, rng: np.random.Generator):
    """Rational (T, X, mu) with rational |Y| and an exact K^2-eigenvector X in Y-perp.

    Takes the first kernel vector of K^2 on Y-perp (mu = 0) when one exists,
    otherwise returns None.
    """
    from .exact import random_rational, rational_unit_vector

    V = random_rational(rng, sp.dim_v, bound=4, den=3)
    if not any(x != 0 for x in V):
        V[0] = Fraction(1)
    r = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 4)))
    Y = r * rational_unit_vector(rng, sp.m)
    s = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4))) or Fraction(1, 2)
    T = sp.vec(V=V, Y=Y, s=s)
    K2 = dr.k_squared(sp, V, Y)
    constraint = np.vstack([K2, Y.reshape(1, -1)])
    ker = nullspace(constraint)
    if not ker:
        return None
    return T, ker[0], Fraction(0)

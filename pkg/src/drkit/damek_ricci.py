"""The solvable metric Lie algebra s = v + z + a and its curvature at the identity.

Vectors of s are stored flat in the order ``[V (dim_v), Y (m), s]`` and are
orthonormal in those coordinates.  Every routine works on float arrays and on
exact object arrays of Fractions; the dtype of the inputs decides.

Conventions: the Jacobi operator is R_T W = R(W, T) T, the sectional curvature
of span(T, W) is <R_T W, W> / |T ^ W|^2, and the full curvature
R(X, Y)Z = 2/3 (R_{Y,Z} X - R_{X,Z} Y) is recovered from the symmetric
polarization R_{Y,Z} = (R_{Y+Z} - R_Y - R_Z) / 2 of the Jacobi operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .clifford import CliffordRep, build_module
from .errors import DegeneratePlaneError, DimensionMismatchError, PreconditionError
from .exact import const, is_exact, sqrt_exact, unit_vectors, zeros


class DRSpace:
    """Damek-Ricci algebra built from a Clifford module."""

    def __init__(self, rep: CliffordRep):
        self.rep = rep
        self.m = rep.m
        self.dim_v = rep.dim_v
        self.dim = 1 + self.dim_v + self.m
        self.gens_exact = rep.generators.astype(object)
        self.gens_float = rep.float_generators

    @classmethod
    def from_multiplicities(cls, m: int, mult_plus: int = 1, mult_minus: int = 0) -> "DRSpace":
        return cls(build_module(m, mult_plus, mult_minus))

    def __repr__(self) -> str:
        return f"DRSpace(m={self.m}, dim_v={self.dim_v}, dim={self.dim})"

    # -- coordinates -------------------------------------------------------
    @property
    def v_slice(self) -> slice:
        return slice(0, self.dim_v)

    @property
    def z_slice(self) -> slice:
        return slice(self.dim_v, self.dim_v + self.m)

    def vec(self, V=None, Y=None, s=0):
        """Flat vector V + Y + sA; exact if any part is exact."""
        parts = [V, Y, np.asarray([s])]
        exact = any(is_exact(np.asarray(p)) or isinstance(p, Fraction) for p in parts if p is not None)
        if isinstance(s, Fraction):
            exact = True
        out = zeros(self.dim, exact)
        if V is not None:
            if len(V) != self.dim_v:
                raise DimensionMismatchError(f"V must have length {self.dim_v}")
            out[self.v_slice] = V
        if Y is not None:
            if len(Y) != self.m:
                raise DimensionMismatchError(f"Y must have length {self.m}")
            out[self.z_slice] = Y
        out[-1] = s
        return out

    def split(self, T):
        T = self._check(T)
        return T[self.v_slice], T[self.z_slice], T[-1]

    def basis_vector(self, i: int, exact: bool = False) -> np.ndarray:
        e = zeros(self.dim, exact)
        e[i] = 1
        return e

    @property
    def A(self) -> np.ndarray:
        return self.basis_vector(self.dim - 1)

    def _check(self, T) -> np.ndarray:
        if isinstance(T, TangentVec):
            T = T.flat(self)
        T = np.asarray(T)
        if T.shape != (self.dim,):
            raise DimensionMismatchError(f"expected a vector of length {self.dim}, got shape {T.shape}")
        return T

    def gens(self, exact: bool) -> np.ndarray:
        return self.gens_exact if exact else self.gens_float

    def J(self, Z, W) -> np.ndarray:
        """J_Z W for Z in z and W in v."""
        exact = is_exact(np.asarray(Z)) or is_exact(np.asarray(W))
        return np.tensordot(np.asarray(Z), self.gens(exact), axes=1) @ np.asarray(W)

    def br_v(self, U, V) -> np.ndarray:
        """[U, V] in z for U, V in v: <[U, V], Z> = <J_Z U, V>."""
        exact = is_exact(np.asarray(U)) or is_exact(np.asarray(V))
        return np.tensordot(self.gens(exact), np.asarray(U), axes=([2], [0])) @ np.asarray(V)


@dataclass(frozen=True)
class TangentVec:
    """T = V + Y + sA in component form."""

    V: np.ndarray
    Y: np.ndarray
    s: object = 0

    def flat(self, sp: DRSpace) -> np.ndarray:
        return sp.vec(self.V, self.Y, self.s)

    @classmethod
    def from_flat(cls, sp: DRSpace, T) -> "TangentVec":
        V, Y, s = sp.split(T)
        return cls(V.copy(), Y.copy(), s)

    def norm2(self):
        return self.V @ self.V + self.Y @ self.Y + self.s * self.s


def _exact(*arrays) -> bool:
    return any(is_exact(a) for a in arrays)


def bracket(sp: DRSpace, T1, T2) -> np.ndarray:
    """Lie bracket [T1, T2]: [V1, V2] in z plus the derivation action of A."""
    V1, Y1, s1 = sp.split(T1)
    V2, Y2, s2 = sp.split(T2)
    half = const(1, 2, _exact(np.asarray(T1), np.asarray(T2)))
    out = sp.vec(s1 * half * V2 - s2 * half * V1, sp.br_v(V1, V2) + s1 * Y2 - s2 * Y1, 0 * s1)
    return out


def jacobi_apply(sp: DRSpace, T1, T2) -> np.ndarray:
    """R_{T1} T2 evaluated term by term (exact on exact input)."""
    T1, T2 = sp._check(T1), sp._check(T2)
    exact = _exact(T1, T2)
    q, h = const(3, 4, exact), const(1, 4, exact)
    V, Y, s = sp.split(T1)
    U, X, r = sp.split(T2)
    n1 = T1 @ T1
    ip = T1 @ T2
    JYV = sp.J(Y, V)
    gap = n1 - q * (V @ V)
    v = (q * sp.J(X, JYV) + q * sp.J(sp.br_v(U, V), V) + q * r * JYV - q * s * sp.J(X, V)
         - h * n1 * U + (q * (X @ Y) + h * ip) * V)
    z = -q * sp.br_v(U, JYV) + q * s * sp.br_v(U, V) - gap * X + ip * Y
    a = q * (U @ JYV) - r * gap + s * (ip - q * (U @ V))
    return np.concatenate([v, z, np.array([a], dtype=v.dtype)])


def jacobi_op(sp: DRSpace, T) -> np.ndarray:
    """Matrix of R_T (columns are images of basis vectors)."""
    T = sp._check(T)
    if is_exact(T):
        E = [sp.basis_vector(i, True) for i in range(sp.dim)]
        return np.array([jacobi_apply(sp, T, e) for e in E], dtype=object).T
    return kernels.jacobi_matrix(sp.gens_float, T.astype(float))


def jacobi_bilinear(sp: DRSpace, T1, T2, W) -> np.ndarray:
    """Symmetric polarization R_{T1,T2} W = (R_{T1+T2} - R_{T1} - R_{T2}) W / 2."""
    T1, T2 = sp._check(T1), sp._check(T2)
    half = const(1, 2, _exact(T1, T2, np.asarray(W)))
    return half * (jacobi_apply(sp, T1 + T2, W) - jacobi_apply(sp, T1, W) - jacobi_apply(sp, T2, W))


def curvature(sp: DRSpace, X, Y, Z) -> np.ndarray:
    """R(X, Y)Z from Jacobi operators alone."""
    t = const(2, 3, _exact(*(np.asarray(a) for a in (X, Y, Z))))
    return t * (jacobi_bilinear(sp, Y, Z, X) - jacobi_bilinear(sp, X, Z, Y))


def nabla_jacobi(sp: DRSpace, T1, T2) -> np.ndarray:
    """(nabla_{T1} R_{T1}) T2; only the v-part of T2 enters and the result lies in v."""
    T1, T2 = sp._check(T1), sp._check(T2)
    exact = _exact(T1, T2)
    V, Y, _ = sp.split(T1)
    U = sp.split(T2)[0]
    JYV = sp.J(Y, V)
    out = zeros(sp.dim, exact)
    out[sp.v_slice] = const(3, 2, exact) * (
        sp.J(sp.br_v(U, V), JYV) + sp.J(sp.br_v(U, JYV), V) - (U @ V) * JYV - (U @ JYV) * V)
    return out


def nabla_jacobi_op(sp: DRSpace, T) -> np.ndarray:
    """Matrix of (nabla_T R_T); symmetric, supported on v x v."""
    T = sp._check(T)
    exact = is_exact(T)
    V, Y, _ = sp.split(T)
    G = sp.gens(exact)
    JYV = sp.J(Y, V)
    MV = np.array([g @ V for g in G]).T
    MW = np.array([g @ JYV for g in G]).T
    block = const(-3, 2, exact) * (MW @ MV.T + MV @ MW.T + np.outer(JYV, V) + np.outer(V, JYV))
    out = zeros((sp.dim, sp.dim), exact)
    out[sp.v_slice, sp.v_slice] = block
    return out


def nabla_polarized(sp: DRSpace, T1, T2, T3, W) -> np.ndarray:
    """Fully symmetric trilinear form F(T1, T2, T3) W with F(T, T, T) = (nabla_T R_T)."""
    f = lambda T: nabla_jacobi(sp, T, W)
    exact = _exact(*(sp._check(t) for t in (T1, T2, T3)), np.asarray(W))
    total = (f(T1 + T2 + T3) - f(T1 + T2) - f(T1 + T3) - f(T2 + T3) + f(T1) + f(T2) + f(T3))
    return const(1, 6, exact) * total


def sectional(sp: DRSpace, T1, T2) -> float:
    """Sectional curvature of span(T1, T2), any pair of independent vectors."""
    T1, T2 = sp._check(T1), sp._check(T2)
    gram = (T1 @ T1) * (T2 @ T2) - (T1 @ T2) ** 2
    scale = max(float(T1 @ T1) * float(T2 @ T2), 1e-300)
    if gram == 0 or (not _exact(T1, T2) and gram <= 1e-14 * scale):
        raise DegeneratePlaneError("vectors are linearly dependent")
    k = (jacobi_apply(sp, T1, T2) @ T2) / gram
    return k


def sectional_closed_form(sp: DRSpace, T1, T2):
    """Closed form for an orthonormal pair with T2 = U + X (no A-component)."""
    V, Y, s = sp.split(T1)
    U, X, r = sp.split(T2)
    if r != 0:
        raise PreconditionError("second vector must have no A-component")
    exact = _exact(sp._check(T1), sp._check(T2))
    q, h = const(3, 4, exact), const(1, 4, exact)
    w = s * X - sp.br_v(U, V)
    return (-q * (w @ w) - q * (X @ Y) ** 2
            - h * (3 * (X @ X) * (Y @ Y) + 6 * (sp.J(X, U) @ sp.J(Y, V)) + 1))


def einstein_c1(sp: DRSpace):
    """Tr R_T / |T|^2 = -(dim_v/4 + m)."""
    return -Fraction(sp.dim_v, 4) - sp.m


# -- the K operator -----------------------------------------------------------

def k_numerator(sp: DRSpace, V, Y) -> np.ndarray:
    """Matrix N on z with columns [V, J_{e_l} J_Y V]; K = N / (|V|^2 |Y|)."""
    V, Y = np.asarray(V), np.asarray(Y)
    if not np.any(V != 0) or not np.any(Y != 0):
        raise PreconditionError("K needs nonzero V and Y")
    exact = _exact(V, Y)
    JYV = sp.J(Y, V)
    cols = [sp.br_v(V, g @ JYV) for g in sp.gens(exact)]
    return np.array(cols, dtype=object if exact else float).T


def k_operator(sp: DRSpace, V, Y) -> np.ndarray:
    """K_{V,Y} as an m x m matrix on z (it kills Y and preserves Y-perp).

    Exact when |Y| is rational, float otherwise.
    """
    N = k_numerator(sp, V, Y)
    V, Y = np.asarray(V), np.asarray(Y)
    if _exact(V, Y):
        ny = sqrt_exact(Y @ Y)
        if ny is not None:
            return N / ((V @ V) * ny)
        N = N.astype(float)
        V, Y = V.astype(float), Y.astype(float)
    return N / ((V @ V) * np.sqrt(Y @ Y))


def k_squared(sp: DRSpace, V, Y) -> np.ndarray:
    """K^2, rational whenever V and Y are."""
    N = k_numerator(sp, V, Y)
    V, Y = np.asarray(V), np.asarray(Y)
    return (N @ N) / ((V @ V) ** 2 * (Y @ Y))


def k2_minus_one_residuals(sp: DRSpace, V, Y, X) -> tuple[float, float]:
    """(|K^2 X + X|, |J_X J_Y V - |Y| J_{KX} V|); both vanish or neither does."""
    V, Y, X = (np.asarray(a, dtype=float) for a in (V, Y, X))
    K = k_operator(sp, V, Y)
    left = np.linalg.norm(K @ K @ X + X)
    right = np.linalg.norm(sp.J(X, sp.J(Y, V)) - np.linalg.norm(Y) * sp.J(K @ X, V))
    return float(left), float(right)


# -- sampling ------------------------------------------------------------------

@dataclass(frozen=True)
class SteinProbe:
    c1: float
    c2: float
    dev1: float
    dev2: float

    @property
    def maxdev(self) -> float:
        return max(self.dev1, self.dev2)


def two_stein_probe(sp: DRSpace, samples: int, seed: int) -> SteinProbe:
    """Tr R_T and Tr R_T^2 over seeded random unit vectors; means and max deviations."""
    if samples < 2:
        raise PreconditionError("need at least two samples")
    Ts = unit_vectors(seed, samples, sp.dim)
    tr, tr2 = kernels.jacobi_traces_batch(sp.gens_float, Ts)
    c1, c2 = float(tr.mean()), float(tr2.mean())
    return SteinProbe(c1, c2, float(np.abs(tr - c1).max()), float(np.abs(tr2 - c2).max()))


def jacobi_spectra(sp: DRSpace, samples: int, seed: int) -> np.ndarray:
    """Sorted eigenvalues of R_T for seeded unit T, shape (samples, dim)."""
    Ts = unit_vectors(seed, samples, sp.dim)
    return np.linalg.eigvalsh(kernels.jacobi_matrix_batch(sp.gens_float, Ts))

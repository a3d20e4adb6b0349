"""Octonions and the curvature tensor of the Cayley projective / hyperbolic plane.

Multiplication is the Cayley-Dickson doubling

    (a, b)(c, d) = (ac - d*b, da + bc*),      (a, b)* = (a*, -b)

applied recursively from the reals, so quaternions are 4-vectors, octonions
8-vectors, and the basis is 1, e1, ..., e7 in that order.  This one rule is the
single source of truth for every structure constant in the package (including
the Clifford generators built from left multiplications).

A tangent vector of the Cayley plane at a point is a pair (a, b) of octonions,
stored as a flat 16-vector ``[a, b]``.  ``eps`` is +1 for the projective plane
(sectional curvature in [1/4, 1]) and -1 for the hyperbolic plane.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DimensionMismatchError
from .exact import const, gram_schmidt, is_exact, to_exact, unit_vectors

ONE = np.eye(8, dtype=np.int64)[0]


def conj(x: np.ndarray) -> np.ndarray:
    y = -np.asarray(x).copy()
    y[0] = x[0]
    return y


def cd_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cayley-Dickson product of two 2^k-vectors (any dtype)."""
    n = len(x)
    if n != len(y):
        raise DimensionMismatchError("operands differ in length")
    if n == 1:
        return x * y
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    return np.concatenate([cd_mul(a, c) - cd_mul(conj(d), b), cd_mul(d, a) + cd_mul(b, conj(c))])


def oct_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) != 8 or len(b) != 8:
        raise DimensionMismatchError("octonions have 8 coordinates")
    return cd_mul(np.asarray(a), np.asarray(b))


@lru_cache(maxsize=None)
def structure_table(n: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """``(index, sign)`` with e_i e_j = sign[i, j] * e_{index[i, j]}."""
    E = np.eye(n, dtype=np.int64)
    index = np.zeros((n, n), dtype=np.int64)
    sign = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            p = cd_mul(E[i], E[j])
            k = int(np.flatnonzero(p)[0])
            index[i, j], sign[i, j] = k, p[k]
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


def left_mul_operator(a: np.ndarray) -> np.ndarray:
    """Matrix of x -> a x.  Exact when ``a`` has integer/Fraction entries."""
    a = np.asarray(a)
    n = len(a)
    E = np.eye(n, dtype=np.int64)
    cols = [cd_mul(a, E[j]) for j in range(n)]
    return np.array(cols, dtype=a.dtype).T


def right_mul_operator(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    n = len(a)
    E = np.eye(n, dtype=np.int64)
    return np.array([cd_mul(E[j], a) for j in range(n)], dtype=a.dtype).T


def max_isotropic_dimension(a: np.ndarray, tol: float = 1e-10) -> tuple[int, np.ndarray]:
    """Maximal isotropic dimension of the form (d, f) -> <a d, f>, and a witness.

    For a skew form the answer is ``dim - rank/2``.  The witness subspace is
    grown greedily (each new vector orthogonal to the current span and to its
    image under L_a), which gives an independent check of that count.
    """
    La = left_mul_operator(np.asarray(a, dtype=float))
    formula = 8 - np.linalg.matrix_rank(La, tol=tol) // 2
    basis: list[np.ndarray] = []
    for e in np.eye(8):
        cand = np.array(basis + [La @ b for b in basis] + [e])
        Q = gram_schmidt(cand[:-1], tol) if len(basis) else np.empty((0, 8))
        v = e - (Q.T @ (Q @ e) if len(Q) else 0)
        if np.linalg.norm(v) > tol:
            basis.append(v / np.linalg.norm(v))
    witness = np.array(basis)
    if len(witness) != formula:
        raise AssertionError("greedy isotropic subspace disagrees with the rank count")
    return int(formula), witness


# ---------------------------------------------------------------------------
# Cayley plane

def _split(X) -> tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X)
    if X.shape != (16,):
        raise DimensionMismatchError("Cayley tangent vectors have 16 coordinates")
    return X[:8], X[8:]


def tangent(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype == object or b.dtype == object:
        return np.concatenate([a.astype(object), b.astype(object)])
    return np.concatenate([a, b]).astype(float)


def cayley_curvature(X1, X2, X3, eps: int = 1) -> np.ndarray:
    """R((a,b),(c,d))(e,f), exact on Fraction input."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    a, b = _split(X1)
    c, d = _split(X2)
    e, f = _split(X3)
    exact = any(is_exact(np.asarray(x)) for x in (X1, X2, X3))
    four = 4
    adcb = oct_mul(a, d) - oct_mul(c, b)
    first = (four * (c @ e) * a - four * (a @ e) * c
             + oct_mul(oct_mul(e, d), conj(b)) - oct_mul(oct_mul(e, b), conj(d))
             + oct_mul(adcb, conj(f)))
    second = (four * (d @ f) * b - four * (b @ f) * d
              + oct_mul(conj(a), oct_mul(c, f)) - oct_mul(conj(c), oct_mul(a, f))
              - oct_mul(conj(e), adcb))
    return const(eps, 4, exact) * np.concatenate([first, second])


class CayleyPlane:
    """Curvature evaluator at a point of OP^2 (eps=+1) or OH^2 (eps=-1)."""

    dim = 16

    def __init__(self, eps: int = 1):
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        self.eps = eps

    def __repr__(self):
        return f"CayleyPlane(eps={self.eps:+d})"

    def curvature(self, X, Y, Z) -> np.ndarray:
        return cayley_curvature(X, Y, Z, self.eps)

    def curvature4(self, X, Y, Z, W):
        return self.curvature(X, Y, Z) @ np.asarray(W)

    def jacobi_apply(self, T, W) -> np.ndarray:
        # R_T W = R(W, T) T
        return self.curvature(W, T, T)

    def jacobi_op(self, T) -> np.ndarray:
        T = np.asarray(T)
        if is_exact(T):
            E = np.eye(16, dtype=np.int64).astype(object)
            return np.array([self.jacobi_apply(T, e) for e in E], dtype=object).T
        return kernels.cayley_jacobi_matrix(np.asarray(T, dtype=float), self.eps)

    def tensor(self) -> np.ndarray:
        """Full float tensor R[i,j,k,l] = <R(e_i,e_j)e_k, e_l>."""
        return _cayley_tensor(self.eps).copy()

    def sectional(self, X, Y) -> float:
        X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
        gram = (X @ X) * (Y @ Y) - (X @ Y) ** 2
        return float(self.curvature(Y, X, X) @ Y / gram)


@lru_cache(maxsize=2)
def _cayley_tensor(eps: int) -> np.ndarray:
    E = np.eye(16)
    idx = np.array([(i, j, k) for i in range(16) for j in range(16) for k in range(16)])
    out = kernels.cayley_curvature_batch(E[idx[:, 0]], E[idx[:, 1]], E[idx[:, 2]], eps)
    R = out.reshape(16, 16, 16, 16)
    R.setflags(write=False)
    return R


XI = tangent(np.eye(8)[0], np.zeros(8))
XI_EXACT = to_exact(np.eye(16, dtype=np.int64)[0])


def xi_jacobi_spectrum(eps: int = 1) -> dict[Fraction, int]:
    """Exact spectrum of R_xi at xi = (1, 0): eigenvalue -> multiplicity.

    R_xi is diagonal in the standard basis, so the spectrum is read off the exact
    matrix after checking that it is diagonal.
    """
    xi = XI_EXACT
    M = CayleyPlane(eps).jacobi_op(xi)
    off = M - np.diag(np.diag(M))
    if not all(x == 0 for x in off.ravel()):
        raise AssertionError("R_xi is not diagonal in the standard basis")
    spec: dict[Fraction, int] = {}
    for x in np.diag(M):
        spec[Fraction(x)] = spec.get(Fraction(x), 0) + 1
    return dict(sorted(spec.items()))


def eigenspace_samples(which: str, rng: np.random.Generator, exact: bool = False, bound: int = 6):
    """Random vector of L_eps ("eps": (a, 0), a imaginary) or L_eps/4 ("quarter": (0, b))."""
    from .exact import random_rational

    if exact:
        v = random_rational(rng, 8, bound=bound)
        zero = np.array([Fraction(0)] * 8, dtype=object)
    else:
        v = rng.standard_normal(8)
        zero = np.zeros(8)
    if which == "eps":
        v[0] = 0 * v[0]
        return tangent(v, zero)
    if which == "quarter":
        return tangent(zero, v)
    raise ValueError(which)


def perp_xi_checks(eps: int = 1, samples: int = 100, seed: int = 0, exact: bool = True) -> dict:
    """Max |<R(.,.)., xi>| over random triples of the three eigenspace shapes.

    Also returns the same quantity for generic triples as a control; that one
    is expected to be nonzero.
    """
    plane = CayleyPlane(eps)
    xi = XI_EXACT if exact else XI
    shapes = {
        "eps_eps_eps": ("eps", "eps", "eps"),
        "quarter_eps_eps": ("quarter", "eps", "eps"),
        "quarter_quarter_quarter": ("quarter", "quarter", "quarter"),
    }
    report: dict = {}
    for name, shape in shapes.items():
        worst = Fraction(0) if exact else 0.0
        for i in range(samples):
            rng = np.random.default_rng([seed, i, len(name)])
            X, Y, Z = (eigenspace_samples(w, rng, exact) for w in shape)
            val = abs(plane.curvature(X, Y, Z) @ xi)
            worst = max(worst, val)
        report[name] = worst
    ctrl = 0.0
    for i in range(samples):
        rng = np.random.default_rng([seed, i, 99])
        X, Y, Z = rng.standard_normal((3, 16))
        ctrl = max(ctrl, abs(float(plane.curvature(X, Y, Z) @ XI)))
    report["control_generic"] = ctrl
    return report


def adf_pairing(a, d, f, eps: int = 1):
    """Three routes to R((a,0),(0,d),(0,f),xi): the tensor, <(ad)f*,1>, <ad,f>."""
    exact = any(is_exact(np.asarray(x)) for x in (a, d, f))
    z = np.zeros(8, dtype=object) * 0 if exact else np.zeros(8)
    if exact:
        z = np.array([Fraction(0)] * 8, dtype=object)
    X, Y, Z = tangent(a, z), tangent(z, d), tangent(z, f)
    xi = XI_EXACT if exact else XI
    direct = CayleyPlane(eps).curvature(X, Y, Z) @ xi
    q = const(eps, 4, exact)
    via_conj = q * oct_mul(oct_mul(a, d), conj(f))[0]
    via_inner = q * (oct_mul(a, d) @ f)
    return direct, via_conj, via_inner


def sectional_samples(eps: int = 1, samples: int = 10_000, seed: int = 0) -> np.ndarray:
    """Sectional curvatures of seeded random planes, batched through the kernels."""
    U = unit_vectors(seed, samples, 32)
    X, Y = U[:, :16], U[:, 16:]
    return kernels.cayley_sectional_batch(X, Y, eps)


def bianchi_residual(X, Y, Z, eps: int = 1):
    plane = CayleyPlane(eps)
    s = plane.curvature(X, Y, Z) + plane.curvature(Y, Z, X) + plane.curvature(Z, X, Y)
    return max(abs(x) for x in s)

"""Small exact-rational linear algebra layer plus the float helpers that mirror it.

Exact vectors and matrices are numpy ``object`` arrays of :class:`fractions.Fraction`
(integer entries are allowed too).  Every routine in the package that accepts a
vector works on either representation; the dtype decides the arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np


def is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def to_exact(a) -> np.ndarray:
    """Convert ints / Fractions (or a nested sequence of them) to an object array.

    Floats are refused: silently turning 0.1 into 3602879701896397/36028797018963968
    defeats the purpose of the exact mode.
    """
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        if isinstance(x, (float, np.floating)):
            raise TypeError("refusing to convert a float to an exact rational")
        out[idx] = Fraction(x)
    return out


def to_float(a) -> np.ndarray:
    return np.asarray(a, dtype=float) if not is_exact(a) else np.array(a.astype(float))


def const(num: int, den: int, exact: bool):
    return Fraction(num, den) if exact else num / den


def zeros(shape, exact: bool) -> np.ndarray:
    if not exact:
        return np.zeros(shape)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int, exact: bool) -> np.ndarray:
    out = zeros((n, n), exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def is_zero(a) -> bool:
    """Exact zero test for object arrays, ``== 0`` for floats."""
    return bool(np.all(np.asarray(a) == 0))


# ---------------------------------------------------------------------------
# Gauss-Jordan over Q

def rref(M) -> tuple[np.ndarray, list[int]]:
    R = to_exact(M)  # ints in object arrays would divide to floats
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] / R[r, c]
        for i in range(rows):
            if i != r and R[i, c] != 0:
                R[i] = R[i] - R[i, c] * R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M) -> int:
    M = np.atleast_2d(M)
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def nullspace(M) -> list[np.ndarray]:
    M = np.atleast_2d(M)
    R, pivots = rref(M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols, True)
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -R[r, f]
        basis.append(v)
    return basis


def det(M) -> Fraction:
    A = to_exact(M)
    n = A.shape[0]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[[c, p]] = A[[p, c]]
            sign = -sign
        result *= A[c, c]
        for i in range(c + 1, n):
            if A[i, c] != 0:
                A[i] = A[i] - (A[i, c] / A[c, c]) * A[c]
    return sign * result


def solve(A, b) -> np.ndarray:
    """Unique solution of a consistent (possibly overdetermined) exact system."""
    A = np.atleast_2d(A)
    aug = np.concatenate([A, np.asarray(b, dtype=object).reshape(-1, 1)], axis=1)
    R, pivots = rref(aug)
    n = A.shape[1]
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != n:
        raise ValueError("linear system has no unique solution")
    return np.array([R[i, n] for i in range(n)], dtype=object)


def independent_rows(rows) -> np.ndarray:
    """Keep the rows that raise the rank, in order (exact)."""
    rows = np.atleast_2d(rows)
    kept: list[np.ndarray] = []
    for r in rows:
        if rank(np.array(kept + [r], dtype=object)) > len(kept):
            kept.append(r)
    if not kept:
        return np.empty((0, rows.shape[1]), dtype=object)
    return np.array(kept, dtype=object)


def residual_sq(rows, w) -> Fraction:
    """Squared norm of the part of ``w`` orthogonal to the row span, exactly."""
    rows = independent_rows(rows)
    w = np.asarray(w, dtype=object)
    if rows.shape[0] == 0:
        return Fraction(w @ w)
    gram = rows @ rows.T
    coeffs = solve(gram, rows @ w)
    perp = w - coeffs @ rows
    return Fraction(perp @ perp)


def sqrt_exact(q) -> Fraction | None:
    """Rational square root of a non-negative rational, or None when irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# float counterparts

def gram_schmidt(rows, tol: float = 1e-10) -> np.ndarray:
    """Modified Gram-Schmidt in the given row order; near-dependent rows are dropped."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    out: list[np.ndarray] = []
    for r in rows:
        v = r.copy()
        for q in out:
            v -= (q @ v) * q
        for q in out:  # second pass keeps orthogonality at 1e-15
            v -= (q @ v) * q
        nv = np.linalg.norm(v)
        if nv > tol * max(1.0, np.linalg.norm(r)):
            out.append(v / nv)
    if not out:
        return np.empty((0, rows.shape[1]))
    return np.array(out)


def orth_residual(Q: np.ndarray, w: np.ndarray) -> float:
    """Norm of the component of ``w`` orthogonal to the orthonormal rows of Q."""
    w = np.asarray(w, dtype=float)
    if Q.shape[0] == 0:
        return float(np.linalg.norm(w))
    return float(np.linalg.norm(w - Q.T @ (Q @ w)))


# ---------------------------------------------------------------------------
# seeded sampling

def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for sample ``index``; independent of how many samples are drawn."""
    return np.random.default_rng([int(seed), int(index)])


def unit_vectors(seed: int, count: int, dim: int) -> np.ndarray:
    out = np.empty((count, dim))
    for i in range(count):
        g = sample_rng(seed, i).standard_normal(dim)
        out[i] = g / np.linalg.norm(g)
    return out


def random_rational(rng: np.random.Generator, shape, bound: int = 9, den: int = 7) -> np.ndarray:
    nums = rng.integers(-bound, bound + 1, size=shape)
    dens = rng.integers(1, den + 1, size=shape)
    out = np.empty(np.shape(nums), dtype=object)
    for idx, n in np.ndenumerate(nums):
        out[idx] = Fraction(int(n), int(dens[idx]))
    return out


def rational_unit_vector(rng: np.random.Generator, n: int, bound: int = 5) -> np.ndarray:
    """Rational point on the unit sphere (inverse stereographic projection)."""
    if n == 1:
        return to_exact([1 if rng.integers(2) else -1])
    t = random_rational(rng, n - 1, bound=bound, den=5)
    t2 = sum((x * x for x in t), Fraction(0))
    out = np.empty(n, dtype=object)
    for i, x in enumerate(t):
        out[i] = 2 * x / (1 + t2)
    out[n - 1] = (1 - t2) / (1 + t2)
    return out


def as_rows(vectors: Sequence) -> np.ndarray:
    rows = [np.asarray(v) for v in vectors]
    if any(is_exact(r) for r in rows):
        return np.array([to_exact(r) if not is_exact(r) else r for r in rows], dtype=object)
    return np.array(rows, dtype=float)

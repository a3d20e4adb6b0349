"""Vectorized numpy implementations of the float hot loops.

Same signatures as the compiled ``_ckernels`` module; used when the extension is
not built and as the reference the compiled code is tested against.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=1)
def _oct_tensor() -> np.ndarray:
    from .octonion import structure_table

    index, sign = structure_table(8)
    C = np.zeros((8, 8, 8))
    for i in range(8):
        for j in range(8):
            C[i, j, index[i, j]] = sign[i, j]
    C.setflags(write=False)
    return C


_CONJ = np.array([1.0] + [-1.0] * 7)


def oct_mul_batch(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise octonion products of two (N, 8) arrays."""
    return np.einsum("ni,nj,ijk->nk", A, B, _oct_tensor(), optimize=True)


def cayley_curvature_batch(X: np.ndarray, Y: np.ndarray, Z: np.ndarray, eps: int) -> np.ndarray:
    X, Y, Z = (np.atleast_2d(np.asarray(v, dtype=float)) for v in (X, Y, Z))
    a, b = X[:, :8], X[:, 8:]
    c, d = Y[:, :8], Y[:, 8:]
    e, f = Z[:, :8], Z[:, 8:]
    mul = oct_mul_batch
    dot = lambda u, v: np.einsum("ni,ni->n", u, v)[:, None]
    adcb = mul(a, d) - mul(c, b)
    first = (4 * dot(c, e) * a - 4 * dot(a, e) * c
             + mul(mul(e, d), b * _CONJ) - mul(mul(e, b), d * _CONJ)
             + mul(adcb, f * _CONJ))
    second = (4 * dot(d, f) * b - 4 * dot(b, f) * d
              + mul(a * _CONJ, mul(c, f)) - mul(c * _CONJ, mul(a, f))
              - mul(e * _CONJ, adcb))
    return eps / 4 * np.concatenate([first, second], axis=1)


def cayley_sectional_batch(X: np.ndarray, Y: np.ndarray, eps: int) -> np.ndarray:
    X, Y = np.atleast_2d(X), np.atleast_2d(Y)
    num = np.einsum("ni,ni->n", cayley_curvature_batch(Y, X, X, eps), Y)
    gram = np.einsum("ni,ni->n", X, X) * np.einsum("ni,ni->n", Y, Y) - np.einsum("ni,ni->n", X, Y) ** 2
    return num / gram


def cayley_jacobi_matrix(T: np.ndarray, eps: int) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    rep = np.broadcast_to(T, (16, 16))
    return cayley_curvature_batch(np.eye(16), rep, rep, eps).T


def jacobi_matrix_batch(gens: np.ndarray, Ts: np.ndarray) -> np.ndarray:
    """Jacobi operators R_T on s = v + z + a for a batch of tangent vectors.

    ``gens`` is the (m, n, n) stack of Clifford generators, ``Ts`` is (N, n+m+1)
    in the flat layout [V, Y, s].
    """
    G = np.asarray(gens, dtype=float)
    Ts = np.atleast_2d(np.asarray(Ts, dtype=float))
    m, n = G.shape[0], G.shape[1]
    N, d = Ts.shape
    V, Y, s = Ts[:, :n], Ts[:, n:n + m], Ts[:, -1]
    nu = np.einsum("ni,ni->n", Ts, Ts)
    vv2 = np.einsum("ni,ni->n", V, V)
    MV = np.einsum("kij,nj->nik", G, V)          # column k is J_k V
    JYV = np.einsum("nk,nik->ni", Y, MV)
    MW = np.einsum("kij,nj->nik", G, JYV)        # column k is J_k J_Y V
    out = np.zeros((N, d, d))
    I_n, I_m = np.eye(n), np.eye(m)
    vv = (-0.75 * np.einsum("nik,njk->nij", MV, MV) - (nu / 4)[:, None, None] * I_n
          + 0.25 * np.einsum("ni,nj->nij", V, V))
    vz = 0.75 * MW - 0.75 * s[:, None, None] * MV + np.einsum("ni,nj->nij", V, Y)
    va = 0.75 * JYV + (s / 4)[:, None] * V
    gap = nu - 0.75 * vv2
    zz = -gap[:, None, None] * I_m + np.einsum("ni,nj->nij", Y, Y)
    za = s[:, None] * Y
    out[:, :n, :n] = vv
    out[:, :n, n:n + m] = vz
    out[:, n:n + m, :n] = vz.transpose(0, 2, 1)
    out[:, :n, -1] = va
    out[:, -1, :n] = va
    out[:, n:n + m, n:n + m] = zz
    out[:, n:n + m, -1] = za
    out[:, -1, n:n + m] = za
    out[:, -1, -1] = -gap + s * s
    return out


def jacobi_matrix(gens: np.ndarray, T: np.ndarray) -> np.ndarray:
    return jacobi_matrix_batch(gens, np.asarray(T, dtype=float)[None, :])[0]


def jacobi_traces_batch(gens: np.ndarray, Ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(Tr R_T, Tr R_T^2) for every row of ``Ts``."""
    M = jacobi_matrix_batch(gens, Ts)
    return np.einsum("nii->n", M), np.einsum("nij,nij->n", M, M)

"""Real Clifford modules: anticommuting skew operators J_1..J_m with J_i^2 = -id.

Generators come from left multiplication in the Cayley-Dickson algebras:

* m = 1: the complex unit on R^2,
* m = 2, 3: left multiplication by i, j, k on the quaternions,
* m = 4..7: left multiplication by e_1..e_m on the octonions,
* m = 8: the seven octonion operators doubled as diag(J, -J), plus the
  block [[0, -I], [I, 0]].

All entries are in {-1, 0, 1}, so every Clifford axiom is checked exactly on
integer arrays.  For m = 3 and m = 7 there are two inequivalent irreducible
modules; the ``cls`` flag is the sign of the central product J_1 J_2 J_3
(m = 3) or J_1 ... J_7 (m = 7), and flipping the last generator switches class.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatchError, InvalidMultiplicityError, UnsupportedDimensionError
from .exact import is_exact
from .octonion import left_mul_operator

IRREDUCIBLE_DIM = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CliffordRep:
    """A Clifford module for the negative-definite form on R^m.

    ``generators`` is an (m, dim_v, dim_v) read-only integer array.
    ``blocks`` records the (cls, dim) of each irreducible summand in order.
    """

    m: int
    generators: np.ndarray
    blocks: tuple[tuple[int, int], ...] = field(default=())

    @property
    def dim_v(self) -> int:
        return int(self.generators.shape[1])

    @property
    def float_generators(self) -> np.ndarray:
        return self.generators.astype(float)

    def __repr__(self) -> str:
        return f"CliffordRep(m={self.m}, dim_v={self.dim_v}, blocks={self.blocks})"

    def __getitem__(self, i: int) -> np.ndarray:
        return self.generators[i]


def _unit_left(n: int, k: int) -> np.ndarray:
    return left_mul_operator(np.eye(n, dtype=np.int64)[k])


def _central_product(gens) -> np.ndarray:
    P = np.eye(gens[0].shape[0], dtype=np.int64)
    for g in gens:
        P = P @ g
    return P


def class_sign(gens) -> int | None:
    """Sign c with J_1 ... J_m = c id, or None when that product is not scalar."""
    P = _central_product(gens)
    n = P.shape[0]
    for c in (1, -1):
        if np.array_equal(P, c * np.eye(n, dtype=np.int64)):
            return c
    return None


def build_irreducible(m: int, cls: int = 1) -> CliffordRep:
    """Irreducible module of Cl_m; ``cls`` picks the class when m = 3 or 7."""
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= 8:
        raise UnsupportedDimensionError(f"centre dimension must be in 1..8, got {m!r}")
    if cls not in (1, -1):
        raise InvalidMultiplicityError("class flag must be +1 or -1")
    if cls == -1 and m % 4 != 3:
        raise InvalidMultiplicityError(f"m={m} has a single irreducible class")
    m = int(m)
    if m == 1:
        gens = [_unit_left(2, 1)]
    elif m <= 3:
        gens = [_unit_left(4, k) for k in range(1, m + 1)]
    elif m <= 7:
        gens = [_unit_left(8, k) for k in range(1, m + 1)]
    else:
        Z = np.zeros((8, 8), dtype=np.int64)
        I = np.eye(8, dtype=np.int64)
        gens = [np.block([[g, Z], [Z, -g]]) for g in (_unit_left(8, k) for k in range(1, 8))]
        gens.append(np.block([[Z, -I], [I, Z]]))
    if m % 4 == 3:
        if class_sign(gens) != cls:
            gens[-1] = -gens[-1]
    rep = CliffordRep(m, _readonly(np.array(gens, dtype=np.int64)), ((cls, IRREDUCIBLE_DIM[m]),))
    return rep


def build_module(m: int, mult_plus: int, mult_minus: int = 0) -> CliffordRep:
    """Block-diagonal direct sum of ``mult_plus`` + ``mult_minus`` irreducibles."""
    if not 1 <= m <= 8:
        raise UnsupportedDimensionError(f"centre dimension must be in 1..8, got {m!r}")
    if mult_plus < 0 or mult_minus < 0 or mult_plus + mult_minus < 1:
        raise InvalidMultiplicityError("multiplicities must be non-negative with a positive sum")
    if mult_minus and m % 4 != 3:
        raise InvalidMultiplicityError(f"m={m} has no second irreducible class")
    irreps = [build_irreducible(m, 1)] * mult_plus
    if mult_minus:
        irreps += [build_irreducible(m, -1)] * mult_minus
    d = IRREDUCIBLE_DIM[m]
    n = d * len(irreps)
    gens = np.zeros((m, n, n), dtype=np.int64)
    for b, rep in enumerate(irreps):
        gens[:, b * d:(b + 1) * d, b * d:(b + 1) * d] = rep.generators
    blocks = tuple(r.blocks[0] for r in irreps)
    return CliffordRep(m, _readonly(gens), blocks)


def j_op(rep: CliffordRep, Z) -> np.ndarray:
    """J_Z = sum_i z_i J_i; exact object array for int/Fraction Z, float otherwise."""
    Z = np.asarray(Z)
    if Z.shape != (rep.m,):
        raise DimensionMismatchError(f"Z must have length {rep.m}, got shape {Z.shape}")
    if is_exact(Z) or np.issubdtype(Z.dtype, np.integer):
        return np.tensordot(Z.astype(object), rep.generators.astype(object), axes=1)
    return np.tensordot(Z.astype(float), rep.float_generators, axes=1)


def clifford_residuals(rep: CliffordRep) -> dict[str, int]:
    """Max absolute entry of each axiom's defect (integers, so 0 means exact)."""
    G = rep.generators
    n = rep.dim_v
    I = np.eye(n, dtype=np.int64)
    skew = max(int(np.abs(g + g.T).max()) for g in G)
    square = max(int(np.abs(g @ g + I).max()) for g in G)
    anti = 0
    for i in range(rep.m):
        for j in range(i + 1, rep.m):
            anti = max(anti, int(np.abs(G[i] @ G[j] + G[j] @ G[i]).max()))
    dims = 0 if all(d == IRREDUCIBLE_DIM[rep.m] for _, d in rep.blocks) else 1
    return {"skew": skew, "square": square, "anticommute": anti, "dimension": dims}


def verify(rep: CliffordRep) -> bool:
    return not any(clifford_residuals(rep).values())


def polarized_residual(rep: CliffordRep, Z, W) -> Fraction:
    """Max |J_Z J_W + J_W J_Z + 2<Z,W> id| over entries, exact on rational input."""
    JZ, JW = j_op(rep, Z), j_op(rep, W)
    ip = np.asarray(Z) @ np.asarray(W)
    D = JZ @ JW + JW @ JZ + 2 * ip * np.eye(rep.dim_v, dtype=np.int64)
    return max(abs(x) for x in D.ravel())

"""Small exact linear-algebra helpers: ranks over GF(p), integer kernels and determinants."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy


def rank_mod_p(rows, p: int) -> int:
    """Rank of an integer matrix over GF(p) by Gaussian elimination (p < 2^31)."""
    A = np.array(rows, dtype=np.int64)
    if A.size == 0:
        return 0
    A %= p
    nr, nc = A.shape
    rank = 0
    for col in range(nc):
        if rank == nr:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), -1, p)
        A[rank] = A[rank] * inv % p
        below = A[rank + 1 :, col]
        idx = np.nonzero(below)[0]
        if idx.size:
            rows_ = rank + 1 + idx
            # entries < 2^31 so the product fits in int64 after one reduction
            A[rows_] = (A[rows_] - np.outer(A[rows_, col], A[rank]) % p) % p
        rank += 1
    return rank


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list:
    """Basis of the rational kernel, each vector scaled to a primitive integer vector."""
    M = sympy.Matrix(matrix)
    out = []
    for v in M.nullspace():
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v]) if len(v) else 1
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = sympy.igcd(g, x)
        out.append([x // g for x in w] if g else w)
    return out


def rank_exact(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return sympy.Matrix(matrix).rank()


def det_exact(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 1
    return int(sympy.Matrix(matrix).det(method="bareiss"))


def as_fraction_vector(v) -> list:
    return [Fraction(x) for x in v]

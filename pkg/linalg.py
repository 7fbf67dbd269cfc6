"""GF(p) linear algebra for the cocycle solver.

Rows over GF(2) are bit-packed with numpy.packbits and reduced with XOR;
rows over odd p are byte rows reduced modulo p. Both paths return the same
reduced row echelon form.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np


def to_gfp(matrix: np.ndarray, p: int) -> np.ndarray:
    return np.mod(np.asarray(matrix, dtype=np.int64), p).astype(np.uint8)


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def _row_reduce_gf2(mat: np.ndarray) -> RowReduceResult:
    m, n = mat.shape
    packed = np.packbits(mat, axis=1)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        byte, shift = col >> 3, 7 - (col & 7)
        bits = (packed[row:, byte] >> shift) & 1
        hit = np.flatnonzero(bits)
        if hit.size == 0:
            continue
        pivot = row + int(hit[0])
        if pivot != row:
            packed[[row, pivot]] = packed[[pivot, row]]
        mask = ((packed[:, byte] >> shift) & 1).astype(bool)
        mask[row] = False
        packed[mask] ^= packed[row]
        pivots.append(col)
        row += 1
    reduced = np.unpackbits(packed, axis=1, count=n)[:row]
    return RowReduceResult(matrix=reduced, rank=row, pivots=tuple(pivots))


def _row_reduce_odd(mat: np.ndarray, p: int) -> RowReduceResult:
    work = mat.astype(np.int64)
    m, n = work.shape
    inverses = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inverses[a] = pow(a, -1, p)
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        hit = np.flatnonzero(work[row:, col])
        if hit.size == 0:
            continue
        pivot = row + int(hit[0])
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        work[row] = (work[row] * inverses[work[row, col]]) % p
        factors = work[:, col].copy()
        factors[row] = 0
        nz = np.flatnonzero(factors)
        if nz.size:
            work[nz] = (work[nz] - factors[nz, None] * work[row][None, :]) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=work[:row].astype(np.uint8), rank=row, pivots=tuple(pivots))


def row_reduce(matrix: np.ndarray, p: int) -> RowReduceResult:
    """Reduced row echelon form over GF(p); zero rows are dropped."""
    mat = to_gfp(matrix, p)
    if mat.ndim != 2:
        raise ValueError('row_reduce expects a 2-d matrix')
    if mat.shape[0] == 0:
        return RowReduceResult(matrix=mat.reshape(0, mat.shape[1]), rank=0, pivots=())
    if p == 2:
        return _row_reduce_gf2(mat)
    return _row_reduce_odd(mat, p)


def rank(matrix: np.ndarray, p: int) -> int:
    return row_reduce(matrix, p).rank


def nullspace(matrix: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of {v : matrix @ v = 0} over GF(p)."""
    reduced = row_reduce(matrix, p)
    mat = reduced.matrix.astype(np.int64)
    n = np.asarray(matrix).shape[1]
    pivot_set = set(reduced.pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free_cols), n), dtype=np.int64)
    for i, free in enumerate(free_cols):
        basis[i, free] = 1
        for r, col in enumerate(reduced.pivots):
            basis[i, col] = (-mat[r, free]) % p
    return basis.astype(np.uint8)


def in_span(basis: np.ndarray, vector: np.ndarray, p: int) -> bool:
    basis = np.asarray(basis).reshape(-1, np.asarray(vector).size)
    return rank(np.vstack([basis, np.asarray(vector)[None, :]]), p) == rank(basis, p)


def inverse(matrix: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over GF(p)."""
    k = matrix.shape[0]
    aug = np.hstack([to_gfp(matrix, p), np.eye(k, dtype=np.uint8)])
    reduced = row_reduce(aug, p)
    if reduced.rank < k or reduced.pivots[k - 1] != k - 1:
        raise ValueError('matrix is singular over GF(p)')
    return reduced.matrix[:, k:]


def coordinates(basis: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    """
    Coefficients c with c @ basis = v for each row v of vectors.
    The basis rows must be independent and every vector in their span.
    """
    basis = to_gfp(basis, p)
    k = basis.shape[0]
    if k == 0:
        return np.zeros((len(vectors), 0), dtype=np.uint8)
    cols = list(row_reduce(basis, p).pivots)
    sub_inv = inverse(basis[:, cols], p).astype(np.int64)
    coeffs = (to_gfp(vectors, p)[:, cols].astype(np.int64) @ sub_inv) % p
    if not np.array_equal((coeffs @ basis.astype(np.int64)) % p, to_gfp(vectors, p).astype(np.int64)):
        raise ValueError('vector outside the span of the basis')
    return coeffs.astype(np.uint8)


def extend_basis(base: np.ndarray, candidates: np.ndarray, p: int) -> np.ndarray:
    """
    Greedy complement: the candidate rows, in order, that are independent of
    base and of the candidates already taken.
    """
    width = np.asarray(candidates).shape[1]
    current = to_gfp(base, p).reshape(-1, width)
    current_rank = rank(current, p) if len(current) else 0
    taken = []
    for row in to_gfp(candidates, p):
        trial = np.vstack([current, row[None, :]])
        r = rank(trial, p)
        if r > current_rank:
            current, current_rank = trial, r
            taken.append(row)
    if not taken:
        return np.zeros((0, width), dtype=np.uint8)
    return np.vstack(taken)

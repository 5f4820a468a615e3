"""Pure numpy implementations of the modular matrix kernels.

Same call signatures as the compiled ``_ckernels`` module; selected by
:mod:`overres.kernels` when the extension is missing or disabled.
"""
from __future__ import annotations

import numpy as np


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def batch_matmul_mod(stack: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Multiply every matrix of ``stack`` (shape (k, n, m)) on the right by ``b``."""
    return np.matmul(np.asarray(stack, dtype=np.int64), np.asarray(b, dtype=np.int64)) % p


def rref_mod(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Pivots are taken column by column from the left; within a column the
    first row carrying a nonzero entry is used, so the output depends only
    on the row space and the row order of the input.
    """
    r = np.array(m, dtype=np.int64, copy=True) % p
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), -1, p)
        r[row] = (r[row] * inv) % p
        col_vals = r[:, col].copy()
        col_vals[row] = 0
        hit = np.nonzero(col_vals)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(col_vals[hit], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots

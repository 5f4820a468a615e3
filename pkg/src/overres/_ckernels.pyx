# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular matrix kernels (see _pykernels for the reference versions)."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def matmul_mod(a, b, long long p):
    cdef i64[:, ::1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef i64[:, ::1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0], k = A.shape[1], m = B.shape[1]
    if B.shape[0] != k:
        raise ValueError("shape mismatch")
    out = np.zeros((n, m), dtype=np.int64)
    cdef i64[:, ::1] C = out
    cdef Py_ssize_t i, j, t
    cdef i64 acc, aval
    for i in range(n):
        for t in range(k):
            aval = A[i, t]
            if aval == 0:
                continue
            for j in range(m):
                C[i, j] += aval * B[t, j]
        for j in range(m):
            acc = C[i, j] % p
            if acc < 0:
                acc += p
            C[i, j] = acc
    return out


def batch_matmul_mod(stack, b, long long p):
    cdef i64[:, :, ::1] S = np.ascontiguousarray(stack, dtype=np.int64)
    cdef i64[:, ::1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t cnt = S.shape[0], n = S.shape[1], k = S.shape[2], m = B.shape[1]
    if B.shape[0] != k:
        raise ValueError("shape mismatch")
    out = np.zeros((cnt, n, m), dtype=np.int64)
    cdef i64[:, :, ::1] C = out
    cdef Py_ssize_t s, i, j, t
    cdef i64 acc, aval
    for s in range(cnt):
        for i in range(n):
            for t in range(k):
                aval = S[s, i, t]
                if aval == 0:
                    continue
                for j in range(m):
                    C[s, i, j] += aval * B[t, j]
            for j in range(m):
                acc = C[s, i, j] % p
                if acc < 0:
                    acc += p
                C[s, i, j] = acc
    return out


cdef i64 _inv_mod(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(m, long long p):
    r_arr = np.array(m, dtype=np.int64, copy=True) % p
    r_arr = np.ascontiguousarray(r_arr)
    cdef i64[:, ::1] R = r_arr
    cdef Py_ssize_t rows = R.shape[0], cols = R.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef i64 inv, f, tmp
    pivots = []
    for col in range(cols):
        if row == rows:
            break
        piv = -1
        for i in range(row, rows):
            if R[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(cols):
                tmp = R[row, j]
                R[row, j] = R[piv, j]
                R[piv, j] = tmp
        inv = _inv_mod(R[row, col], p)
        for j in range(col, cols):
            R[row, j] = (R[row, j] * inv) % p
        for i in range(rows):
            if i == row:
                continue
            f = R[i, col]
            if f == 0:
                continue
            for j in range(col, cols):
                tmp = (R[i, j] - f * R[row, j]) % p
                if tmp < 0:
                    tmp += p
                R[i, j] = tmp
        pivots.append(col)
        row += 1
    return r_arr, pivots

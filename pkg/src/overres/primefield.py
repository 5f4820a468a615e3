"""Exact arithmetic over F_p and F_p[eps]/(eps^2), plus dense matrix helpers.

Matrices are plain ``numpy.int64`` arrays holding reduced residues; every
function takes the modulus explicitly.  Row reduction and products go
through :mod:`overres.kernels`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from overres import kernels


class NotPrimeError(ValueError):
    pass


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrimeError(f"modulus {p!r} is not prime")
    return int(p)


def primes_from(start: int = 2):
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


@dataclass(frozen=True)
class PrimeScalar:
    """An element of F_p."""

    residue: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "residue", int(self.residue) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeScalar):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.residue
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def _new(self, value: int) -> PrimeScalar:
        return PrimeScalar(value, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def inverse(self) -> PrimeScalar:
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return self._new(pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.inverse() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self._new(pow(self.residue, k, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PrimeScalar):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, (int, np.integer)):
            return self.residue == int(other) % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __int__(self):
        return self.residue

    __index__ = __int__

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"


@dataclass(frozen=True)
class DualScalar:
    """``value + slope*eps`` with ``eps**2 = 0`` over F_p."""

    value: int
    slope: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)
        object.__setattr__(self, "slope", int(self.slope) % self.modulus)

    @classmethod
    def variable(cls, a: int, p: int) -> DualScalar:
        """The point ``a + eps``: evaluating a polynomial there yields f(a) + f'(a) eps."""
        return cls(a, 1, p)

    def _coerce(self, other):
        if isinstance(other, DualScalar):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, PrimeScalar):
            return DualScalar(other.residue, 0, self.modulus)
        if isinstance(other, (int, np.integer)):
            return DualScalar(int(other), 0, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DualScalar(self.value + o.value, self.slope + o.slope, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.slope, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DualScalar(
            self.value * o.value,
            self.value * o.slope + self.slope * o.value,
            self.modulus,
        )

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.value != 0

    def inverse(self) -> DualScalar:
        if not self.is_unit():
            raise ZeroDivisionError("dual number with zero value part is not a unit")
        inv = pow(self.value, -1, self.modulus)
        return DualScalar(inv, -self.slope * inv * inv, self.modulus)

    def __truediv__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        # (a + b eps)^k = a^k + k a^(k-1) b eps
        p = self.modulus
        head = pow(self.value, k, p)
        tail = (k * pow(self.value, k - 1, p) * self.slope) % p if k else 0
        return DualScalar(head, tail, p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.value, self.slope, self.modulus) == (o.value, o.slope, o.modulus)

    def __hash__(self):
        return hash((self.value, self.slope, self.modulus))

    def __repr__(self):
        return f"{self.value} + {self.slope}eps (mod {self.modulus})"


def _small_binom(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p for 0 <= k < p via the falling factorial."""
    num = 1
    for i in range(k):
        num = num * (n - i) % p
    return num * int(factorial_inverse(k, p)) % p


def _lucas(n: int, k: int, p: int) -> int:
    result = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        result = result * _small_binom(nd, kd, p) % p
        n //= p
        k //= p
    return result


def binom_mod(n: int, k: int, p: int) -> PrimeScalar:
    """Falling-factorial binomial n(n-1)...(n-k+1)/k! reduced mod p.

    ``n`` may be negative; then binom(n, k) = (-1)^k binom(k-n-1, k) as integers.
    """
    p = check_prime(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = int(n)
    if n < 0:
        sign = -1 if k % 2 else 1
        return PrimeScalar(sign * _lucas(k - n - 1, k, p), p)
    return PrimeScalar(_lucas(n, k, p), p)


def factorial_inverse(k: int, p: int) -> PrimeScalar:
    """(k!)^-1 mod p for 0 <= k < p.

    ``k >= p`` means some exponential series was not truncated at p-1.
    """
    p = check_prime(p)
    if not 0 <= k < p:
        raise ValueError(f"k! is not invertible mod {p} for k={k}")
    return PrimeScalar(math.factorial(k), p).inverse()


# -- matrices -----------------------------------------------------------------

def as_matrix(m, p: int) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return kernels.matmul_mod(a, b, p)


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = identity(a.shape[0])
    base = np.asarray(a, dtype=np.int64) % p
    while k:
        if k & 1:
            result = matmul(result, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return result


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m.copy() % p, []
    return kernels.rref_mod(m, p)


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def row_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Echelonized basis of the row space (rows of the reduced echelon form)."""
    r, piv = rref(m, p)
    return r[: len(piv)]


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of {v : m v = 0}, one row per free column, ordered by column index."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(piv):
            basis[row, pc] = (-r[i, f]) % p
    return basis


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, identity(n)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:].copy()


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    if len(basis) == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([basis, v]), p) == rank(basis, p)


def same_span(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    ra, rb = row_basis(a, p), row_basis(b, p)
    return ra.shape == rb.shape and bool(np.array_equal(ra, rb))


def encode(m: np.ndarray, p: int) -> bytes:
    """Injective byte key of a reduced matrix (row-major, fixed width)."""
    dtype = np.uint8 if p < 256 else np.uint16 if p < 65536 else np.uint32
    return np.ascontiguousarray(m, dtype=dtype).tobytes()

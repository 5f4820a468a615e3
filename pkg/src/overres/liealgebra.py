"""Chevalley-basis restricted Lie algebras over F_p.

The basis is ordered negative root vectors, Cartan elements h_1..h_r,
positive root vectors (each root block in the order of
``RootSystem.positive_roots``).  Structure constants are computed over Z
with the extraspecial-pair sign algorithm and then reduced mod p.

The p-operation on arbitrary elements is evaluated by Jacobson's formula,
which only needs brackets, starting from h_i^[p] = h_i and e_a^[p] = 0.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
import scipy.sparse as sp

from overres import primefield as pf
from overres.rootdata import RootSystem, build_root_system

CONE_DIM_CAP = 10
CONE_POINT_CAP = int(os.environ.get("OVERRES_CONE_CAP", 2_000_000))


class JacobiError(ArithmeticError):
    pass


# -- integral structure constants -----------------------------------------------

def _neg(a):
    return tuple(-c for c in a)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _is_positive(a) -> bool:
    return sum(a) > 0


def _string_below(rs: RootSystem, a, b) -> int:
    """Largest r with b - r a a root."""
    r = 0
    while rs.is_root(tuple(y - (r + 1) * x for x, y in zip(a, b))):
        r += 1
    return r


@lru_cache(maxsize=None)
def structure_constants(rs: RootSystem) -> dict:
    """N_{x,y} for all roots x, y with x + y a root ([e_x, e_y] = N_{x,y} e_{x+y})."""
    order = {a: i for i, a in enumerate(rs.positive_roots)}
    norm = {a: rs.inner(a, a) for a in rs.roots}
    pos: dict = {}

    def n_of(x, y) -> Fraction:
        px, py = _is_positive(x), _is_positive(y)
        if px and py:
            if order[x] < order[y]:
                return pos[(x, y)]
            return -pos[(y, x)]
        if not px and not py:
            return -n_of(_neg(x), _neg(y))
        # x + y + z = 0; move to the cyclic pair whose roots share a sign
        z = _neg(_add(x, y))
        if _is_positive(y) == _is_positive(z):
            return Fraction(norm[z], norm[x]) * n_of(y, z)
        return Fraction(norm[z], norm[y]) * n_of(z, x)

    for zeta in rs.positive_roots:
        pairs = [(a, tuple(c - x for c, x in zip(zeta, a))) for a in rs.positive_roots]
        pairs = [(a, b) for a, b in pairs if rs.is_root(b) and sum(b) > 0 and order[a] < order[b]]
        if not pairs:
            continue
        alpha, beta = pairs[0]
        n_ab = Fraction(_string_below(rs, alpha, beta) + 1)
        pos[(alpha, beta)] = n_ab
        for xi, eta in pairs[1:]:
            total = Fraction(0)
            d1 = _add(beta, _neg(xi))
            if rs.is_root(d1):
                total += n_of(beta, _neg(xi)) * n_of(alpha, _neg(eta)) / norm[d1]
            d2 = _add(alpha, _neg(xi))
            if rs.is_root(d2):
                total += n_of(_neg(xi), alpha) * n_of(beta, _neg(eta)) / norm[d2]
            pos[(xi, eta)] = norm[zeta] / n_ab * total

    out = {}
    for x in rs.roots:
        for y in rs.roots:
            if rs.is_root(_add(x, y)):
                v = n_of(x, y)
                if v.denominator != 1:
                    raise JacobiError(f"non-integral structure constant N{x},{y} = {v}")
                out[(x, y)] = int(v)
    return out


@lru_cache(maxsize=None)
def _integral_table(rs: RootSystem) -> tuple:
    """COO arrays (A, B, D, C): [x_A, x_B] gets C * x_D, over Z."""
    npos = len(rs.positive_roots)
    r = rs.rank
    roots = rs.roots

    def root_idx(a):
        i = rs.root_index[a]
        return i if i < npos else i + r

    ncoef = structure_constants(rs)
    rows = []
    for a in roots:
        ia = root_idx(a)
        for b in roots:
            ib = root_idx(b)
            s = _add(a, b)
            if not any(s):
                for i, c in enumerate(rs.coroot(a)):
                    if c:
                        rows.append((ia, ib, npos + i, c))
            elif (a, b) in ncoef:
                rows.append((ia, ib, root_idx(s), ncoef[(a, b)]))
        pairing = rs.cartan @ np.asarray(a)
        for i in range(r):
            if pairing[i]:
                rows.append((npos + i, ia, ia, int(pairing[i])))
                rows.append((ia, npos + i, ia, -int(pairing[i])))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 4)
    return tuple(arr[:, k].copy() for k in range(4))


def _bracket_operator(table, dim: int) -> sp.csr_matrix:
    """Sparse (dim*dim, dim) matrix sending basis pair (a, b) to [x_a, x_b]."""
    a, b, d, c = table
    return sp.csr_matrix((c, (a * dim + b, d)), shape=(dim * dim, dim), dtype=np.int64)


def _sparse_ad(table, dim: int, x: np.ndarray) -> sp.csr_matrix:
    a, b, d, c = table
    vals = x[a] * c
    keep = vals != 0
    return sp.csr_matrix((vals[keep], (d[keep], b[keep])), shape=(dim, dim), dtype=np.int64)


def derivation_defect(table, dim: int, x: np.ndarray, modulus: int | None = None) -> int:
    """Number of nonzero entries of ad(x)[y,z] - [ad(x)y, z] - [y, ad(x)z] over basis pairs."""
    cmat = _bracket_operator(table, dim)
    m = _sparse_ad(table, dim, np.asarray(x, dtype=np.int64))
    eye = sp.identity(dim, dtype=np.int64, format="csr")
    defect = cmat @ m.T - sp.kron(m.T, eye, format="csr") @ cmat - sp.kron(eye, m.T, format="csr") @ cmat
    defect = defect.tocoo()
    vals = defect.data if modulus is None else defect.data % modulus
    return int(np.count_nonzero(vals))


def _jacobi_holds(table, dim: int, elements, modulus: int | None = None) -> bool:
    for x in elements:
        if derivation_defect(table, dim, x, modulus):
            return False
    return True


@lru_cache(maxsize=None)
def _checked_integral_table(rs: RootSystem) -> tuple:
    table = _integral_table(rs)
    npos = len(rs.positive_roots)
    dim = 2 * npos + rs.rank
    gens = []
    for i in range(rs.rank):
        simple = tuple(int(i == j) for j in range(rs.rank))
        k = rs.positive_roots.index(simple)
        for idx in (k, npos + rs.rank + k):
            v = np.zeros(dim, dtype=np.int64)
            v[idx] = 1
            gens.append(v)
    # ad of each Chevalley generator is a derivation; these generate g over Q,
    # so the Jacobi identity holds on all of g
    if not _jacobi_holds(table, dim, gens):
        raise JacobiError(f"Jacobi identity fails for {rs.label}")
    return table


# -- the algebra ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RestrictedLieAlgebra:
    """Finite-dimensional restricted Lie algebra over F_p with a fixed basis.

    ``table`` holds COO structure constants (A, B, D, C) meaning
    [x_A, x_B] += C x_D; ``pmap[a]`` is the coordinate vector of x_a^[p].
    ``grades`` gives each basis vector's root (zero tuple for the torus).
    """

    p: int
    labels: tuple
    table: tuple = field(repr=False)
    pmap: np.ndarray = field(repr=False)
    grades: tuple = field(repr=False, default=())
    root_system: RootSystem | None = field(repr=False, default=None)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def name(self) -> str:
        return self.root_system.label if self.root_system else f"dim{self.dim}"

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def element(self, coeffs: dict) -> np.ndarray:
        """Vector from {label or index: coefficient}."""
        v = self.zero()
        for key, c in coeffs.items():
            idx = self.labels.index(key) if isinstance(key, str) else int(key)
            v[idx] = (v[idx] + c) % self.p
        return v

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def bracket_terms(self) -> dict:
        """{(a, b): [(d, c), ...]} for basis brackets, coefficients mod p, zeros dropped."""
        out: dict = {}
        for a, b, d, c in zip(*self.table):
            out.setdefault((int(a), int(b)), []).append((int(d), int(c)))
        return out

    def bracket(self, x, y) -> np.ndarray:
        a, b, d, c = self.table
        out = self.zero()
        vals = np.asarray(x, dtype=np.int64)[a] * np.asarray(y, dtype=np.int64)[b] % self.p * c
        np.add.at(out, d, vals)
        return out % self.p

    def adjoint_matrix(self, x) -> np.ndarray:
        a, b, d, c = self.table
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        np.add.at(m, (d, b), np.asarray(x, dtype=np.int64)[a] * c)
        return m % self.p

    @cached_property
    def basis_adjoints(self) -> np.ndarray:
        return np.stack([self.adjoint_matrix(self.basis_vector(i)) for i in range(self.dim)]) \
            if self.dim else np.zeros((0, 0, 0), dtype=np.int64)

    def p_power(self, x) -> np.ndarray:
        """x^[p] by Jacobson's formula, adding one basis term at a time."""
        x = np.asarray(x, dtype=np.int64) % self.p
        acc = self.zero()
        acc_p = self.zero()
        for i in np.nonzero(x)[0]:
            y = self.zero()
            y[i] = x[i]
            y_p = x[i] * self.pmap[i] % self.p  # (c x)^[p] = c^p x^[p] = c x^[p]
            acc_p = (acc_p + y_p + self._jacobson_correction(acc, y)) % self.p
            acc = (acc + y) % self.p
        return acc_p

    def _jacobson_correction(self, x, y) -> np.ndarray:
        """sum_i s_i(x, y), where i s_i is the t^(i-1) coefficient of ad(tx+y)^(p-1)(x)."""
        p = self.p
        if not x.any() or not y.any():
            return self.zero()
        adx, ady = self.adjoint_matrix(x), self.adjoint_matrix(y)
        coeffs = [x.copy()]  # polynomial in t, coeffs[k] is the t^k part
        for _ in range(p - 1):
            nxt = [np.zeros_like(x) for _ in range(len(coeffs) + 1)]
            for k, v in enumerate(coeffs):
                if v.any():
                    nxt[k] = (nxt[k] + ady @ v) % p
                    nxt[k + 1] = (nxt[k + 1] + adx @ v) % p
            coeffs = nxt
        total = self.zero()
        for i in range(1, p):
            total = (total + coeffs[i - 1] * pow(i, -1, p)) % p
        return total

    def is_p_nilpotent(self, x) -> bool:
        return not self.p_power(x).any()

    def __repr__(self):
        return f"RestrictedLieAlgebra({self.name}, p={self.p}, dim={self.dim})"


def basis_labels(rs: RootSystem) -> tuple:
    def fmt(a):
        return "".join(str(abs(c)) for c in a)

    neg = tuple(f"f{fmt(a)}" for a in rs.positive_roots)
    cart = tuple(f"h{i + 1}" for i in range(rs.rank))
    pos = tuple(f"e{fmt(a)}" for a in rs.positive_roots)
    if rs.label == "A1":
        return ("f", "h", "e")
    return neg + cart + pos


@lru_cache(maxsize=None)
def _chevalley(kind: str, rank: int, p: int) -> RestrictedLieAlgebra:
    rs = build_root_system(kind, rank)
    a, b, d, c = _checked_integral_table(rs)
    c = c % p
    keep = c != 0
    table = tuple(arr[keep].copy() for arr in (a, b, d, c))
    npos = len(rs.positive_roots)
    dim = 2 * npos + rank
    pmap = np.zeros((dim, dim), dtype=np.int64)
    for i in range(rank):
        pmap[npos + i, npos + i] = 1
    zero = (0,) * rank
    grades = tuple(_neg(a_) for a_ in rs.positive_roots) + (zero,) * rank + tuple(rs.positive_roots)
    return RestrictedLieAlgebra(p, basis_labels(rs), table, pmap, grades, rs)


def chevalley_algebra(rs: RootSystem | str, p: int) -> RestrictedLieAlgebra:
    p = pf.check_prime(p)
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return _chevalley(rs.kind, rs.rank, p)


def zero_algebra(p: int) -> RestrictedLieAlgebra:
    p = pf.check_prime(p)
    empty = tuple(np.zeros(0, dtype=np.int64) for _ in range(4))
    return RestrictedLieAlgebra(p, (), empty, np.zeros((0, 0), dtype=np.int64))


def adjoint_matrix(g: RestrictedLieAlgebra, x) -> np.ndarray:
    return g.adjoint_matrix(x)


def p_power(g: RestrictedLieAlgebra, x) -> np.ndarray:
    return g.p_power(x)


def is_p_nilpotent(g: RestrictedLieAlgebra, x) -> bool:
    return g.is_p_nilpotent(x)


# -- verification ---------------------------------------------------------------

def verify_jacobi(g: RestrictedLieAlgebra, exhaustive: bool = True) -> bool:
    """Jacobi identity mod p: ad(x) is a derivation for every basis x (or the generators)."""
    if g.dim == 0:
        return True
    if exhaustive:
        elems = [g.basis_vector(i) for i in range(g.dim)]
    else:
        elems = [g.basis_vector(i) for i, gr in enumerate(g.grades) if sum(abs(c) for c in gr) == 1]
    return _jacobi_holds(g.table, g.dim, elems, g.p)


def jacobi_sample(g: RestrictedLieAlgebra, triples: int, rng: np.random.Generator) -> bool:
    """[[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on random triples."""
    for _ in range(triples):
        x, y, z = (rng.integers(0, g.p, g.dim) for _ in range(3))
        s = g.bracket(g.bracket(x, y), z) + g.bracket(g.bracket(y, z), x) + g.bracket(g.bracket(z, x), y)
        if np.any(s % g.p):
            return False
    return True


def verify_restricted(g: RestrictedLieAlgebra) -> bool:
    """ad(x^[p]) = ad(x)^p for all basis elements x."""
    for i in range(g.dim):
        lhs = g.adjoint_matrix(g.pmap[i])
        rhs = pf.matpow(g.basis_adjoints[i], g.p, g.p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


# -- subspaces ------------------------------------------------------------------

def centre(g: RestrictedLieAlgebra) -> np.ndarray:
    """Basis (rows) of Z(g) = intersection of ker ad(x) over basis elements x."""
    if g.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if g.root_system is None:
        stacked = np.concatenate(list(g.basis_adjoints), axis=0)
        return pf.nullspace(stacked, g.p)
    rs = g.root_system
    # the torus acts diagonally, so central elements live on weight-0 (mod p) basis vectors
    cand = [i for i, gr in enumerate(g.grades)
            if not np.any((rs.cartan @ np.asarray(gr, dtype=np.int64)) % g.p)]
    col = {b: k for k, b in enumerate(cand)}
    a, b, d, c = g.table
    is_root = np.array([any(gr) for gr in g.grades])
    sel = is_root[a] & np.isin(b, cand)
    # one equation per (root vector e, output coordinate): coefficient of x_d in [e, z]
    keys = a[sel] * g.dim + d[sel]
    uniq, row = np.unique(keys, return_inverse=True)
    eqs = np.zeros((len(uniq), len(cand)), dtype=np.int64)
    np.add.at(eqs, (row, [col[int(x)] for x in b[sel]]), c[sel])
    eqs %= g.p
    null = pf.nullspace(eqs, g.p) if len(eqs) else np.eye(len(cand), dtype=np.int64)
    out = np.zeros((len(null), g.dim), dtype=np.int64)
    out[:, cand] = null
    return pf.row_basis(out, g.p) if len(out) else out


@lru_cache(maxsize=None)
def centre_dimension(kind: str, rank: int, p: int) -> int:
    return len(centre(chevalley_algebra(build_root_system(kind, rank), p)))


@dataclass(frozen=True)
class Subalgebra:
    basis: np.ndarray
    restricted_closed: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def generated_subalgebra(g: RestrictedLieAlgebra, gens) -> Subalgebra:
    """Smallest bracket-closed subspace containing ``gens``; flags closure under [p]."""
    p = g.p
    gens = [np.asarray(v, dtype=np.int64) % p for v in gens]
    gens = [v for v in gens if v.any()]
    if not gens:
        return Subalgebra(np.zeros((0, g.dim), dtype=np.int64), True)
    basis = pf.row_basis(np.array(gens), p)
    new = list(basis)
    while new:
        brackets = [g.bracket(u, v) for u in new for v in basis]
        brackets = [w for w in brackets if w.any()]
        if not brackets:
            break
        grown = pf.row_basis(np.vstack([basis] + brackets), p)
        if len(grown) == len(basis):
            break
        # new directions: reduce the candidates against the old span
        new = [w for w in brackets if not pf.in_span(basis, w, p)]
        basis = grown
    # closure under [p] on a basis suffices: Jacobson's correction terms are brackets
    closed = all(pf.in_span(basis, g.p_power(v), p) for v in basis)
    return Subalgebra(basis, closed)


def is_bracket_closed(g: RestrictedLieAlgebra, basis) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    return all(pf.in_span(basis, g.bracket(u, v), g.p) for u in basis for v in basis)


@dataclass(frozen=True)
class ConeReport:
    points: list
    span_dim: int

    @property
    def size(self) -> int:
        return len(self.points)


def np_cone_points(g: RestrictedLieAlgebra) -> ConeReport:
    """All F_p-points x of g with x^[p] = 0, and the dimension of their span."""
    if g.dim > CONE_DIM_CAP:
        raise ValueError(f"cone enumeration needs dim <= {CONE_DIM_CAP}, got {g.dim}")
    total = g.p ** g.dim
    if total > CONE_POINT_CAP:
        raise ValueError(f"cone enumeration needs p^dim <= {CONE_POINT_CAP}, got {total}")
    if g.dim == 0:
        return ConeReport([g.zero()], 0)
    faithful_ad = len(centre(g)) == 0
    points = []
    for coeffs in itertools.product(range(g.p), repeat=g.dim):
        x = np.array(coeffs, dtype=np.int64)
        if faithful_ad:
            # ad is injective, so x^[p] = 0 iff ad(x)^p = 0
            nil = not pf.matpow(g.adjoint_matrix(x), g.p, g.p).any()
        else:
            nil = g.is_p_nilpotent(x)
        if nil:
            points.append(x)
    span = pf.rank(np.array(points), g.p) if points else 0
    return ConeReport(points, span)


def integral_adjoint(g: RestrictedLieAlgebra, i: int) -> np.ndarray:
    """ad(x_i) over Z for a Chevalley algebra (before reduction mod p)."""
    if g.root_system is None:
        raise ValueError("integral form needs a root system")
    a, b, d, c = _checked_integral_table(g.root_system)
    m = np.zeros((g.dim, g.dim), dtype=np.int64)
    sel = a == i
    np.add.at(m, (d[sel], b[sel]), c[sel])
    return m


def chevalley_automorphism(g: RestrictedLieAlgebra, i: int, t: int) -> np.ndarray:
    """exp(t ad e) = sum_k t^k ad(e)^k / k! computed over Z, then reduced mod p."""
    ad = integral_adjoint(g, i)
    out = np.eye(g.dim, dtype=object)
    power = np.eye(g.dim, dtype=object)
    k = 0
    while True:
        k += 1
        power = power.dot(ad.astype(object))
        if not power.any():
            break
        out = out + power * (t ** k) // math.factorial(k)
    return (out % g.p).astype(np.int64)

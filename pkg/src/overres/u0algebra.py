"""The restricted enveloping algebra U_0(g) in its PBW basis.

A monomial is an exponent tuple over the ordered Lie basis with every
exponent < p.  Products are straightened by moving letters left past
larger-index letters (adding brackets) and rewriting x^p as x^[p].
"""
from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from overres import primefield as pf
from overres.liealgebra import RestrictedLieAlgebra

DENSE_CAP = 4096
SCALE_CAP = 1_000_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def _add_into(acc: dict, terms: dict, scale: int, p: int) -> None:
    for m, c in terms.items():
        v = (acc.get(m, 0) + scale * c) % p
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


class U0Element:
    """Finite F_p-combination of PBW monomials; immutable by convention."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: U0Algebra, terms: dict):
        self.algebra = algebra
        self.terms = {m: c % algebra.p for m, c in terms.items() if c % algebra.p}

    def _check(self, other):
        if isinstance(other, U0Element):
            if other.algebra is not self.algebra:
                raise ValueError("elements of different algebras")
            return other
        if isinstance(other, (int, np.integer)):
            return self.algebra.scalar(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        acc = dict(self.terms)
        _add_into(acc, o.terms, 1, self.algebra.p)
        return U0Element(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return U0Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return U0Element(self.algebra, {m: c * int(other) for m, c in self.terms.items()})
        o = self._check(other)
        return o if o is NotImplemented else self.algebra.multiply(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.algebra.monomial_name(m)}" for m, c in self.sorted_terms())


class TensorElement:
    """F_p-combination of pairs of PBW monomials (an element of U_0 (x) U_0)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: U0Algebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: c % algebra.p for k, c in terms.items() if c % algebra.p}

    def __add__(self, other: TensorElement):
        acc = dict(self.terms)
        _add_into(acc, other.terms, 1, self.algebra.p)
        return TensorElement(self.algebra, acc)

    def __sub__(self, other: TensorElement):
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1, self.algebra.p)
        return TensorElement(self.algebra, acc)

    def __mul__(self, other: TensorElement):
        u = self.algebra
        acc: dict = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                left = u.multiply_monomials(a1, b1)
                right = u.multiply_monomials(a2, b2)
                for m1, x in left.items():
                    for m2, y in right.items():
                        key = (m1, m2)
                        acc[key] = (acc.get(key, 0) + c * d * x * y) % u.p
        return TensorElement(u, acc)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        u = self.algebra
        items = sorted(self.terms.items(), key=lambda kc: (sum(kc[0][0]) + sum(kc[0][1]), kc[0]))
        return " + ".join(f"{c}*{u.monomial_name(a)}(x){u.monomial_name(b)}" for (a, b), c in items)


@dataclass(eq=False)
class U0Algebra:
    lie: RestrictedLieAlgebra
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.lie.p

    @property
    def dim(self) -> int:
        return self.lie.p ** self.lie.dim

    @cached_property
    def unit_monomial(self) -> tuple:
        return (0,) * self.lie.dim

    def one(self) -> U0Element:
        return U0Element(self, {self.unit_monomial: 1})

    def scalar(self, c: int) -> U0Element:
        return U0Element(self, {self.unit_monomial: c})

    def zero(self) -> U0Element:
        return U0Element(self, {})

    def generator(self, i: int) -> U0Element:
        m = [0] * self.lie.dim
        m[i] = 1
        return U0Element(self, {tuple(m): 1})

    def monomial(self, exps) -> U0Element:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.lie.dim or any(not 0 <= e < self.p for e in exps):
            raise ValueError(f"not a PBW monomial: {exps}")
        return U0Element(self, {exps: 1})

    def from_lie(self, x) -> U0Element:
        return U0Element(self, {tuple(int(i == j) for j in range(self.lie.dim)): int(c)
                                for i, c in enumerate(np.asarray(x)) if c % self.p})

    def monomial_name(self, m) -> str:
        if not any(m):
            return "1"
        parts = []
        for lab, e in zip(self.lie.labels, m):
            if e:
                parts.append(lab if e == 1 else f"{lab}^{e}")
        return "*".join(parts)

    @cached_property
    def monomials(self) -> list:
        """All PBW monomials, ordered by total degree then exponent tuple."""
        if self.dim > SCALE_CAP:
            raise ValueError(f"dim U_0 = {self.dim} exceeds {SCALE_CAP}")
        ms = list(itertools.product(range(self.p), repeat=self.lie.dim))
        return sorted(ms, key=lambda m: (sum(m), m))

    @cached_property
    def monomial_index(self) -> dict:
        return {m: i for i, m in enumerate(self.monomials)}

    # -- straightening -------------------------------------------------------

    def lmul(self, a: int, mono: tuple) -> dict:
        """x_a * mono as {monomial: coefficient}; memoized pure cache."""
        key = (a, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = self._lmul(a, mono)
        self._memo[key] = out
        return out

    def _lmul(self, a: int, mono: tuple) -> dict:
        p = self.p
        j = next((i for i, e in enumerate(mono) if e), None)
        if j is None or a < j:
            m = list(mono)
            m[a] = 1
            return {tuple(m): 1}
        if a == j:
            m = list(mono)
            if m[a] + 1 < p:
                m[a] += 1
                return {tuple(m): 1}
            # x_a^p R = x_a^[p] R, and R only involves letters after a
            m[a] = 0
            rest = tuple(m)
            out: dict = {}
            for d in np.nonzero(self.lie.pmap[a])[0]:
                _add_into(out, self.lmul(int(d), rest), int(self.lie.pmap[a][d]), p)
            return out
        # a > j: x_a x_j R' = x_j (x_a R') + [x_a, x_j] R'
        m = list(mono)
        m[j] -= 1
        rest = tuple(m)
        out = {}
        for mono2, c in self.lmul(a, rest).items():
            _add_into(out, self.lmul(j, mono2), c, p)
        for d, c in self.lie.bracket_terms.get((a, j), ()):
            _add_into(out, self.lmul(d, rest), c, p)
        return out

    def letters(self, mono: tuple) -> list:
        return [i for i, e in enumerate(mono) for _ in range(e)]

    def multiply_monomials(self, a: tuple, b: tuple) -> dict:
        cur = {b: 1}
        for letter in reversed(self.letters(a)):
            nxt: dict = {}
            for m, c in cur.items():
                _add_into(nxt, self.lmul(letter, m), c, self.p)
            cur = nxt
        return cur

    def multiply(self, x: U0Element, y: U0Element) -> U0Element:
        acc: dict = {}
        for ma, ca in x.terms.items():
            for mb, cb in y.terms.items():
                _add_into(acc, self.multiply_monomials(ma, mb), ca * cb, self.p)
        return U0Element(self, acc)

    # -- Hopf structure --------------------------------------------------------

    def coproduct(self, x: U0Element) -> TensorElement:
        acc: dict = {}
        for m, c in x.terms.items():
            for split in itertools.product(*(range(k + 1) for k in m)):
                coeff = c
                for k, i in zip(m, split):
                    coeff = coeff * math.comb(k, i) % self.p
                if coeff:
                    left = tuple(split)
                    right = tuple(k - i for k, i in zip(m, split))
                    key = (left, right)
                    acc[key] = (acc.get(key, 0) + coeff) % self.p
        return TensorElement(self, acc)

    def antipode(self, x: U0Element) -> U0Element:
        acc: dict = {}
        for m, c in x.terms.items():
            cur = {self.unit_monomial: 1}
            # S(x_1 ... x_n) = (-1)^n x_n ... x_1: push letters onto the left in order
            for letter in self.letters(m):
                nxt: dict = {}
                for mm, cc in cur.items():
                    _add_into(nxt, self.lmul(letter, mm), cc, self.p)
                cur = nxt
            _add_into(acc, cur, c * (-1) ** sum(m), self.p)
        return U0Element(self, acc)

    def counit(self, x: U0Element) -> int:
        return x.terms.get(self.unit_monomial, 0)

    def tensor(self, a: U0Element, b: U0Element) -> TensorElement:
        return TensorElement(self, {(m1, m2): c1 * c2 for m1, c1 in a.terms.items()
                                    for m2, c2 in b.terms.items()})

    def mult_after(self, t: TensorElement, left_map=None, right_map=None) -> U0Element:
        """m o (left_map (x) right_map) applied to t (identity maps when None)."""
        acc = self.zero()
        for (a, b), c in t.terms.items():
            xa = U0Element(self, {a: 1})
            xb = U0Element(self, {b: 1})
            if left_map:
                xa = left_map(xa)
            if right_map:
                xb = right_map(xb)
            acc = acc + (xa * xb) * c
        return acc

    # -- vectors and matrices --------------------------------------------------

    def to_vector(self, x: U0Element) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for m, c in x.terms.items():
            v[self.monomial_index[m]] = c
        return v

    def from_vector(self, v) -> U0Element:
        return U0Element(self, {self.monomials[i]: int(c) for i, c in enumerate(v) if c})

    def _check_dense(self):
        if self.dim > DENSE_CAP:
            raise ValueError(f"dense matrices need dim U_0 <= {DENSE_CAP}, got {self.dim}")

    def left_matrix(self, a: int) -> np.ndarray:
        """Matrix of left multiplication by the Lie basis element x_a."""
        self._check_dense()
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        for col, m in enumerate(self.monomials):
            for mm, c in self.lmul(a, m).items():
                mat[self.monomial_index[mm], col] = c
        return mat

    @cached_property
    def left_matrices(self) -> list:
        return [self.left_matrix(a) for a in range(self.lie.dim)]

    def monomial_matrix(self, m: tuple) -> np.ndarray:
        out = pf.identity(self.dim)
        for letter in self.letters(m):
            out = pf.matmul(out, self.left_matrices[letter], self.p)
        return out

    def grade(self, m: tuple) -> tuple:
        """Root-lattice grade of a monomial (sum of its letters' roots)."""
        grades = self.lie.grades
        r = len(grades[0]) if grades else 0
        return tuple(sum(e * grades[i][k] for i, e in enumerate(m)) for k in range(r))


def exp_element(u: U0Algebra, x) -> U0Element:
    """sum_{k<p} x^k / k! for a p-nilpotent x of the Lie algebra."""
    if not u.lie.is_p_nilpotent(x):
        raise ValueError("exp_element needs x^[p] = 0")
    xe = u.from_lie(x)
    out = u.zero()
    power = u.one()
    for k in range(u.p):
        out = out + power * int(pf.factorial_inverse(k, u.p))
        power = power * xe
    return out


@dataclass(frozen=True)
class DeviationReport:
    max_degree: int | None      # min over terms of max(deg left, deg right)
    total_degree: int | None    # min over terms of deg left + deg right
    terms: int


def deviation_report(u: U0Algebra, x) -> DeviationReport:
    ex = exp_element(u, x)
    diff = u.coproduct(ex) - u.tensor(ex, ex)
    if diff.is_zero():
        return DeviationReport(None, None, 0)
    pairs = [(sum(a), sum(b)) for a, b in diff.terms]
    return DeviationReport(min(max(i, j) for i, j in pairs), min(i + j for i, j in pairs), len(pairs))


def deviation_degree(u: U0Algebra, x) -> int | None:
    """Smallest max(i, j) over the terms x^i (x) x^j of Delta(e^x) - e^x (x) e^x."""
    return deviation_report(u, x).max_degree


def hopf_axioms_hold(u: U0Algebra, elements=None) -> bool:
    """Delta multiplicative, counit and antipode axioms, and S^2 = id, on the given elements."""
    if elements is None:
        elements = [u.from_lie(u.lie.basis_vector(i)) for i in range(u.lie.dim)] + [u.one()]
    one = u.one()
    for a in elements:
        d = u.coproduct(a)
        eps = u.counit(a)
        if u.mult_after(d, left_map=u.antipode) != one * eps:
            return False
        if u.mult_after(d, right_map=u.antipode) != one * eps:
            return False
        if u.antipode(u.antipode(a)) != a:
            return False
        for b in elements:
            if u.coproduct(a * b) != d * u.coproduct(b):
                return False
    return True


# -- the over-restricted quotient --------------------------------------------------

def over_ideal_generators(u: U0Algebra) -> list:
    """e_a^m for every root vector e_a, m = floor((p+1)/2)."""
    m = (u.p + 1) // 2
    out = []
    for i, gr in enumerate(u.lie.grades):
        if any(gr):
            out.append(u.generator(i) ** m)
    return out


def _ideal_by_closure(u: U0Algebra, gens) -> int:
    p = u.p
    basis = pf.row_basis(np.array([u.to_vector(g) for g in gens]), p)
    frontier = [u.from_vector(v) for v in basis]
    lie_gens = [u.generator(i) for i in range(u.lie.dim)]
    while frontier:
        cand = []
        for s in frontier:
            for x in lie_gens:
                cand.append(u.to_vector(x * s))
                cand.append(u.to_vector(s * x))
        grown = pf.row_basis(np.vstack([basis] + cand), p)
        if len(grown) == len(basis):
            break
        new_rows = [c for c in cand if c.any() and not pf.in_span(basis, c, p)]
        basis = grown
        frontier = [u.from_vector(v) for v in pf.row_basis(np.array(new_rows), p)]
    return len(basis)


def _ideal_by_regular_rep(u: U0Algebra, gens) -> int:
    p = u.p
    vecs = [u.to_vector(g) for g in gens]
    mats = [u.monomial_matrix(m) for m in u.monomials]
    # left ideal U g: columns L_m g
    left = pf.row_basis(np.array([pf.matmul(mat, v.reshape(-1, 1), p).ravel()
                                  for mat in mats for v in vecs]), p)
    # right multiplication by every monomial closes it to the two-sided ideal
    rows = [left]
    for m in u.monomials:
        right = np.array([u.to_vector(u.from_vector(v) * U0Element(u, {m: 1})) for v in left])
        rows.append(right)
    return pf.rank(np.vstack(rows), p)


@dataclass(frozen=True)
class OverEnvReport:
    dim_u0: int
    dim_ideal_closure: int
    dim_ideal_regular: int

    @property
    def agree(self) -> bool:
        return self.dim_ideal_closure == self.dim_ideal_regular

    @property
    def dimension(self) -> int:
        return self.dim_u0 - self.dim_ideal_closure


def over_env_report(u: U0Algebra) -> OverEnvReport:
    u._check_dense()
    gens = over_ideal_generators(u)
    return OverEnvReport(u.dim, _ideal_by_closure(u, gens), _ideal_by_regular_rep(u, gens))


def over_env_dimension(u: U0Algebra) -> int:
    """dim U_0 / <e_a^floor((p+1)/2)>; both ideal oracles must agree."""
    rep = over_env_report(u)
    if not rep.agree:
        raise ArithmeticError(f"ideal oracles disagree: {rep}")
    return rep.dimension

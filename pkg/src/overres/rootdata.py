"""Finite root systems of types A-G and the weight combinatorics built on them.

Simple roots follow Bourbaki numbering except that in G2 the first simple
root is the short one.  Roots are integer tuples in the simple-root basis;
weights are integer tuples in the fundamental-weight basis.  The Cartan
matrix is ``cartan[i][j] = <alpha_j, alpha_i^vee>``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

Root = tuple
Weight = tuple

RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _gram(kind: str, r: int) -> np.ndarray:
    """Symmetric form (alpha_i, alpha_j) on simple roots, short roots of length^2 2."""
    g = np.zeros((r, r), dtype=np.int64)
    if kind in "ADE":
        np.fill_diagonal(g, 2)
        if kind == "A":
            edges = [(i, i + 1) for i in range(r - 1)]
        elif kind == "D":
            edges = [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
        else:
            edges = [(0, 2), (2, 3), (3, 4), (1, 3), (4, 5), (5, 6), (6, 7)]
            edges = [(i, j) for i, j in edges if j < r]
        for i, j in edges:
            g[i, j] = g[j, i] = -1
    elif kind == "B":
        np.fill_diagonal(g, 4)
        g[r - 1, r - 1] = 2
        for i in range(r - 1):
            g[i, i + 1] = g[i + 1, i] = -2
    elif kind == "C":
        np.fill_diagonal(g, 2)
        g[r - 1, r - 1] = 4
        for i in range(r - 2):
            g[i, i + 1] = g[i + 1, i] = -1
        g[r - 2, r - 1] = g[r - 1, r - 2] = -2
    elif kind == "F":
        g[:] = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif kind == "G":
        g[:] = [[2, -3], [-3, 6]]
    return g


def parse_label(label: str) -> tuple[str, int]:
    """'E8' -> ('E', 8)."""
    label = label.strip().upper()
    if len(label) < 2 or label[0] not in RANK_RANGE or not label[1:].isdigit():
        raise ValueError(f"bad root system label {label!r}")
    return label[0], int(label[1:])


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    gram: np.ndarray = field(repr=False, compare=False)
    cartan: np.ndarray = field(repr=False, compare=False)
    positive_roots: tuple = field(repr=False, compare=False)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @cached_property
    def roots(self) -> tuple:
        """Negative roots (same order as positive ones), then positive roots."""
        neg = tuple(tuple(-c for c in a) for a in self.positive_roots)
        return neg + self.positive_roots

    @cached_property
    def root_index(self) -> dict:
        return {a: i for i, a in enumerate(self.roots)}

    def is_root(self, v) -> bool:
        return tuple(v) in self.root_index

    def inner(self, a, b) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def height(self, a) -> int:
        return int(sum(a))

    def coroot(self, a) -> tuple:
        """a^vee = 2a/(a,a) in the simple-coroot basis."""
        norm = self.inner(a, a)
        out = []
        for i, c in enumerate(a):
            q = Fraction(c * int(self.gram[i, i]), norm)
            if q.denominator != 1:
                raise ArithmeticError("non-integral coroot")
            out.append(int(q))
        return tuple(out)

    def to_weight(self, a) -> Weight:
        """Fundamental-weight coordinates of a root-lattice vector."""
        return tuple(int(x) for x in self.cartan @ np.asarray(a, dtype=np.int64))

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=lambda a: (sum(a), a))


def build_root_system(kind: str, rank: int | None = None) -> RootSystem:
    if rank is None:
        kind, rank = parse_label(kind)
    return _build(kind.upper(), int(rank))


@lru_cache(maxsize=None)
def _build(kind: str, rank: int) -> RootSystem:
    if kind not in RANK_RANGE:
        raise ValueError(f"unknown root system type {kind!r}")
    lo, hi = RANK_RANGE[kind]
    if rank < lo or (hi is not None and rank > hi):
        raise ValueError(f"rank {rank} out of range for type {kind}")
    g = _gram(kind, rank)
    cartan = np.array(
        [[2 * g[i, j] // g[i, i] for j in range(rank)] for i in range(rank)], dtype=np.int64
    )
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    # closure of the simple roots under simple reflections, kept positive
    while frontier:
        nxt = []
        for a in frontier:
            w = cartan @ np.asarray(a)
            for i in range(rank):
                b = list(a)
                b[i] -= int(w[i])
                b = tuple(b)
                if any(c < 0 for c in b) or b in found:
                    continue
                found.add(b)
                nxt.append(b)
        frontier = nxt
    pos = tuple(sorted(found, key=lambda a: (sum(a), a)))
    return RootSystem(kind, rank, g, cartan, pos)


def two_rho_coefficients(rs: RootSystem) -> tuple[tuple[int, ...], int]:
    """Coefficients a_i of 2*rho = sum of positive roots, and a = max a_i."""
    coeffs = tuple(int(x) for x in np.sum(np.array(rs.positive_roots), axis=0))
    return coeffs, max(coeffs)


def coxeter_number(rs: RootSystem) -> int:
    return rs.height(rs.highest_root) + 1


def positive_coroots(rs: RootSystem) -> list[tuple]:
    return [rs.coroot(a) for a in rs.positive_roots]


def pairing_vector(weight, rs: RootSystem) -> list[int]:
    """<weight + rho, beta^vee> for every positive root beta (in root order)."""
    shifted = np.asarray(weight, dtype=np.int64) + 1
    return [int(np.dot(c, shifted)) for c in positive_coroots(rs)]


@dataclass(frozen=True)
class AlcoveReport:
    pairings: tuple
    bands: tuple
    on_wall: bool
    count_below: int | None
    # the same count under other orderings of alcoves, keyed by convention name
    other_counts: dict = field(default_factory=dict)


def _bands(pairings, modulus) -> tuple:
    return tuple(x // modulus for x in pairings)


def dominant_alcove_bands(rs: RootSystem, p: int, bound: tuple) -> set[tuple]:
    """Band vectors of all dominant p-alcoves whose bands are <= ``bound``.

    Each alcove has its barycentre on the lattice (p/D) Z^r with
    D = (rank + 1) * lcm(coefficients of the highest coroot); affine
    reflections preserve that lattice, so scanning it meets every alcove.
    """
    cor = np.array(positive_coroots(rs), dtype=np.int64)
    top = max(positive_coroots(rs), key=lambda c: (sum(c), c))
    scale = (rs.rank + 1) * math.lcm(*top)
    limit = [scale * (b + 1) for b in bound]
    simple_idx = [rs.positive_roots.index(tuple(int(i == j) for j in range(rs.rank)))
                  for i in range(rs.rank)]
    ranges = [range(1, limit[k]) for k in simple_idx]
    seen = set()
    for m in itertools.product(*ranges):
        vals = cor @ np.asarray(m)
        if np.any(vals % scale == 0):
            continue
        band = tuple(int(v) for v in vals // scale)
        if all(b <= c for b, c in zip(band, bound)):
            seen.add(band)
    return seen


def alcove_bands(weight, p: int, rs: RootSystem) -> AlcoveReport:
    """Band vector floor(<weight+rho, beta^vee>/p) and the dominant alcoves below.

    "Below" means: another dominant alcove whose band vector is componentwise
    <= this one and differs from it.  Two other orderings are reported in
    ``other_counts``: ``fewer_walls`` (strictly fewer walls crossed from the
    fundamental alcove) and ``highest_coroot_band`` (other alcoves whose
    band for the highest coroot is <= ours).  Counting needs rank <= 2.
    """
    pair = pairing_vector(weight, rs)
    bands = _bands(pair, p)
    on_wall = any(x % p == 0 for x in pair)
    if on_wall or min(pair) <= 0 or rs.rank > 2:
        return AlcoveReport(tuple(pair), bands, on_wall, None)
    below = dominant_alcove_bands(rs, p, bands) - {bands}
    cors = positive_coroots(rs)
    top = cors.index(max(cors, key=lambda c: (sum(c), c)))
    top_band = bands[top]
    near = dominant_alcove_bands(rs, p, (top_band,) * len(bands)) - {bands}
    short = dominant_alcove_bands(rs, p, (sum(bands),) * len(bands))
    others = {
        "fewer_walls": sum(1 for b in short if sum(b) < sum(bands)),
        "highest_coroot_band": sum(1 for b in near if b[top] <= top_band),
    }
    return AlcoveReport(tuple(pair), bands, on_wall, len(below), others)


@dataclass(frozen=True)
class WallBounds:
    coroot: tuple
    value: int   # <weight, beta^vee>
    lower: int   # band * p - <rho, beta^vee>
    upper: int   # (band + 1) * p - <rho, beta^vee>

    @property
    def strict(self) -> bool:
        return self.lower < self.value < self.upper


def wall_bounds(weight, p: int, rs: RootSystem) -> list[WallBounds]:
    """For each positive coroot, the two walls of the band containing weight + rho."""
    out = []
    for c, shifted in zip(positive_coroots(rs), pairing_vector(weight, rs)):
        rho = sum(c)
        band = shifted // p
        out.append(WallBounds(c, shifted - rho, band * p - rho, (band + 1) * p - rho))
    return out


# -- Weyl characters -----------------------------------------------------------

def weyl_dimension(weight, rs: RootSystem) -> int:
    num = Fraction(1)
    rho_pair = [sum(c) for c in positive_coroots(rs)]
    for c, rp in zip(positive_coroots(rs), rho_pair):
        num *= Fraction(int(np.dot(c, np.asarray(weight) + 1)), rp)
    assert num.denominator == 1
    return int(num)


def _solve_exact(mat, rhs_cols):
    """Solve mat @ X = rhs over Q by Gauss-Jordan; returns X as Fraction rows."""
    r = len(mat)
    aug = [[Fraction(int(x)) for x in mat[i]] + [Fraction(c) for c in rhs_cols[i]]
           for i in range(r)]
    for col in range(r):
        piv = next(i for i in range(col, r) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[r:] for row in aug]


@lru_cache(maxsize=None)
def _weight_form(rs: RootSystem) -> tuple:
    """(omega_i, omega_j) as Fractions; omega_i = sum_k M[i][k] alpha_k with M = (C^T)^-1."""
    r = rs.rank
    ct = [[int(rs.cartan[j, i]) for j in range(r)] for i in range(r)]
    m = _solve_exact(ct, [[int(i == j) for j in range(r)] for i in range(r)])
    g = rs.gram
    return tuple(
        tuple(sum(m[i][k] * int(g[k, l]) * m[j][l] for k in range(r) for l in range(r))
              for j in range(r))
        for i in range(r)
    )


def root_coordinates(weight, rs: RootSystem) -> tuple:
    """Coordinates (Fractions) of a weight in the simple-root basis."""
    sol = _solve_exact([[int(x) for x in row] for row in rs.cartan], [[int(w)] for w in weight])
    return tuple(row[0] for row in sol)


def _is_below(nu, lam, rs: RootSystem) -> bool:
    """lam - nu is a nonnegative integer combination of simple roots."""
    coords = root_coordinates([a - b for a, b in zip(lam, nu)], rs)
    return all(c.denominator == 1 and c >= 0 for c in coords)


def dominant_weights_below(weight, rs: RootSystem) -> list[tuple]:
    """Dominant mu <= weight, highest first (ordered by the height of weight - mu)."""
    weight = tuple(weight)
    found = {weight: 0}
    frontier = [weight]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in rs.positive_roots:
                nu = tuple(m - x for m, x in zip(mu, rs.to_weight(a)))
                if min(nu) >= 0 and nu not in found:
                    found[nu] = found[mu] + rs.height(a)
                    nxt.append(nu)
        frontier = nxt
    return sorted(found, key=lambda mu: (found[mu], tuple(-x for x in mu)))


def weyl_orbit(weight, rs: RootSystem) -> set[tuple]:
    orbit = {tuple(weight)}
    frontier = [tuple(weight)]
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(rs.rank):
                nu = tuple(m - mu[i] * int(rs.cartan[k, i]) for k, m in enumerate(mu))
                if nu not in orbit:
                    orbit.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return orbit


def weyl_character(weight, rs: RootSystem) -> dict[tuple, int]:
    """Weight multiplicities of the Weyl module V(weight) by Freudenthal's formula."""
    form = _weight_form(rs)
    r = rs.rank

    def ip(x, y):
        return sum(form[i][j] * x[i] * y[j] for i in range(r) for j in range(r))

    lam = tuple(weight)
    rho = (1,) * r
    pos_w = [rs.to_weight(a) for a in rs.positive_roots]
    dom = dominant_weights_below(lam, rs)
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = ip(lr, lr)
    mult: dict[tuple, int] = {}

    def m_of(mu):
        # multiplicity is W-invariant; reduce to the dominant representative
        mu = tuple(mu)
        if mu in mult:
            return mult[mu]
        dom_rep = _dominant_rep(mu, rs)
        return mult.get(dom_rep, 0)

    for mu in dom:  # decreasing order: higher weights first
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(a + b for a, b in zip(mu, rho))
        denom = norm_lr - ip(mr, mr)
        total = Fraction(0)
        for a in pos_w:
            k = 1
            while True:
                nu = tuple(m + k * x for m, x in zip(mu, a))
                if not _is_below(nu, lam, rs):
                    break
                total += m_of(nu) * ip(nu, a)
                k += 1
        val = 2 * total / denom
        assert val.denominator == 1
        mult[mu] = int(val)
    full = {}
    for mu in dom:
        if mult[mu]:
            for nu in weyl_orbit(mu, rs):
                full[nu] = mult[mu]
    return full


def _dominant_rep(mu, rs: RootSystem) -> tuple:
    mu = list(mu)
    while True:
        neg = next((i for i, x in enumerate(mu) if x < 0), None)
        if neg is None:
            return tuple(mu)
        c = mu[neg]
        mu = [m - c * int(rs.cartan[k, neg]) for k, m in enumerate(mu)]

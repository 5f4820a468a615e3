"""Restricted representations given by matrices on a Lie basis.

A representation stores theta(x_a) for every basis element x_a of the
algebra, plus an optional weight per module basis vector (fundamental-weight
coordinates).  Constructors cover sl_2 Weyl modules, the natural module of
type A, the adjoint module and the left regular module of U_0(g).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from overres import primefield as pf
from overres import liealgebra as la
from overres.liealgebra import RestrictedLieAlgebra
from overres.rootdata import RootSystem, positive_coroots, weyl_character
from overres.u0algebra import U0Algebra


@dataclass(frozen=True, eq=False)
class Representation:
    lie: RestrictedLieAlgebra
    matrices: tuple = field(repr=False)
    weights: tuple | None = field(repr=False, default=None)
    name: str = ""

    @property
    def p(self) -> int:
        return self.lie.p

    @property
    def dim(self) -> int:
        if self.matrices:
            return self.matrices[0].shape[0]
        return len(self.weights) if self.weights is not None else 0

    def theta(self, x) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for c, m in zip(np.asarray(x, dtype=np.int64), self.matrices):
            if c:
                out += c * m
        return out % self.p

    def with_matrix(self, i: int, mat) -> Representation:
        mats = list(self.matrices)
        mats[i] = np.asarray(mat, dtype=np.int64) % self.p
        return Representation(self.lie, tuple(mats), self.weights, self.name + "*")


def is_homomorphism(rep: Representation) -> bool:
    """theta([x_a, x_b]) = [theta(x_a), theta(x_b)] for all basis pairs."""
    g, p = rep.lie, rep.p
    for a, b in itertools.product(range(g.dim), repeat=2):
        lhs = rep.theta(g.bracket(g.basis_vector(a), g.basis_vector(b)))
        ma, mb = rep.matrices[a], rep.matrices[b]
        rhs = (pf.matmul(ma, mb, p) - pf.matmul(mb, ma, p)) % p
        if not np.array_equal(lhs, rhs):
            return False
    return True


def weyl_module_sl2(m: int, p: int) -> Representation:
    """V(m) for sl_2 in the basis v_i = f^(i) v_0, i = 0..m."""
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    g = la.chevalley_algebra("A1", p)
    n = m + 1
    e = np.zeros((n, n), dtype=np.int64)
    f = np.zeros((n, n), dtype=np.int64)
    h = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        h[i, i] = m - 2 * i
        if i + 1 < n:
            f[i + 1, i] = i + 1
        if i >= 1:
            e[i - 1, i] = m - i + 1
    mats = tuple(x % p for x in (f, h, e))  # basis order (f, h, e)
    weights = tuple((m - 2 * i,) for i in range(n))
    return Representation(g, mats, weights, f"V({m})")


def natural_rep(g: RestrictedLieAlgebra) -> Representation:
    """The n-dimensional module of sl_n (type A_{n-1}).

    Simple root vectors go to elementary matrices; every other root vector is
    obtained over Z from a bracket divided by its structure constant.
    """
    rs = g.root_system
    if rs is None or rs.kind != "A":
        raise ValueError("natural module is built for type A only")
    n = rs.rank + 1
    ncoef = la.structure_constants(rs)
    image: dict = {}
    for i in range(rs.rank):
        simple = tuple(int(i == j) for j in range(rs.rank))
        up = np.zeros((n, n), dtype=np.int64)
        up[i, i + 1] = 1
        image[simple] = up
        image[tuple(-c for c in simple)] = up.T.copy()
    for sign in (1, -1):
        for zeta in rs.positive_roots:
            zeta = tuple(sign * c for c in zeta)
            if zeta in image:
                continue
            for a in rs.positive_roots:
                a = tuple(sign * c for c in a)
                b = tuple(z - x for z, x in zip(zeta, a))
                if a in image and b in image and (a, b) in ncoef:
                    comm = image[a] @ image[b] - image[b] @ image[a]
                    q, r = np.divmod(comm, ncoef[(a, b)])
                    assert not r.any()
                    image[zeta] = q
                    break
    mats = []
    weights = []
    for idx, gr in enumerate(g.grades):
        if any(gr):
            mats.append(image[gr])
        else:
            i = idx - len(rs.positive_roots)
            h = np.zeros((n, n), dtype=np.int64)
            h[i, i], h[i + 1, i + 1] = 1, -1
            mats.append(h)
    for k in range(n):
        # weight of the k-th standard vector: eps_k in fundamental weights
        w = [0] * rs.rank
        if k < rs.rank:
            w[k] += 1
        if k >= 1:
            w[k - 1] -= 1
        weights.append(tuple(w))
    return Representation(g, tuple(m % g.p for m in mats), tuple(weights), f"natural {rs.label}")


def trivial_rep(g: RestrictedLieAlgebra) -> Representation:
    zero = np.zeros((1, 1), dtype=np.int64)
    r = g.root_system.rank if g.root_system else 0
    return Representation(g, tuple(zero for _ in range(g.dim)), ((0,) * r,), "trivial")


def adjoint_rep(g: RestrictedLieAlgebra) -> Representation:
    rs = g.root_system
    weights = tuple(rs.to_weight(gr) for gr in g.grades) if rs else None
    return Representation(g, tuple(g.basis_adjoints), weights, f"adjoint {g.name}")


def regular_rep_u0(u: U0Algebra, matrices: bool = True) -> Representation:
    """Left regular module of U_0(g) on its PBW basis, graded by monomial weights.

    With ``matrices=False`` only the grading is built (enough for heights).
    """
    rs = u.lie.root_system
    weights = tuple(rs.to_weight(u.grade(m)) for m in u.monomials) if rs else None
    mats = tuple(u.left_matrices) if matrices else ()
    return Representation(u.lie, mats, weights, f"U0({u.lie.name})")


def is_restricted(rep: Representation) -> bool:
    """theta(x)^p = theta(x^[p]) on every basis element."""
    for a, mat in enumerate(rep.matrices):
        if not np.array_equal(pf.matpow(mat, rep.p, rep.p), rep.theta(rep.lie.pmap[a])):
            return False
    return True


# -- over-restricted modules --------------------------------------------------------

def over_exponent(p: int) -> int:
    return (p + 1) // 2


@dataclass(frozen=True)
class OverRestrictedResult:
    holds: bool
    certified: bool          # True only for exhaustive cone enumeration
    checked: int             # number of cone points examined
    witness: tuple | None = None  # a cone point violating the condition

    def __bool__(self):
        return self.holds


def _sampled_cone(g: RestrictedLieAlgebra, samples: int, rng: np.random.Generator) -> list:
    """Root vectors plus random Chevalley-group conjugates of them (all p-nilpotent)."""
    roots = [i for i, gr in enumerate(g.grades) if any(gr)]
    out = [g.basis_vector(i) for i in roots]
    for _ in range(samples):
        v = g.basis_vector(int(rng.choice(roots))) * int(rng.integers(1, g.p))
        for _ in range(4):
            auto = la.chevalley_automorphism(g, int(rng.choice(roots)), int(rng.integers(1, g.p)))
            v = auto @ v % g.p
        out.append(v)
    return out


def is_over_restricted(rep: Representation, mode: str = "auto", samples: int = 200,
                       seed: int = 0) -> OverRestrictedResult:
    """theta(x)^floor((p+1)/2) = 0 for x in the p-nilpotent cone.

    ``exhaustive`` walks every F_p-point of the cone; ``sampled`` uses root
    vectors and random conjugates and is not a certificate.
    """
    g = rep.lie
    if mode == "auto":
        exhaustive_ok = g.dim <= la.CONE_DIM_CAP and g.p <= 7 and g.p ** g.dim <= la.CONE_POINT_CAP
        mode = "exhaustive" if exhaustive_ok else "sampled"
    if mode == "exhaustive":
        points = la.np_cone_points(g).points
    elif mode == "sampled":
        points = _sampled_cone(g, samples, np.random.default_rng(seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    k = over_exponent(g.p)
    for x in points:
        if pf.matpow(rep.theta(x), k, g.p).any():
            return OverRestrictedResult(False, mode == "exhaustive", len(points), tuple(int(c) for c in x))
    return OverRestrictedResult(True, mode == "exhaustive", len(points))


# -- heights -----------------------------------------------------------------------

def height_of_weights(weights, rs: RootSystem) -> int:
    """1 + the largest n >= 1 with (X + n a) meeting X for some root a (1 if none).

    For saturated weight sets this is the least n such that X and X + n a are
    disjoint for every root a.
    """
    xs = {tuple(w) for w in weights}
    diffs = {tuple(a - b for a, b in zip(u, v)) for u in xs for v in xs}
    best = 0
    for root in rs.positive_roots:
        w = rs.to_weight(root)
        for d in diffs:
            # d = n w with n >= 1
            k = next(i for i, c in enumerate(w) if c)
            if d[k] % w[k] or d[k] // w[k] <= 0:
                continue
            n = d[k] // w[k]
            if all(dc == n * wc for dc, wc in zip(d, w)):
                best = max(best, n)
    return best + 1


def height(rep: Representation) -> int:
    if rep.weights is None:
        raise ValueError("height needs a weight grading")
    if rep.lie.root_system is None:
        return 1
    return height_of_weights(rep.weights, rep.lie.root_system)


def weyl_height(weight, rs: RootSystem) -> int:
    """Height of the weight set of the Weyl module V(weight), from its character."""
    return height_of_weights(weyl_character(weight, rs).keys(), rs)


def weyl_height_formula(weight, rs: RootSystem) -> int:
    """1 + max over positive coroots of <weight, beta^vee>: the longest root string."""
    return 1 + max(int(np.dot(c, weight)) for c in positive_coroots(rs))


def printed_weyl_bound(weight) -> int:
    """The bound 1 + max_i k_i on the height of V(sum k_i omega_i)."""
    return 1 + max(weight)


@dataclass(frozen=True)
class CandidateVerdict:
    weight: tuple
    height: int
    height_ok: bool            # height <= floor((p+1)/2): weight argument gives over-restrictedness
    obstruction: tuple | None  # positive root b with binom(<weight, b^vee>, floor((p+1)/2)) != 0 mod p
    in_first_alcove: bool


def over_restricted_candidates(rs: RootSystem, p: int) -> list[CandidateVerdict]:
    """Dominant weights with every k_i <= (p-1)/2, each with the two weight-level tests.

    The obstruction: for a positive root b with n = <weight, b^vee>, the
    highest weight vector v satisfies e_b^(k) f_b^(k) v = binom(n, k) v, so a
    nonzero binom(n, k) with k = floor((p+1)/2) gives theta(e_b)^k != 0.
    """
    k = over_exponent(p)
    cors = positive_coroots(rs)
    top = max(cors, key=lambda c: (sum(c), c))
    out = []
    for lam in itertools.product(range((p - 1) // 2 + 1), repeat=rs.rank):
        h = weyl_height(lam, rs)
        obstruction = None
        for root, c in zip(rs.positive_roots, cors):
            n = int(np.dot(c, lam))
            if int(pf.binom_mod(n, k, p)):
                obstruction = root
                break
        first = int(np.dot(top, np.asarray(lam) + 1)) <= p
        out.append(CandidateVerdict(tuple(lam), h, h <= k, obstruction, first))
    return out


# -- exponentials --------------------------------------------------------------------

def exp_matrix(mat, p: int) -> np.ndarray:
    """sum_{k<p} M^k / k! for a matrix with M^p = 0."""
    mat = np.asarray(mat, dtype=np.int64) % p
    if pf.matpow(mat, p, p).any():
        raise ValueError("truncated exponential needs a p-nilpotent operator")
    out = pf.identity(mat.shape[0])
    power = pf.identity(mat.shape[0])
    for k in range(1, p):
        power = pf.matmul(power, mat, p)
        if not power.any():
            break
        out = (out + power * int(pf.factorial_inverse(k, p))) % p
    return out


def exp_operator(rep: Representation, x, t: int = 1) -> np.ndarray:
    """e^{theta(t x)} for p-nilpotent theta(x)."""
    return exp_matrix(rep.theta(x) * int(t) % rep.p, rep.p)


def verify_abs_chev(rep: Representation, x, y) -> bool:
    """theta(e^{ad x}(y)) == e^{theta x} theta(y) e^{-theta x}."""
    g, p = rep.lie, rep.p
    ad_exp = exp_operator(adjoint_rep(g), x)
    lhs = rep.theta(ad_exp @ np.asarray(y, dtype=np.int64) % p)
    fwd = exp_operator(rep, x)
    back = exp_operator(rep, (-np.asarray(x)) % p)
    rhs = pf.matmul(pf.matmul(fwd, rep.theta(y), p), back, p)
    return bool(np.array_equal(lhs, rhs))


@dataclass(frozen=True)
class AbsChevReport:
    cone_points: int
    pairs: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_abs_chev_exhaustive(rep: Representation) -> AbsChevReport:
    """Conjugation identity for every cone point x and every basis vector y."""
    g = rep.lie
    pts = la.np_cone_points(g).points
    fails = 0
    for x in pts:
        for i in range(g.dim):
            if not verify_abs_chev(rep, x, g.basis_vector(i)):
                fails += 1
    return AbsChevReport(len(pts), len(pts) * g.dim, fails)

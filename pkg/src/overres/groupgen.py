"""Finite matrix groups generated by truncated exponentials.

Groups are enumerated breadth first.  Parents are expanded in discovery
order and generators in index order, so the first word found for an
element is its shortest, lexicographically least word.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from overres import kernels
from overres import liealgebra as la
from overres import primefield as pf
from overres.primefield import DualScalar
from overres.repmod import Representation, adjoint_rep, exp_operator

REPORT_VERSION = 1
DEFAULT_CAP = int(os.environ.get("OVERRES_ELEMENT_CAP", 1_000_000))


@dataclass(eq=False)
class MatrixGroup:
    p: int
    generators: list = field(repr=False)
    labels: list = field(repr=False)
    elements: np.ndarray = field(repr=False)
    index: dict = field(repr=False)
    parent: np.ndarray = field(repr=False)
    parent_gen: np.ndarray = field(repr=False)
    depth: np.ndarray = field(repr=False)
    closed: bool = True

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.elements.shape[1]

    def __len__(self):
        return self.order

    def __contains__(self, mat) -> bool:
        return pf.encode(np.asarray(mat) % self.p, self.p) in self.index

    def index_of(self, mat) -> int:
        return self.index[pf.encode(np.asarray(mat) % self.p, self.p)]

    def word(self, i: int) -> list[int]:
        out = []
        while i:
            out.append(int(self.parent_gen[i]))
            i = int(self.parent[i])
        return out[::-1]

    def evaluate(self, word) -> np.ndarray:
        out = pf.identity(self.degree)
        for g in word:
            out = pf.matmul(out, self.generators[g], self.p)
        return out

    def word_labels(self, i: int) -> list[str]:
        return [self.labels[g] for g in self.word(i)]

    @property
    def diameter(self) -> int:
        return int(self.depth.max()) if self.order else 0


def generate_group(generators, p: int, cap: int | None = None, labels=None) -> MatrixGroup:
    """BFS closure of the identity under right multiplication by the generators."""
    cap = DEFAULT_CAP if cap is None else cap
    gens = [np.asarray(g, dtype=np.int64) % p for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    for g in gens:
        if pf.rank(g, p) != n:
            raise ValueError("generators must be invertible")
    labels = list(labels) if labels is not None else [f"g{i}" for i in range(len(gens))]
    ident = pf.identity(n)
    elements = [ident]
    index = {pf.encode(ident, p): 0}
    parent, parent_gen, depth = [0], [-1], [0]
    frontier = [0]
    closed = True
    level = 0
    while frontier and closed:
        level += 1
        stack = np.stack([elements[i] for i in frontier])
        products = [kernels.batch_matmul_mod(stack, g, p) for g in gens]
        nxt = []
        for k, par in enumerate(frontier):
            for j in range(len(gens)):
                child = products[j][k]
                key = pf.encode(child, p)
                if key in index:
                    continue
                if len(elements) >= cap:
                    closed = False
                    break
                index[key] = len(elements)
                elements.append(child)
                parent.append(par)
                parent_gen.append(j)
                depth.append(level)
                nxt.append(len(elements) - 1)
            if not closed:
                break
        frontier = nxt
    return MatrixGroup(
        p, gens, labels, np.stack(elements), index,
        np.array(parent), np.array(parent_gen), np.array(depth), closed,
    )


def word_diameter(group: MatrixGroup) -> int:
    return group.diameter


# -- exponential generators --------------------------------------------------------

def root_directions(g: la.RestrictedLieAlgebra) -> list[tuple[str, np.ndarray]]:
    return [(g.labels[i], g.basis_vector(i)) for i, gr in enumerate(g.grades) if any(gr)]


def cone_directions(g: la.RestrictedLieAlgebra) -> list[tuple[str, np.ndarray]]:
    pts = la.np_cone_points(g).points
    return [("x" + "".join(str(int(c)) for c in x), x) for x in pts if x.any()]


def exponential_generators(rep: Representation, policy: str = "root") -> tuple[list, list]:
    """Distinct matrices e^{theta(t x)} with labels "x@t", first occurrence kept.

    ``root``: x a root vector, t in F_p^*.  ``cone``: x any nonzero cone point
    (multiples t x are cone points already, so t = 1).
    """
    g = rep.lie
    if policy == "root":
        dirs = [(lab, x, t) for lab, x in root_directions(g) for t in range(1, g.p)]
    elif policy == "cone":
        dirs = [(lab, x, 1) for lab, x in cone_directions(g)]
    else:
        raise ValueError(f"unknown generator policy {policy!r}")
    mats, labels, seen = [], [], set()
    for lab, x, t in dirs:
        m = exp_operator(rep, x, t)
        key = pf.encode(m, g.p)
        if key in seen:
            continue
        seen.add(key)
        mats.append(m)
        labels.append(f"{lab}@{t}")
    return mats, labels


def pseudo_chevalley_group(rep: Representation, policy: str = "root", cap: int | None = None) -> MatrixGroup:
    mats, labels = exponential_generators(rep, policy)
    if not mats:
        mats, labels = [pf.identity(rep.dim)], ["1"]
    return generate_group(mats, rep.p, cap, labels)


@dataclass(frozen=True)
class PolicyComparison:
    root_order: int
    cone_order: int

    @property
    def equal(self) -> bool:
        # root exponentials are among the cone exponentials, so equal orders mean equal groups
        return self.root_order == self.cone_order


def compare_policies(rep: Representation, cap: int | None = None) -> PolicyComparison:
    return PolicyComparison(pseudo_chevalley_group(rep, "root", cap).order,
                            pseudo_chevalley_group(rep, "cone", cap).order)


# -- the graph subgroup and phi --------------------------------------------------------

def _block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape[0], b.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.int64)
    out[:n, :n] = a
    out[n:, n:] = b
    return out


@dataclass(eq=False)
class PhiReport:
    graph: MatrixGroup
    first: MatrixGroup
    second: MatrixGroup
    kernel: list = field(repr=False)
    central: bool
    in_aut: bool | None

    @property
    def is_function(self) -> bool:
        return self.graph.order == self.first.order

    @property
    def kernel_order(self) -> int:
        return len(self.kernel)

    @property
    def lagrange_ok(self) -> bool:
        if not self.is_function:
            return self.first.order % self.kernel_order == 0
        return self.first.order == self.kernel_order * self.second.order

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "kind": "phi",
            "order_first": self.first.order,
            "order_second": self.second.order,
            "order_graph": self.graph.order,
            "function": self.is_function,
            "kernel_order": self.kernel_order,
            "kernel": [k.tolist() for k in self.kernel],
            "kernel_central": self.central,
            "kernel_in_aut": self.in_aut,
            "lagrange": self.lagrange_ok,
            "generators": list(self.graph.labels),
        }


def graph_subgroup(pairs, p: int, labels=None, commute_with=(), cap: int | None = None) -> PhiReport:
    """Group generated by block pairs (A_i, B_i) and the induced map A -> B.

    The rule A_i -> B_i defines a function on <A_i> exactly when the first
    projection of the paired group is injective, i.e. the orders agree.
    Kernel: first blocks paired with the identity second block.
    """
    pairs = [(np.asarray(a) % p, np.asarray(b) % p) for a, b in pairs]
    n = pairs[0][0].shape[0]
    graph = generate_group([_block(a, b) for a, b in pairs], p, cap, labels)
    first = generate_group([a for a, _ in pairs], p, cap, labels)
    second = generate_group([b for _, b in pairs], p, cap, labels)
    ident = pf.identity(graph.degree - n)
    kernel = [el[:n, :n].copy() for el in graph.elements if np.array_equal(el[n:, n:], ident)]
    gens_first = [a for a, _ in pairs]
    central = all(np.array_equal(pf.matmul(k, a, p), pf.matmul(a, k, p)) for k in kernel for a in gens_first)
    in_aut = None
    if commute_with:
        in_aut = all(np.array_equal(pf.matmul(k, t, p), pf.matmul(t, k, p))
                     for k in kernel for t in commute_with)
    return PhiReport(graph, first, second, kernel, central, in_aut)


def build_phi(rep: Representation, policy: str = "root", cap: int | None = None) -> PhiReport:
    """Pair e^{theta(t x)} with e^{ad(t x)} and test whether this defines phi: G_V -> G_g."""
    g = rep.lie
    adj = adjoint_rep(g)
    if policy == "root":
        dirs = [(lab, x, t) for lab, x in root_directions(g) for t in range(1, g.p)]
    else:
        dirs = [(lab, x, 1) for lab, x in cone_directions(g)]
    pairs = [(exp_operator(rep, x, t), exp_operator(adj, x, t)) for _, x, t in dirs]
    labels = [f"{lab}@{t}" for lab, _, t in dirs]
    thetas = [rep.theta(g.basis_vector(i)) for i in range(g.dim)]
    return graph_subgroup(pairs, g.p, labels, thetas, cap)


# -- tangent spaces -----------------------------------------------------------------------

def dual_exponential(mat: np.ndarray, a: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Value and eps-part of e^{(a + eps) M} = sum_k (a+eps)^k M^k / k!."""
    t = DualScalar.variable(a, p)
    value = np.zeros_like(mat)
    slope = np.zeros_like(mat)
    power = pf.identity(mat.shape[0])
    for k in range(p):
        c = t ** k * int(pf.factorial_inverse(k, p))
        value = (value + c.value * power) % p
        slope = (slope + c.slope * power) % p
        power = pf.matmul(power, mat, p)
    return value, slope


@dataclass(frozen=True)
class TangentReport:
    basis: np.ndarray
    dim: int
    stabilized: bool
    image_dim: int          # dim theta(g_0)
    equals_image: bool
    cone_span_dim: int | None = None  # dim span{theta(x): x in cone}, when enumerable


def tangent_space(rep: Representation, group: MatrixGroup | None = None, samples: int = 100,
                  seed: int = 0) -> TangentReport:
    """Span of translated differentials of t -> e^{theta(t x)} and their conjugates."""
    g, p = rep.lie, rep.p
    dirs = root_directions(g)
    if group is None:
        group = pseudo_chevalley_group(rep)
    vectors = []
    exps = []
    for _, x in dirs:
        mat = rep.theta(x)
        for a in range(p):
            value, slope = dual_exponential(mat, a, p)
            # left translate the tangent vector at e^{aM} back to the identity
            vectors.append(pf.matmul(pf.inverse(value, p), slope, p))
            exps.append(value)
    base = list(vectors)
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, group.order, samples) if group.order else []
    conj_sets = [exps, [group.elements[i] for i in picks[: samples // 2]],
                 [group.elements[i] for i in picks[samples // 2:]]]

    def span_with(conjugators):
        rows = [v.ravel() for v in vectors]
        for c in conjugators:
            ci = pf.inverse(c, p)
            rows.extend(pf.matmul(pf.matmul(c, v, p), ci, p).ravel() for v in base)
        return pf.row_basis(np.array(rows), p)

    half = span_with(conj_sets[0] + conj_sets[1])
    full = span_with(conj_sets[0] + conj_sets[1] + conj_sets[2])
    g0 = la.generated_subalgebra(g, [x for _, x in dirs])
    image = np.array([rep.theta(v).ravel() for v in g0.basis]) if g0.dim else np.zeros((0, rep.dim ** 2), np.int64)
    image_basis = pf.row_basis(image, p) if len(image) else image
    cone_dim = None
    try:
        pts = la.np_cone_points(g).points
        cone_dim = pf.rank(np.array([rep.theta(x).ravel() for x in pts]), p)
    except ValueError:
        pass
    return TangentReport(full, len(full), len(half) == len(full), len(image_basis),
                         pf.same_span(full, image_basis, p) if len(full) or len(image_basis) else True,
                         cone_dim)


def group_report(group: MatrixGroup) -> dict:
    return {
        "version": REPORT_VERSION,
        "kind": "group",
        "order": group.order,
        "diameter": group.diameter,
        "closed": group.closed,
        "generators": list(group.labels),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)

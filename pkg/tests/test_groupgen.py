import itertools
import json

import numpy as np
import pytest

from overres import groupgen as gg
from overres import liealgebra as la
from overres import primefield as pf
from overres import repmod as rm
from overres.u0algebra import U0Algebra


def sl2_order_by_counting(p):
    return sum(1 for a, b, c, d in itertools.product(range(p), repeat=4) if (a * d - b * c) % p == 1)


def natural(p):
    return rm.natural_rep(la.chevalley_algebra("A1", p))


def adjoint(p):
    return rm.adjoint_rep(la.chevalley_algebra("A1", p))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_natural_group_is_sl2(p):
    group = gg.pseudo_chevalley_group(natural(p))
    assert group.closed
    assert group.order == sl2_order_by_counting(p) == p * (p * p - 1)
    dets = (group.elements[:, 0, 0] * group.elements[:, 1, 1] - group.elements[:, 0, 1] * group.elements[:, 1, 0]) % p
    assert np.all(dets == 1)


@pytest.mark.parametrize("p", [3, 5])
def test_adjoint_group_is_psl2(p):
    assert gg.pseudo_chevalley_group(adjoint(p)).order == sl2_order_by_counting(p) // 2


def test_identity_generator():
    group = gg.generate_group([np.eye(3, dtype=np.int64)], 5)
    assert group.order == 1 and gg.word_diameter(group) == 0


def test_cap_gives_partial_group():
    group = gg.pseudo_chevalley_group(natural(7), cap=50)
    assert not group.closed and group.order == 50


def test_singular_generator_rejected():
    with pytest.raises(ValueError):
        gg.generate_group([np.zeros((2, 2), dtype=np.int64)], 3)


@pytest.mark.parametrize("p", [3, 5])
def test_closure_and_words(p):
    group = gg.pseudo_chevalley_group(natural(p))
    rng = np.random.default_rng(p)
    for _ in range(300):
        i, j = rng.integers(0, group.order, 2)
        a, b = group.elements[i], group.elements[j]
        assert pf.matmul(a, b, p) in group
        assert pf.inverse(a, p) in group
    for i in range(group.order):
        assert np.array_equal(group.evaluate(group.word(i)), group.elements[i])
        assert len(group.word(i)) == group.depth[i]


def test_words_are_shortest_and_lex_least():
    p = 3
    group = gg.pseudo_chevalley_group(natural(p))
    gens = group.generators
    best = {}
    for length in range(group.diameter + 1):
        for word in itertools.product(range(len(gens)), repeat=length):
            key = pf.encode(group.evaluate(word), p)
            best.setdefault(key, list(word))
    for i in range(group.order):
        assert group.word(i) == best[pf.encode(group.elements[i], p)]


def test_diameter_and_determinism():
    a = gg.pseudo_chevalley_group(natural(3))
    b = gg.pseudo_chevalley_group(natural(3))
    assert a.diameter == b.diameter <= 24
    assert [a.word_labels(i) for i in range(a.order)] == [b.word_labels(i) for i in range(b.order)]
    assert gg.dumps(gg.group_report(a)) == gg.dumps(gg.group_report(b))


def test_diameter_invariant_under_generator_permutation():
    rep = natural(5)
    mats, labels = gg.exponential_generators(rep)
    forward = gg.generate_group(mats, 5, labels=labels)
    backward = gg.generate_group(mats[::-1], 5, labels=labels[::-1])
    assert forward.order == backward.order and forward.diameter == backward.diameter


def test_policies_agree_for_sl2():
    cmp = gg.compare_policies(natural(5))
    assert cmp.equal and cmp.root_order == 120


def test_u0_regular_group_at_two():
    u = U0Algebra(la.chevalley_algebra("A1", 2))
    group = gg.pseudo_chevalley_group(rm.regular_rep_u0(u))
    assert group.closed and group.order == 12


@pytest.mark.parametrize("p", [3, 5])
def test_phi_natural(p):
    rep = gg.build_phi(natural(p))
    assert rep.is_function
    assert rep.kernel_order == 2 and rep.central and rep.in_aut
    minus = (-np.eye(2, dtype=np.int64)) % p
    assert sorted(k.tolist() for k in rep.kernel) == sorted([np.eye(2, dtype=np.int64).tolist(), minus.tolist()])
    assert rep.lagrange_ok and rep.first.order == 2 * rep.second.order


@pytest.mark.parametrize("m,p", [(2, 5), (1, 5), (1, 3), (2, 7), (3, 7)])
def test_phi_over_restricted_weyl_modules(m, p):
    rep = gg.build_phi(rm.weyl_module_sl2(m, p))
    assert rep.is_function and rep.central and rep.in_aut and rep.lagrange_ok


def test_phi_trivial_module_collapses():
    rep = gg.build_phi(rm.trivial_rep(la.chevalley_algebra("A1", 3)))
    assert rep.first.order == 1 and rep.second.order == 12
    assert not rep.is_function
    assert rep.kernel_order == 1


def test_phi_report_serializes():
    doc = json.loads(gg.dumps(gg.build_phi(natural(3)).to_dict()))
    assert doc["version"] == gg.REPORT_VERSION and doc["kernel_order"] == 2


def test_dual_exponential_first_order_term():
    p = 5
    rep = natural(p)
    for x in la.np_cone_points(rep.lie).points:
        mat = rep.theta(x)
        value, slope = gg.dual_exponential(mat, 0, p)
        assert np.array_equal(value, np.eye(2, dtype=np.int64))
        assert np.array_equal(slope, mat)


def test_dual_exponential_value_matches_exp():
    p = 7
    rep = rm.weyl_module_sl2(3, p)
    x = rep.lie.basis_vector(2)
    for a in range(p):
        value, _ = gg.dual_exponential(rep.theta(x), a, p)
        assert np.array_equal(value, rm.exp_operator(rep, x, a))


@pytest.mark.parametrize("rep_fn,p", [(natural, 5), (natural, 3), (adjoint, 5)])
def test_tangent_space(rep_fn, p):
    t = gg.tangent_space(rep_fn(p), samples=40)
    assert t.dim == 3 and t.stabilized and t.equals_image and t.cone_span_dim == 3


def test_tangent_space_weyl_module():
    t = gg.tangent_space(rm.weyl_module_sl2(2, 5), samples=40)
    assert t.dim == t.image_dim == 3 and t.equals_image

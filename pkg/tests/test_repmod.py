import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from overres import liealgebra as la
from overres import primefield as pf
from overres import repmod as rm
from overres.rootdata import build_root_system
from overres.u0algebra import U0Algebra

F, H, E = 0, 1, 2


def sl2_height_oracle(weights):
    """Least n >= 1 with X and X + 2n disjoint (weights as integers, alpha = 2)."""
    xs = set(weights)
    n = 1
    while xs & {x + 2 * n for x in xs}:
        n += 1
    return n


def test_weyl_module_examples():
    v1 = rm.weyl_module_sl2(1, 7)
    assert v1.matrices[E].tolist() == [[0, 1], [0, 0]]
    assert v1.matrices[H].tolist() == [[1, 0], [0, 6]]
    v2 = rm.weyl_module_sl2(2, 3)
    assert v2.matrices[F][2, 1] == 2
    for m in range(6):
        v = rm.weyl_module_sl2(m, 7)
        e, f, h = v.matrices[E], v.matrices[F], v.matrices[H]
        top = np.zeros(m + 1, dtype=np.int64)
        top[0] = 1
        assert np.array_equal((e @ f @ top - f @ e @ top) % 7, h @ top % 7)
        assert np.array_equal(h @ top % 7, m * top % 7)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 12))
def test_weyl_modules_are_representations(p, m):
    v = rm.weyl_module_sl2(m, p)
    assert v.dim == m + 1
    assert rm.is_homomorphism(v)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_weyl_modules_below_p_are_restricted(p):
    for m in range(p):
        assert rm.is_restricted(rm.weyl_module_sl2(m, p))


def test_negative_control():
    v = rm.weyl_module_sl2(2, 5)
    bad = v.with_matrix(E, v.matrices[E] + _flip(v.matrices[E]))
    assert not rm.is_homomorphism(bad)
    assert not rm.is_restricted(bad)
    # a semisimple torus matrix with eigenvalues in F_p still satisfies t^p = t
    assert rm.is_restricted(v.with_matrix(H, v.matrices[H] + _flip(v.matrices[H])))


def _flip(mat):
    out = np.zeros_like(mat)
    out[0, 0] = 1
    return out


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_adjoint_representations(label, p):
    rep = rm.adjoint_rep(la.chevalley_algebra(label, p))
    assert rm.is_homomorphism(rep) and rm.is_restricted(rep)


def test_adjoint_sl2_weights_and_height():
    rep = rm.adjoint_rep(la.chevalley_algebra("A1", 5))
    assert sorted(w[0] for w in rep.weights) == [-2, 0, 2]
    assert rm.height(rep) == 3 == sl2_height_oracle([-2, 0, 2])


@pytest.mark.parametrize("label", ["A1", "A2", "A3"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_natural_representation(label, p):
    rep = rm.natural_rep(la.chevalley_algebra(label, p))
    assert rm.is_homomorphism(rep) and rm.is_restricted(rep)
    # faithful: the matrices are linearly independent
    assert pf.rank(np.array([m.ravel() for m in rep.matrices]), p) == rep.lie.dim


def test_natural_needs_type_a():
    with pytest.raises(ValueError):
        rm.natural_rep(la.chevalley_algebra("B2", 3))


@pytest.mark.parametrize("p", [2, 3])
def test_regular_representation(p):
    u = U0Algebra(la.chevalley_algebra("A1", p))
    rep = rm.regular_rep_u0(u)
    assert rep.dim == p ** 3
    assert rm.is_homomorphism(rep) and rm.is_restricted(rep)
    one = u.to_vector(u.one())
    assert np.array_equal(rep.matrices[E] @ one % p, u.to_vector(u.generator(E)))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_u0_height_is_two_p_minus_one(p):
    rep = rm.regular_rep_u0(U0Algebra(la.chevalley_algebra("A1", p)), matrices=False)
    oracle = sl2_height_oracle([2 * (a - c) for a in range(p) for c in range(p)])
    assert rm.height(rep) == oracle == 2 * p - 1


@given(st.integers(0, 10), st.sampled_from([2, 3, 5, 7, 11]))
def test_weyl_module_height(m, p):
    v = rm.weyl_module_sl2(m, p)
    assert rm.height(v) == sl2_height_oracle([m - 2 * i for i in range(m + 1)]) == m + 1


def test_trivial_height_and_ungraded():
    g = la.chevalley_algebra("A2", 3)
    assert rm.height(rm.trivial_rep(g)) == 1
    with pytest.raises(ValueError):
        rm.height(rm.Representation(g, rm.trivial_rep(g).matrices, None))


@given(st.integers(0, 6), st.integers(0, 6))
def test_a2_weyl_height_is_longest_root_string(k1, k2):
    rs = build_root_system("A2")
    assert rm.weyl_height((k1, k2), rs) == rm.weyl_height_formula((k1, k2), rs) == 1 + k1 + k2


@pytest.mark.parametrize("label,weight", [("B2", (1, 1)), ("G2", (1, 0)), ("G2", (0, 1)), ("C3", (0, 1, 0))])
def test_weyl_height_formula_other_types(label, weight):
    rs = build_root_system(label)
    assert rm.weyl_height(weight, rs) == rm.weyl_height_formula(weight, rs)


def test_printed_weyl_bound_counterexample():
    # the adjoint module of sl_3: roots a and -a differ by 2a, so the height is 3
    rs = build_root_system("A2")
    assert rm.weyl_height((1, 1), rs) == 3
    assert rm.printed_weyl_bound((1, 1)) == 2


def test_printed_bound_holds_on_fundamental_weights():
    rs = build_root_system("A2")
    for lam in [(1, 0), (0, 1), (2, 0)]:
        assert rm.weyl_height(lam, rs) <= rm.printed_weyl_bound(lam)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_over_restricted_iff_small_highest_weight(p):
    for m in range(p):
        res = rm.is_over_restricted(rm.weyl_module_sl2(m, p), mode="exhaustive")
        assert res.certified
        assert res.holds == (m + 1 <= (p + 1) // 2)


def test_over_restricted_examples():
    assert rm.is_over_restricted(rm.weyl_module_sl2(2, 5)).holds
    res = rm.is_over_restricted(rm.weyl_module_sl2(3, 5))
    assert not res.holds and res.witness is not None
    assert not rm.is_over_restricted(rm.weyl_module_sl2(1, 2)).holds


def test_sampled_mode_is_not_certified():
    g = la.chevalley_algebra("A3", 5)
    res = rm.is_over_restricted(rm.trivial_rep(g), mode="sampled", samples=20, seed=3)
    assert res.holds and not res.certified
    res = rm.is_over_restricted(rm.natural_rep(g), mode="auto", samples=20)
    assert res.holds and not res.certified
    # ad(e)^2 f = -2e, nonzero at p = 3 where the exponent is 2
    adj = rm.is_over_restricted(rm.adjoint_rep(la.chevalley_algebra("A3", 3)), samples=20)
    assert not adj.holds and not adj.certified


def test_sampled_cone_points_are_nilpotent():
    g = la.chevalley_algebra("B2", 5)
    pts = rm._sampled_cone(g, 30, np.random.default_rng(0))
    assert all(g.is_p_nilpotent(x) for x in pts)


def test_a2_candidates():
    p = 5
    rs = build_root_system("A2")
    verdicts = {v.weight: v for v in rm.over_restricted_candidates(rs, p)}
    assert len(verdicts) == 9
    outside = [w for w, v in verdicts.items() if not v.in_first_alcove]
    assert outside == [(2, 2)]
    # <(2,2), highest coroot> = 4 and binom(4, 3) = 4 != 0 mod 5
    assert verdicts[(2, 2)].obstruction == (1, 1)
    assert not verdicts[(2, 2)].height_ok
    assert verdicts[(1, 0)].height_ok and verdicts[(1, 0)].obstruction is None


def test_exp_operator_examples():
    rep = rm.natural_rep(la.chevalley_algebra("A1", 5))
    e = rep.lie.basis_vector(E)
    assert np.array_equal(rm.exp_operator(rep, e, 0), np.eye(2, dtype=np.int64))
    for t in range(5):
        assert rm.exp_operator(rep, e, t).tolist() == [[1, t], [0, 1]]
    with pytest.raises(ValueError):
        rm.exp_operator(rep, rep.lie.basis_vector(H))


@pytest.mark.parametrize("m,p", [(2, 5), (1, 3), (3, 7)])
def test_exp_operator_additive_and_invertible(m, p):
    rep = rm.weyl_module_sl2(m, p)
    for i in (E, F):
        x = rep.lie.basis_vector(i)
        for t, s in itertools.product(range(p), repeat=2):
            prod = pf.matmul(rm.exp_operator(rep, x, t), rm.exp_operator(rep, x, s), p)
            assert np.array_equal(prod, rm.exp_operator(rep, x, (t + s) % p))


def test_abs_chev_examples():
    rep = rm.weyl_module_sl2(2, 5)
    g = rep.lie
    e, f = g.basis_vector(E), g.basis_vector(F)
    assert rm.verify_abs_chev(rep, g.zero(), f)
    assert rm.verify_abs_chev(rep, e, f)


def test_abs_chev_beyond_hypothesis_is_reported():
    rep = rm.weyl_module_sl2(4, 5)
    report = rm.verify_abs_chev_exhaustive(rep)
    assert report.pairs == report.cone_points * 3
    assert isinstance(report.passed, bool)


@pytest.mark.parametrize("p", [3, 5])
def test_abs_chev_exhaustive_small(p):
    for m in range((p - 1) // 2 + 1):
        assert rm.verify_abs_chev_exhaustive(rm.weyl_module_sl2(m, p)).passed

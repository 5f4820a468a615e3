import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from overres import liealgebra as la
from overres import primefield as pf
from overres import u0algebra as ua

F, H, E = 0, 1, 2  # sl2 PBW order (f, h, e)


def u_sl2(p):
    return ua.U0Algebra(la.chevalley_algebra("A1", p))


def random_element(u, rng, terms=3):
    out = u.zero()
    for _ in range(terms):
        m = tuple(int(x) for x in rng.integers(0, u.p, u.lie.dim))
        out = out + u.monomial(m) * int(rng.integers(1, u.p))
    return out


def test_straightening_examples():
    u = u_sl2(5)
    e, f, h = u.generator(E), u.generator(F), u.generator(H)
    assert e * f == f * e + h
    assert (e * f).terms == {(1, 0, 1): 1, (0, 1, 0): 1}
    assert h * f == f * h - 2 * f
    assert e * e ** 4 == u.zero()
    assert (e ** 4).terms == {(0, 0, 4): 1}


def test_h_to_the_p_is_h():
    for p in (2, 3, 5):
        u = u_sl2(p)
        assert u.generator(H) ** p == u.generator(H)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_associativity(p):
    u = u_sl2(p)
    rng = np.random.default_rng(p)
    for _ in range(60):
        a, b, c = (random_element(u, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_unit_and_dimension():
    u = u_sl2(3)
    assert u.dim == 27 and len(u.monomials) == 27
    x = u.monomial((2, 1, 1))
    assert u.one() * x == x == x * u.one()
    with pytest.raises(ValueError):
        u.monomial((3, 0, 0))


@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**31))
def test_vector_round_trip(p, seed):
    u = u_sl2(p)
    x = random_element(u, np.random.default_rng(seed))
    assert u.from_vector(u.to_vector(x)) == x


def test_coproduct_examples():
    u = u_sl2(5)
    e = u.generator(E)
    one = u.one()
    assert u.coproduct(e) == u.tensor(e, one) + u.tensor(one, e)
    expected = u.tensor(e * e, one) + u.tensor(e, e) + u.tensor(e, e) + u.tensor(one, e * e)
    assert u.coproduct(e * e) == expected
    assert u.coproduct(one) == u.tensor(one, one)


def test_antipode_examples():
    u = u_sl2(5)
    e, f = u.generator(E), u.generator(F)
    assert u.antipode(e) == -e
    assert u.antipode(f * e) == e * f
    assert u.antipode(u.one()) == u.one()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hopf_axioms(p):
    assert ua.hopf_axioms_hold(u_sl2(p))


@pytest.mark.parametrize("p", [2, 3])
def test_hopf_axioms_on_random_elements(p):
    u = u_sl2(p)
    rng = np.random.default_rng(7)
    elems = [random_element(u, rng, 2) for _ in range(4)]
    assert ua.hopf_axioms_hold(u, elems)
    for a in elems:
        for b in elems:
            assert u.antipode(a * b) == u.antipode(b) * u.antipode(a)


def test_hopf_axioms_b2():
    assert ua.hopf_axioms_hold(ua.U0Algebra(la.chevalley_algebra("A2", 2)))


def test_exp_element_examples():
    u = u_sl2(3)
    g = u.lie
    e = g.basis_vector(E)
    assert ua.exp_element(u, g.zero()) == u.one()
    assert ua.exp_element(u, e) == u.one() + u.generator(E) + 2 * u.generator(E) ** 2
    assert ua.exp_element(u, e) * ua.exp_element(u, (-e) % 3) == u.one()
    with pytest.raises(ValueError):
        ua.exp_element(u, g.basis_vector(H))


@pytest.mark.parametrize("p", [3, 5])
def test_exp_of_cone_points_is_invertible(p):
    u = u_sl2(p)
    for x in la.np_cone_points(u.lie).points[:12]:
        assert ua.exp_element(u, x) * ua.exp_element(u, (-x) % p) == u.one()


def tensor_neg(u, t):
    return ua.TensorElement(u, {k: -c for k, c in t.terms.items()})


def test_deviation_examples():
    u = u_sl2(2)
    e = u.lie.basis_vector(E)
    ex = ua.exp_element(u, e)
    diff = u.coproduct(ex) - u.tensor(ex, ex)
    x = u.generator(E)
    assert diff == tensor_neg(u, u.tensor(x, x))
    assert ua.deviation_degree(u, e) == 1
    rep = ua.deviation_report(u_sl2(5), u_sl2(5).lie.basis_vector(E))
    assert rep.total_degree >= 5 and rep.max_degree >= 3


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_deviation_bound_for_root_vectors(p):
    u = u_sl2(p)
    for i in (E, F):
        d = ua.deviation_degree(u, u.lie.basis_vector(i))
        assert d is not None and d >= (p + 1) // 2


def test_deviation_zero_is_grouplike():
    u = u_sl2(3)
    assert ua.deviation_degree(u, u.lie.zero()) is None


@pytest.mark.parametrize("p", [2, 3])
def test_left_regular_representation_is_faithful(p):
    u = u_sl2(p)
    mats = np.array([u.monomial_matrix(m).ravel() for m in u.monomials])
    assert pf.rank(mats, p) == u.dim


def test_left_matrices_act_like_multiplication():
    u = u_sl2(3)
    rng = np.random.default_rng(3)
    x = random_element(u, rng)
    for a in range(3):
        assert u.from_vector(u.left_matrices[a] @ u.to_vector(x) % 3) == u.generator(a) * x


def test_dense_cap():
    u = ua.U0Algebra(la.chevalley_algebra("A2", 3))
    with pytest.raises(ValueError, match="dense"):
        u.left_matrix(0)


def over_restricted_simple_dims(p):
    # simple modules V(m), m <= (p-1)/2, each contributing (m+1)^2
    return sum((m + 1) ** 2 for m in range((p - 1) // 2 + 1))


@pytest.mark.parametrize("p", [3, 5])
def test_over_env_oracles_agree(p):
    rep = ua.over_env_report(u_sl2(p))
    assert rep.agree
    assert rep.dimension == over_restricted_simple_dims(p)
    assert ua.over_env_dimension(u_sl2(p)) == rep.dimension


def test_over_env_at_two_kills_the_torus():
    # generators e and f; h = ef - fe then lies in the ideal, so only scalars survive
    u = u_sl2(2)
    rep = ua.over_env_report(u)
    assert rep.agree and rep.dimension == 1 == over_restricted_simple_dims(2)
    assert u.generator(E) * u.generator(F) - u.generator(F) * u.generator(E) == u.generator(H)


def test_over_ideal_generators():
    u = u_sl2(5)
    gens = ua.over_ideal_generators(u)
    assert [g.terms for g in gens] == [{(3, 0, 0): 1}, {(0, 0, 3): 1}]

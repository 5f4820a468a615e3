from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from overres import rootdata as rd

CLASSICAL = [("A", r) for r in range(1, 9)] + [("B", r) for r in range(2, 9)] + \
    [("C", r) for r in range(3, 9)] + [("D", r) for r in range(4, 9)] + \
    [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]


def positive_root_count(kind, r):
    return {"A": r * (r + 1) // 2, "B": r * r, "C": r * r, "D": r * (r - 1)}.get(
        kind, {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}.get((kind, r)))


@pytest.mark.parametrize("kind,rank", CLASSICAL)
def test_root_counts_and_coxeter_number(kind, rank):
    rs = rd.build_root_system(kind, rank)
    n = positive_root_count(kind, rank)
    assert len(rs.positive_roots) == n
    # h = |roots| / rank
    assert rd.coxeter_number(rs) == 2 * n // rank


@pytest.mark.parametrize("kind,rank", CLASSICAL)
def test_simple_reflections_permute_roots(kind, rank):
    rs = rd.build_root_system(kind, rank)
    roots = set(rs.roots)
    for i in range(rank):
        for a in rs.roots:
            pair = sum(int(rs.cartan[i, j]) * a[j] for j in range(rank))
            image = tuple(x - pair * (k == i) for k, x in enumerate(a))
            assert image in roots


def test_labels_and_bad_input():
    assert rd.parse_label("E8") == ("E", 8)
    assert rd.build_root_system("G2").label == "G2"
    for bad in ("Q3", "E9", "D3", "G3"):
        with pytest.raises(ValueError):
            rd.build_root_system(bad)


def test_g2_first_simple_root_is_short():
    rs = rd.build_root_system("G2")
    assert rs.highest_root == (3, 2)
    assert rd.positive_coroots(rs) == [(0, 1), (1, 0), (1, 3), (2, 3), (1, 1), (1, 2)]
    assert rd.two_rho_coefficients(rs) == ((10, 6), 10)


@pytest.mark.parametrize("label,order", [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("B3", 48)])
def test_regular_orbit_has_weyl_group_order(label, order):
    rs = rd.build_root_system(label)
    assert len(rd.weyl_orbit((1,) * rs.rank, rs)) == order


@pytest.mark.parametrize("label,weight,dim", [
    ("A1", (4,), 5), ("A2", (1, 1), 8), ("A2", (2, 0), 6), ("B2", (1, 0), 5), ("B2", (0, 1), 4),
    ("G2", (1, 0), 7), ("G2", (0, 1), 14), ("A3", (1, 0, 1), 15), ("C3", (1, 0, 0), 6),
])
def test_weyl_dimension_and_character(label, weight, dim):
    rs = rd.build_root_system(label)
    assert rd.weyl_dimension(weight, rs) == dim
    assert sum(rd.weyl_character(weight, rs).values()) == dim


@given(st.integers(0, 12))
def test_sl2_character_is_a_string(m):
    rs = rd.build_root_system("A1")
    assert rd.weyl_character((m,), rs) == {(m - 2 * i,): 1 for i in range(m + 1)}


@given(st.integers(0, 4), st.integers(0, 4))
def test_a2_weyl_dimension_formula(a, b):
    rs = rd.build_root_system("A2")
    assert rd.weyl_dimension((a, b), rs) == (a + 1) * (b + 1) * (a + b + 2) // 2
    assert sum(rd.weyl_character((a, b), rs).values()) == rd.weyl_dimension((a, b), rs)


def test_root_coordinates_of_fundamental_weight():
    rs = rd.build_root_system("A2")
    assert rd.root_coordinates((1, 0), rs) == (Fraction(2, 3), Fraction(1, 3))


def test_wall_bounds_g2_at_seven():
    rs = rd.build_root_system("G2")
    walls = {w.coroot: w for w in rd.wall_bounds((3, 3), 7, rs)}
    assert (walls[(1, 2)].value, walls[(1, 2)].upper) == (9, 11)
    assert (walls[(1, 3)].value, walls[(1, 3)].lower) == (12, 10)
    assert (walls[(1, 0)].value, walls[(1, 0)].upper) == (3, 6)
    assert all(w.strict for w in walls.values())


def test_wall_bounds_a2_at_five():
    rs = rd.build_root_system("A2")
    walls = {w.coroot: w for w in rd.wall_bounds((2, 2), 5, rs)}
    assert (walls[(1, 1)].value, walls[(1, 1)].lower) == (4, 3)


def test_alcove_counts_under_each_convention():
    rep = rd.alcove_bands((3, 3), 7, rd.build_root_system("G2"))
    assert rep.bands == (0, 0, 2, 2, 1, 1)
    assert rep.count_below == 7
    assert rep.other_counts == {"fewer_walls": 7, "highest_coroot_band": 8}


@pytest.mark.parametrize("p", [5, 7, 11])
def test_first_alcove_has_nothing_below(p):
    rep = rd.alcove_bands((0, 0), p, rd.build_root_system("A2"))
    assert rep.count_below == 0 and not rep.on_wall


def test_on_wall_weight_reports_no_count():
    rep = rd.alcove_bands((4, 0), 5, rd.build_root_system("A2"))
    assert rep.on_wall and rep.count_below is None


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_a2_dominant_alcove_count_grows_like_triangles(p):
    # dominant A2 alcoves with every band <= k number (k+1)^2 for the highest-coroot band k
    rs = rd.build_root_system("A2")
    for k in range(3):
        bands = rd.dominant_alcove_bands(rs, p, (k, k, k))
        assert sum(1 for b in bands if b[2] <= k) == (k + 1) ** 2


def test_pairing_vector_is_rho_shifted():
    rs = rd.build_root_system("B2")
    pv = rd.pairing_vector((0, 0), rs)
    assert pv == [sum(c) for c in rd.positive_coroots(rs)]
    assert all(np.asarray(pv) > 0)

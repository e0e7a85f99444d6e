import math
from fractions import Fraction

import pytest

import cyheight as c


def test_heights():
    assert c.height(11, 5, 3) == 1
    assert c.height(2, 5, 3) == math.inf
    assert c.theorem_height(31, 5, 3) == 1
    assert c.theorem_height(7, 3, 1) is None
    details = c.height_details(11, 5, 3)
    assert details["deficient"] == 1 and details["total"] == 204


def test_enumeration_and_hodge():
    assert c.count_A(5, 3) == 204
    alphas = c.enumerate_A(4, 2)
    assert len(alphas) == 21 and alphas == sorted(alphas)
    assert c.hodge_numbers(5, 3) == [1, 101, 101, 1]
    assert c.stickelberger_AH((1, 1, 1, 1, 1), 5, 2) == 6


def test_jacobi_sum_has_weil_modulus():
    # 1 + 3 zeta_3 has norm 1 - 3 + 9 = 7.
    a0, a1 = c.jacobi_sum(7, 3, (1, 1, 1))
    assert a0 * a0 - a0 * a1 + a1 * a1 == 7


def test_zeta_and_point_counts():
    z = c.zeta(7, 3, 1)
    assert z["P"] == [1, 1, 7]
    assert z["pole_roots"] == [1, 7]
    assert c.point_count(7, 3, 1, 2) == c.brute_force_point_count(7, 3, 1, 2) == 63
    assert len(c.zeta(3, 4, 2)["P"]) == 22


def test_stickelberger_rows():
    rows = c.stickelberger_rows(3, 4, 2)
    assert len(rows) == 21
    assert all(r["equal"] and r["weil"] for r in rows)


def test_slopes_symmetric():
    slopes = c.newton_slopes(2, 5, 3)
    flipped = sorted((3 - s, k) for s, k in slopes)
    assert flipped == slopes


def test_artin_and_kummer():
    assert c.artin_comparison(3, 8, 6) == {"additive_type": True, "fully_rigged": False}
    assert c.fully_rigged(3, 4, 2)
    assert c.kummer_example_height(7) == 1
    assert c.kummer_example_height(5) == math.inf
    assert c.ec_count_points(7, 0, 1) == 12
    assert c.abelian_height(3, 2) == 2


def test_lattices():
    assert c.lattice_index(1, 1, 1) == 1
    assert c.lattice_index(4, 0, 1) == Fraction(1, 16)
    assert c.lattice_basis(1, 0, 1) == c.lattice_basis(1, 0, 1, "standard")


def test_errors():
    with pytest.raises(ValueError):
        c.height(10, 5, 3)
    with pytest.raises(ValueError):
        c.zeta(5, 5, 3)
    with pytest.raises(c.BudgetExceeded):
        c.enumerate_A(5, 3, max_alphas=10)

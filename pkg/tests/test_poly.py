"""Polynomial coefficient maps: calculus, Green operator, spine evaluation."""

import random
from fractions import Fraction as F

import pytest

from sgortho.coeffs import alpha, beta, gamma
from sgortho.poly import Poly


def random_poly(rng, maxdeg=3, families=(1, 2, 3)):
    coeffs = {}
    for _ in range(rng.randint(1, 5)):
        j = rng.randint(0, maxdeg)
        k = rng.choice(families)
        coeffs[(j, k)] = F(rng.randint(-9, 9), rng.randint(1, 9))
    return Poly(coeffs)


def test_zero_coefficients_dropped():
    p = Poly({(2, 1): F(0), (1, 2): F(3)})
    assert (2, 1) not in p.coeffs
    assert p.degree == 1
    assert Poly.zero().degree == -1


def test_arithmetic():
    p = Poly.monomial(2, 1) + Poly.monomial(0, 2, F(1, 3))
    q = p - Poly.monomial(2, 1)
    assert q == Poly.monomial(0, 2, F(1, 3))
    assert p.scale(0).is_zero()
    assert (-p) + p == Poly.zero()


def test_laplacian_shifts():
    assert Poly.monomial(3, 2).laplacian() == Poly.monomial(2, 2)
    assert Poly.monomial(0, 3).laplacian().is_zero()
    p = Poly({(2, 1): F(5), (1, 3): F(-1), (0, 2): F(7)})
    assert p.laplacian() == Poly({(1, 1): F(5), (0, 3): F(-1)})


def test_green_monomial_rules():
    assert Poly.monomial(0, 1).green() == Poly({(1, 1): F(1), (0, 2): F(1, 3)})
    assert Poly.monomial(0, 2).green() == Poly({(1, 2): F(1),
                                                (0, 2): 2 * beta(1)})
    assert Poly.monomial(1, 3).green() == Poly({(2, 3): F(1),
                                                (0, 3): -2 * gamma(2)})


def test_green_is_right_inverse_and_dirichlet():
    rng = random.Random(7)
    for _ in range(20):
        f = random_poly(rng)
        g = f.green()
        assert g.laplacian() == f
        for v in (0, 1, 2):
            assert g.boundary_value(v) == 0


def test_green_image_vanishing_is_forced():
    g = Poly.monomial(0, 1).green()
    assert alpha(1) + F(1, 3) * beta(0) == 0  # the q1 value, spelled out
    assert g.boundary_value(1) == 0


def test_spine_scaling():
    for j in range(4):
        for m in range(4):
            assert Poly.monomial(j, 1).eval_spine(m, 1) == F(1, 5**(j * m)) * alpha(j)
            assert Poly.monomial(j, 1).eval_spine(m, 2) == F(1, 5**(j * m)) * alpha(j)
            assert Poly.monomial(j, 2).eval_spine(m, 1) == \
                F(3**m, 5**((j + 1) * m)) * beta(j)
            assert Poly.monomial(j, 3).eval_spine(m, 2) == \
                -F(1, 5**((j + 1) * m)) * gamma(j)


def test_spine_constant_and_depth_zero():
    one = Poly.monomial(0, 1)
    for m in range(5):
        assert one.eval_spine(m, 1) == 1
    p = Poly({(1, 2): F(2), (0, 3): F(1)})
    assert p.eval_spine(0, 1) == 2 * beta(1) + gamma(0)
    assert p.eval_spine(0, 2) == 2 * beta(1) - gamma(0)


def test_spine_rejections():
    with pytest.raises(ValueError):
        Poly.monomial(0, 1).eval_spine(1, 0)
    with pytest.raises(ValueError):
        Poly.monomial(0, 1).eval_spine(-1, 1)
    shifted = Poly({(0, 3): F(1)}, base_point=1)
    with pytest.raises(ValueError):
        shifted.eval_spine(1, 1)
    with pytest.raises(ValueError):
        shifted.green()


def test_base_point_mixing_rejected():
    a = Poly({(0, 3): F(1)}, base_point=1)
    b = Poly({(0, 3): F(1)}, base_point=0)
    with pytest.raises(ValueError):
        _ = a + b


def test_json_dict_sorted_keys():
    p = Poly({(1, 2): F(1, 3), (0, 1): F(-2)})
    assert p.to_json_dict() == {"(0,1)": "-2", "(1,2)": "1/3"}

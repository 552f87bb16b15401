"""Coefficient sequences, boundary tables and integrals against frozen values.

The frozen rationals were computed by a separate direct transcription of the
recursions (no memoization, no shared code) before this package was written.
"""

from fractions import Fraction as F

import pytest

from sgortho.coeffs import (CoeffTable, alpha, alpha_prime, beta, eta, gamma,
                            monomial_boundary, monomial_integral,
                            monomial_normal, monomial_value)

FROZEN_ALPHA = {0: F(1), 1: F(1, 6), 2: F(1, 180), 3: F(1, 16200),
                4: F(1, 3013200), 5: F(1, 979290000),
                6: F(829, 413005764600000)}
FROZEN_BETA = {0: F(-1, 2), 1: F(-2, 45), 2: F(-49, 48600),
               3: F(-29, 3389850), 4: F(-9169, 237967470000),
               5: F(-51478, 522710420821875)}
FROZEN_ETA = {0: F(0), 1: F(1, 2), 2: F(1, 36), 3: F(1, 2430),
              4: F(37, 13559400), 5: F(47, 4759349400)}


@pytest.mark.parametrize("j,value", sorted(FROZEN_ALPHA.items()))
def test_alpha_frozen(j, value):
    assert alpha(j) == value


@pytest.mark.parametrize("j,value", sorted(FROZEN_BETA.items()))
def test_beta_frozen(j, value):
    assert beta(j) == value


@pytest.mark.parametrize("j,value", sorted(FROZEN_ETA.items()))
def test_eta_frozen(j, value):
    assert eta(j) == value


def test_initial_data():
    assert alpha(0) == 1 and alpha(1) == F(1, 6)
    assert beta(0) == F(-1, 2) and eta(0) == 0
    assert alpha_prime(0) == F(1, 2)
    for j in range(1, 8):
        assert alpha_prime(j) == alpha(j)


def test_gamma_is_shifted_alpha():
    for j in range(12):
        assert gamma(j) == 3 * alpha(j + 1)


def test_negative_indices_are_zero():
    for fn in (alpha, beta, gamma, eta, alpha_prime):
        assert fn(-1) == 0
        assert fn(-7) == 0


def test_beta_never_vanishes_up_to_50():
    nonzero = [j for j in range(51) if beta(j) != 0]
    assert len(nonzero) == 51


def test_boundary_values():
    assert monomial_value(0, 1, 0) == 1
    assert monomial_value(3, 1, 0) == 0
    assert monomial_value(2, 1, 1) == alpha(2)
    assert monomial_value(2, 1, 2) == alpha(2)
    assert monomial_value(2, 2, 1) == beta(2)
    assert monomial_value(2, 3, 1) == gamma(2)
    assert monomial_value(2, 3, 2) == -gamma(2)


def test_boundary_normals():
    assert monomial_normal(0, 2, 0) == 1
    assert monomial_normal(1, 1, 0) == 0
    assert monomial_normal(0, 2, 1) == F(-1, 2)
    assert monomial_normal(0, 2, 2) == F(-1, 2)
    for j in range(1, 6):
        assert monomial_normal(j, 2, 1) == -alpha(j)
    for j in range(6):
        assert monomial_normal(j, 1, 1) == eta(j)
        assert monomial_normal(j, 3, 1) == 3 * eta(j + 1)
        assert monomial_normal(j, 3, 2) == -3 * eta(j + 1)


def test_boundary_kind_dispatch_and_rejections():
    assert monomial_boundary(0, 1, 0, "value") == 1
    assert monomial_boundary(0, 2, 1, "normal") == F(-1, 2)
    with pytest.raises(ValueError):
        monomial_boundary(0, 1, 1, "tangential")
    with pytest.raises(ValueError):
        monomial_boundary(0, 1, 3, "value")
    with pytest.raises(ValueError):
        monomial_boundary(0, 4, 1, "value")
    with pytest.raises(ValueError):
        monomial_boundary(-1, 1, 1, "value")


def test_integrals():
    assert monomial_integral(0, 1) == 1
    assert monomial_integral(0, 2) == F(-1, 3)
    assert monomial_integral(2, 1) == F(1, 1215)  # = 2 eta_3
    for j in range(6):
        assert monomial_integral(j, 3) == 0
        assert monomial_integral(j, 1) == 2 * eta(j + 1)
        assert monomial_integral(j, 2) == -2 * alpha(j + 1)


def test_harmonic_integral_equals_corner_mean():
    # independent cross-check: a harmonic function integrates to the mean of
    # its three corner values
    for k in (1, 2, 3):
        mean = sum(monomial_value(0, k, v) for v in (0, 1, 2)) / 3
        assert monomial_integral(0, k) == mean


def test_sum_of_normals_vanishes_for_harmonics():
    for k in (1, 2, 3):
        assert sum(monomial_normal(0, k, v) for v in (0, 1, 2)) == 0


def test_cache_roundtrip(tmp_path):
    table = CoeffTable()
    table.alpha(9)
    table.beta(9)
    table.eta(9)
    table.save(str(tmp_path))
    fresh = CoeffTable()
    assert fresh.load(str(tmp_path))
    assert fresh.alpha(9) == alpha(9)
    assert fresh.beta(9) == beta(9)
    assert fresh.eta(9) == eta(9)
    assert not CoeffTable().load(str(tmp_path / "missing"))


def test_concurrent_readers():
    import threading

    table = CoeffTable()
    errors = []

    def worker(seed):
        try:
            for j in range(30):
                idx = (j * 7 + seed) % 25
                assert table.gamma(idx) == 3 * table.alpha(idx + 1)
        except AssertionError as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(s,)) for s in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors

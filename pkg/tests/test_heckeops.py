from random import Random

import pytest

from backend.core.heckeops import (
    SpaceDescriptor,
    eta_modularity_check,
    gamma0_index,
    hecke_eigenvalue,
    hecke_tp,
    kronecker,
    sturm_bound,
)
from backend.core.qseries import QSeries, eta_quotient_expand, f_b_spec, parse_eta_product
from backend.utils.exceptions import InsufficientTruncationError, LevelError, UnsupportedInstanceError


@pytest.mark.parametrize("a, n, expected", [
    (-4, 3, -1),
    (-4, 5, 1),
    (-8, 3, 1),
    (-3, 2, -1),
    (-24, 5, 1),
    (-24, 23, -1),
    (-4, 2, 0),
    (5, -1, 1),
    (-5, -1, -1),
    (1, 0, 1),
    (2, 0, 0),
])
def test_kronecker(a, n, expected):
    assert kronecker(a, n) == expected


@pytest.mark.parametrize("k, N, bound", [
    (2, 576, 192),
    (2, 2304, 768),
    (2, 36, 12),
    (2, 32, 8),
    (2, 27, 6),
    (2, 1, 0),
])
def test_sturm_bound(k, N, bound):
    assert sturm_bound(k, N) == bound


def test_sturm_bound_grows_along_divisibility():
    for N in (36, 144, 576, 2304):
        assert sturm_bound(2, N) <= sturm_bound(2, 2 * N)
    assert gamma0_index(144) == 288


def test_hecke_truncation():
    f = eta_quotient_expand(f_b_spec(1), 100)
    image = hecke_tp(f, 23, SpaceDescriptor(2, 144))
    assert image.truncation == 100 // 23
    with pytest.raises(InsufficientTruncationError):
        hecke_tp(f.truncate(20), 23, SpaceDescriptor(2, 144))
    with pytest.raises(UnsupportedInstanceError):
        hecke_tp(f, 21, SpaceDescriptor(2, 144))


def test_hecke_eigenvalues_of_cm_forms():
    f1 = eta_quotient_expand(parse_eta_product("eta(6z)^4"), 600)
    space = SpaceDescriptor(2, 36)
    assert hecke_tp(f1, 5, space).is_zero()
    assert hecke_tp(f1, 23, space).is_zero()
    assert hecke_eigenvalue(f1, 7, space) == -4

    f2 = eta_quotient_expand(parse_eta_product("eta(4z)^2*eta(8z)^2"), 600)
    assert hecke_eigenvalue(f2, 5, SpaceDescriptor(2, 32)) == -2


def test_hecke_second_term():
    # c(p) = a(p^2) + p a(1) for the identity series a(n) = 1
    f = QSeries(0, 50, (1,) * 50)
    image = hecke_tp(f, 5, SpaceDescriptor(2, 1))
    assert image.coefficient(5) == 1 + 5
    assert image.coefficient(3) == 1


def test_modularity_of_f4():
    report = eta_modularity_check(f_b_spec(4), 576)
    assert report.holds
    assert report.character_trivial
    assert report.space() == SpaceDescriptor(2, 576, 1)


def test_modularity_level_error():
    with pytest.raises(LevelError):
        eta_modularity_check(f_b_spec(4), 100)


def test_half_integral_weight():
    spec = parse_eta_product("eta(z)^1")
    with pytest.raises(UnsupportedInstanceError):
        eta_modularity_check(spec, 24)
    report = eta_modularity_check(spec, 24, allow_half_integral=True)
    assert not report.holds
    with pytest.raises(UnsupportedInstanceError):
        report.space()


def test_hecke_is_linear():
    rng = Random(11)
    space = SpaceDescriptor(2, 36)
    f = QSeries(0, 200, tuple(rng.randint(-9, 9) for _ in range(200)))
    g = QSeries(0, 200, tuple(rng.randint(-9, 9) for _ in range(200)))
    for p in (5, 7, 11):
        combined = hecke_tp(f + g.scale(3), p, space)
        separate = hecke_tp(f, p, space) + hecke_tp(g, p, space).scale(3)
        assert combined.dense() == separate.dense()


@pytest.mark.parametrize("a, n", [(-4, 5), (1, 23), (-24, 23), (-3, 10), (5, 9)])
def test_kronecker_returns_plain_int(a, n):
    assert type(kronecker(a, n)) is int


def test_hecke_image_has_plain_int_coefficients():
    f = eta_quotient_expand(f_b_spec(5), 23 * 60)
    image = hecke_tp(f, 23, SpaceDescriptor(2, 720))
    assert image.truncation == 60
    assert all(type(image.coefficient(n)) is int for n in range(image.valuation, image.truncation))

import random
from fractions import Fraction

import pytest

from backend.core.exactalg import QuadElement
from backend.core.qseries import (
    QSeries,
    eta_factor,
    eta_quotient_expand,
    f_b_spec,
    format_eta_product,
    linear_combination,
    mul,
    parse_eta_product,
    partition_numbers,
    pentagonal_terms,
    rescale,
    series_from_json,
    series_to_json,
    series_to_text,
    support_residues,
)
from backend.utils.exceptions import (
    InsufficientTruncationError,
    ParseError,
    RingMismatchError,
    UnsupportedInstanceError,
)


def test_pentagonal_terms():
    assert pentagonal_terms(13) == [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)]


def test_partition_numbers():
    p = partition_numbers(101)
    assert p[:10] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    assert p[100] == 190569292


def test_euler_square_matches_appendix1(appendix1):
    series = eta_factor(1, 2, 1001)
    assert list(series.coeffs[1:]) == appendix1


def test_negative_power_is_inverse():
    rng = random.Random(7)
    for _ in range(5):
        r = rng.randint(1, 6)
        delta = rng.randint(1, 4)
        product = eta_factor(delta, r, 200) * eta_factor(delta, -r, 200)
        assert product.dense() == [1] + [0] * 199


def test_mul_truncation_rule():
    f = QSeries(2, 10, tuple(range(1, 9)))
    g = QSeries(1, 5, (1, 1, 1, 1))
    h = mul(f, g)
    assert h.valuation == 3
    assert h.truncation == min(10 + 1, 5 + 2)
    assert h.coefficient(3) == 1
    assert h.coefficient(4) == 1 + 2


def test_coefficient_beyond_truncation():
    f = eta_factor(1, 2, 20)
    with pytest.raises(InsufficientTruncationError):
        f.coefficient(20)


def test_ring_mismatch():
    f = QSeries(0, 3, (1, 2, 3))
    g = QSeries.from_coefficients([Fraction(1, 2), 0, 0], ring="QQ")
    with pytest.raises(RingMismatchError):
        f + g
    k = QSeries.from_coefficients([QuadElement(-4, 1, 1), QuadElement(-4, 0, 0)])
    m = QSeries.from_coefficients([QuadElement(-3, 1, 1), QuadElement(-3, 0, 0)])
    assert k.ring == "QK(-4)"
    with pytest.raises(RingMismatchError):
        k * m


def test_parse_eta_product():
    spec = parse_eta_product("eta(12z)^2 * eta(48z)^2")
    assert spec.factors == ((12, 2), (48, 2))
    assert spec.s == 5
    assert spec.weight == 2
    assert format_eta_product(spec) == "eta(12z)^2*eta(48z)^2"
    merged = parse_eta_product("eta(z)^3*eta(z)^-1*eta(2z)")
    assert merged.factors == ((1, 2), (2, 1))


@pytest.mark.parametrize("text", ["", "eta(z", "eta(0z)^2", "eta(z)^2+eta(2z)", "eta(z)^2*eta(z)^-2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_eta_product(text)


def test_expand_f4():
    f = eta_quotient_expand(parse_eta_product("eta(12z)^2*eta(48z)^2"), 15)
    assert f.valuation == 5
    assert f.first_nonzero() == 5
    assert f.coefficient(5) == 1
    assert f.coefficient(6) == 0
    assert f.truncation == 15


def test_expand_dilated_product():
    dilated = eta_quotient_expand(f_b_spec(4), 600)
    direct = mul(eta_factor(12, 2, 595), eta_factor(48, 2, 595)).shift(5)
    assert dilated.dense() == direct.dense()
    assert dilated.coefficient(17) == -2


def test_expand_eta_6z_fourth_power():
    f = eta_quotient_expand(parse_eta_product("eta(6z)^4"), 50)
    assert f.terms()[:5] == [(1, 1), (7, -4), (13, 2), (19, 8), (25, -5)]


def test_non_integral_prefactor():
    with pytest.raises(UnsupportedInstanceError):
        eta_quotient_expand(parse_eta_product("eta(z)"), 10)


@pytest.mark.parametrize("b", [1, 2, 3, 4, 16])
def test_support_residue(b):
    f = eta_quotient_expand(f_b_spec(b), 200)
    assert f.valuation == 1 + b
    assert support_residues(f, 12) == {(1 + b) % 12}


def test_rescale():
    g = rescale(QSeries(0, 3, (1, -1, 2)), 3)
    assert g.dense() == [1, 0, 0, -1, 0, 0, 2, 0, 0]


def test_json_document():
    f = eta_quotient_expand(f_b_spec(2), 40)
    doc = series_to_json(f)
    assert doc["valuation"] == 3
    assert series_from_json(doc) == f
    doc["coeffs"] = doc["coeffs"][:-1]
    with pytest.raises(ParseError):
        series_from_json(doc)


def test_series_text():
    f = QSeries(1, 4, (1, 0, -2))
    assert series_to_text(f) == "1 1\n3 -2"


def test_linear_combination():
    f = QSeries(0, 4, (1, 2, 3, 4))
    g = QSeries(1, 3, (1, 1))
    h = linear_combination([(2, f), (-1, g)])
    assert h.truncation == 3
    assert h.dense() == [2, 3, 5]

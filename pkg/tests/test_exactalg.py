from fractions import Fraction

import pytest

from backend.core.exactalg import (
    QuadElement,
    TowerElement,
    format_quad,
    format_scalar,
    norm,
    parse_quad,
    parse_scalar,
    quad_conjugate,
    ring_mul,
    ring_tag,
    zero_of,
)
from backend.utils.exceptions import (
    FieldMismatchError,
    ParseError,
    TowerParameterError,
    UnsupportedInstanceError,
)

U = (Fraction(1), Fraction(0), Fraction(-2), Fraction(0))


@pytest.mark.parametrize("disc, square", [
    (-4, (-1, 0)),
    (-8, (-2, 0)),
    (-3, (-1, -1)),
    (-24, (-6, 0)),
])
def test_generator_squares(disc, square):
    theta = QuadElement.theta(disc)
    assert theta * theta == QuadElement(disc, *square)


def test_norm_and_conjugate():
    x = QuadElement(-24, 2, 1)
    assert norm(x) == 10
    assert x * x.conjugate() == 10
    omega = QuadElement(-3, 0, 1)
    assert omega.conjugate() == QuadElement(-3, -1, -1)
    assert norm(QuadElement(-4, 3, 4)) == 25


@pytest.mark.parametrize("disc", [-3, -4, -8, -24])
def test_quad_conjugate(disc):
    x = QuadElement(disc, 2, Fraction(-5, 3))
    conj = quad_conjugate(x)
    assert conj != x
    assert quad_conjugate(conj) == x
    assert x + conj == x.trace()
    assert x * conj == norm(x)
    assert quad_conjugate(QuadElement(disc, 7)) == 7


def test_quad_conjugate_values():
    assert quad_conjugate(QuadElement(-4, 3, 4)) == QuadElement(-4, 3, -4)
    assert quad_conjugate(QuadElement(-3, 0, 1)) == QuadElement(-3, -1, -1)


def test_division_is_exact():
    x = QuadElement(-4, 1, 2)
    y = QuadElement(-4, 2, -1)
    assert (x / y) * y == x
    assert (x / y).a == 0 and (x / y).b == 1


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        QuadElement(-4, 1, 1) + QuadElement(-3, 1, 1)


def test_unsupported_discriminant():
    with pytest.raises(UnsupportedInstanceError):
        QuadElement(-7, 1, 1)


def test_quad_format():
    assert format_quad(QuadElement(-4, 1, 2)) == "1+2*theta(-4)"
    assert format_quad(QuadElement(-24, Fraction(-1, 2), -3)) == "-1/2-3*theta(-24)"
    assert parse_quad("-1/2-3*theta(-24)") == QuadElement(-24, Fraction(-1, 2), -3)
    with pytest.raises(ParseError):
        parse_quad("1+2*i")


def test_tower_relations():
    i, r = TowerElement.i(), TowerElement.r()
    assert i * i == -1
    assert r * r == -6
    assert TowerElement.sqrt6() ** 2 == 6
    # sqrt-6 embeds as r and equals i * sqrt6
    assert TowerElement.from_quad(QuadElement(-24, 0, 1)) == i * TowerElement.sqrt6()


def test_tower_branch_square():
    s = TowerElement.s(U)
    assert s * s == TowerElement((1, 0, -2, 0, 0, 0, 0, 0))
    assert s * s.inverse() == 1
    assert (s + 3) / (s + 3) == 1


def test_ring_mul():
    i, r, sqrt6 = TowerElement.i(), TowerElement.r(), TowerElement.sqrt6()
    assert ring_mul(i, i) == -1
    assert ring_mul(r, r) == -6
    assert ring_mul(i, sqrt6) == r
    s = TowerElement.s(U)
    assert ring_mul(s, s) == TowerElement((1, 0, -2, 0, 0, 0, 0, 0))
    assert ring_mul(ring_mul(i, r), s) == TowerElement((0, 0, 0, 0, 0, 0, 0, 1), U)

    x = TowerElement((1, 2, 0, -1, 3, 0, 1, 0), U)
    y = TowerElement((0, 1, Fraction(1, 2), 0, -1, 2, 0, 1), U)
    z = TowerElement((-2, 0, 1, 1, 0, 0, Fraction(3, 4), 0), U)
    assert ring_mul(x, y) == ring_mul(y, x)
    assert ring_mul(ring_mul(x, y), z) == ring_mul(x, ring_mul(y, z))
    assert ring_mul(x, y + z) == ring_mul(x, y) + ring_mul(x, z)
    assert ring_mul(x, TowerElement.from_rational(1)) == x
    assert ring_mul(x, TowerElement.from_rational(0)).is_zero()


def test_ring_mul_parameter_mismatch():
    with pytest.raises(TowerParameterError):
        ring_mul(TowerElement.s(U), TowerElement.s((2, 0, 0, 0)))


def test_tower_parameter_mismatch():
    s = TowerElement.s(U)
    other = TowerElement.s((2, 0, 0, 0))
    with pytest.raises(TowerParameterError):
        s + other
    with pytest.raises(TowerParameterError):
        TowerElement((0, 0, 0, 0, 1, 0, 0, 0))


def test_elements_without_branch_combine_freely():
    s = TowerElement.s(U)
    assert (s + TowerElement.i()).parameter == U
    assert TowerElement.r() + 1 == TowerElement((1, 0, 1, 0, 0, 0, 0, 0))


def test_scalar_serialization():
    x = TowerElement((1, Fraction(1, 2), 0, -3, 2, 0, 0, 1), U)
    tag = ring_tag(x)
    assert tag == "tower(1,0,-2,0)"
    assert parse_scalar(format_scalar(x), tag) == x
    assert parse_scalar(format_scalar(QuadElement(-3, 2, -5)), "QK(-3)") == QuadElement(-3, 2, -5)
    assert parse_scalar("7", "ZZ") == 7
    assert zero_of(tag).is_zero()


def test_scalar_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("1/2", "ZZ")
    with pytest.raises(ParseError):
        parse_scalar("1+2*theta(-4)", "QK(-8)")
    with pytest.raises(ParseError):
        parse_scalar("3", "GF(5)")

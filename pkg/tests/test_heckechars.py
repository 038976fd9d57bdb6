from fractions import Fraction
from itertools import combinations

import pytest

from backend.core.exactalg import QuadElement, TowerElement
from backend.core.heckechars import (
    CASE_TAGS,
    alpha_ideal,
    branch_scale,
    create_character,
    evaluate,
    primary_representative,
)
from backend.core.quadideals import NonPrincipal, Principal, classify, ideal_mul, ideals_of_norm, is_coprime
from backend.utils.exceptions import CharacterDomainError, UnsupportedInstanceError

BRANCH_PARAMETER = (Fraction(1), Fraction(0), Fraction(-2), Fraction(0))


@pytest.mark.parametrize("tag, level", [
    ("case1", 36),
    ("case2", 32),
    ("case3", 27),
    ("case4_plus", 576),
    ("case4_minus", 576),
    ("603", 2304),
    ("203", 2304),
    ("130", 2304),
    ("130p", 2304),
    ("310", 2304),
    ("310p", 2304),
])
def test_character_levels(tag, level):
    assert tag in CASE_TAGS
    assert create_character(tag).level == level


def test_unknown_character():
    with pytest.raises(UnsupportedInstanceError):
        create_character("case9")


def test_sqrt_minus_6_characters_share_one_branch_parameter():
    for tag in ("130", "130p", "310", "310p"):
        assert create_character(tag).branch_parameter == BRANCH_PARAMETER
    s = TowerElement.s(BRANCH_PARAMETER)
    assert create_character("130").branch == s
    assert create_character("130p").branch == -s


def test_primary_representative_is_unique():
    spec = create_character("case2")
    i = QuadElement(-4, 0, 1)
    g = QuadElement(-4, 1, 2)
    representatives = {primary_representative(spec, u * g) for u in (1, i, -1, -i)}
    assert len(representatives) == 1


def test_value_outside_domain():
    spec = create_character("case2")
    two = ideals_of_norm(spec.field, 2)[0]
    with pytest.raises(CharacterDomainError):
        evaluate(spec, two)


def _coprime_ideals(spec, norms):
    return [ideal for m in norms for ideal in ideals_of_norm(spec.field, m) if is_coprime(ideal, spec.conductor)]


@pytest.mark.parametrize("tag", ["case1", "case4_plus", "603", "130", "310p"])
def test_values_are_multiplicative(tag):
    spec = create_character(tag)
    ideals = _coprime_ideals(spec, (5, 7, 11, 13, 17, 19))
    for a, b in combinations(ideals, 2):
        if a.norm == b.norm:
            continue
        assert evaluate(spec, ideal_mul(a, b)) == evaluate(spec, a) * evaluate(spec, b)


def test_values_have_the_ideal_norm_as_absolute_square():
    spec = create_character("case4_minus")
    for ideal in _coprime_ideals(spec, (5, 13, 25, 29)):
        value = evaluate(spec, ideal)
        assert value.abs_squared() == ideal.norm


def test_primed_characters_flip_sign_on_the_non_principal_class():
    plain, primed = create_character("130"), create_character("130p")
    for ideal in _coprime_ideals(plain, (5, 7, 11, 29, 31)):
        if isinstance(classify(ideal), Principal):
            assert evaluate(primed, ideal) == evaluate(plain, ideal)
        else:
            assert evaluate(primed, ideal) == -evaluate(plain, ideal)


def test_alpha_is_the_branch_ideal():
    spec = create_character("130")
    alpha = alpha_ideal()
    assert isinstance(classify(alpha), NonPrincipal)
    assert evaluate(spec, alpha) == spec.branch


def test_branch_scale():
    t = branch_scale(create_character("130"))
    r = TowerElement.r()
    assert t * (6 - 2 * r) == TowerElement.s(BRANCH_PARAMETER)
    with pytest.raises(UnsupportedInstanceError):
        branch_scale(create_character("603"))

from fractions import Fraction
from math import gcd

import pytest

from backend.core.cmforms import (
    Combination,
    _expansion_cache,
    cm_expansion,
    coefficient_via_multiplicativity,
    combine,
    create_case_combination,
    create_cm_form,
    form_coefficient_via_multiplicativity,
    hasse_bound_holds,
    verify_case,
    verify_identity,
)
from backend.core.exactalg import QuadElement, TowerElement
from backend.core.heckechars import branch_scale, create_character
from backend.core.qseries import eta_quotient_expand, f_b_spec, parse_eta_product
from backend.utils.exceptions import (
    InsufficientTruncationError,
    NonRationalCombinationError,
    UnsupportedInstanceError,
)


def coefficient(tag, n):
    return cm_expansion(create_cm_form(tag), n + 1).coefficient(n)


@pytest.mark.parametrize("tag, n, value", [
    ("case1", 7, -4),
    ("case2", 5, -2),
    ("case3", 7, -1),
    ("case3", 4, -2),
    ("case4_plus", 5, -4),
    ("case4_minus", 5, 4),
    ("603", 5, 2),
    ("203", 5, -2),
    ("603", 49, -7),
    ("130", 49, 17),
])
def test_rational_coefficients(tag, n, value):
    assert coefficient(tag, n) == value


def test_sqrt_minus_6_coefficients():
    t = branch_scale(create_character("130"))
    assert t * coefficient("130", 5) == 1
    assert t * coefficient("130p", 5) == -1
    assert coefficient("130", 25) == 7
    assert coefficient("130", 7) == -2 * TowerElement.sqrt6()
    assert t * coefficient("310", 11) == -4 / TowerElement.sqrt6()


def test_unit_ideal_gives_leading_one():
    for tag in ("case1", "case4_plus", "203", "310p"):
        form = create_cm_form(tag)
        series = cm_expansion(form, 2)
        assert series.first_nonzero() == 1
        assert series.coefficient(1) == 1
    dilated = cm_expansion(create_cm_form("case2", delta=3), 20)
    assert dilated.first_nonzero() == 3


@pytest.mark.parametrize("case, bound", [(1, 12), (2, 8), (3, 6), (4, 192), (5, 768)])
def test_case_sturm_bounds(case, bound):
    assert create_case_combination(case).sturm_bound == bound


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_case_identities(case):
    report = verify_case(case)
    assert report.equal
    assert report.checked == report.bound + 1


def test_case4_combination_reads_eighths():
    combo = create_case_combination(4)
    combined = combine(combo, 30)
    target = eta_quotient_expand(f_b_spec(4), 30)
    assert combined.coefficient(5) == 1
    assert combined.coefficient(17) == -2
    assert [combined.coefficient(n) for n in range(30)] == [target.coefficient(n) for n in range(30)]


def test_identity_mismatch_is_reported():
    target = eta_quotient_expand(parse_eta_product("eta(6z)^4"), 20)
    report = verify_identity(target, create_case_combination(2), 8)
    assert not report.equal
    assert report.first_mismatch == 5
    assert report.expected == "0"
    assert report.actual == "-2"


def test_identity_needs_the_bound():
    target = eta_quotient_expand(f_b_spec(4), 100)
    with pytest.raises(InsufficientTruncationError):
        verify_identity(target, create_case_combination(4), 192)


def test_non_rational_combination():
    combo = Combination([(1, create_cm_form("130"))], f_b_spec(16))
    with pytest.raises(NonRationalCombinationError):
        combine(combo, 6)


def test_multiplicativity_matches_expansion():
    combo = create_case_combination(4)
    combined = combine(combo, 400)
    for n in range(1, 400):
        if gcd(n, 6) == 1:
            assert coefficient_via_multiplicativity(combo, n) == combined.coefficient(n)


def test_case5_coefficient_from_multiplicativity():
    combo = create_case_combination(5)
    assert coefficient_via_multiplicativity(combo, 29645) == -70
    assert coefficient_via_multiplicativity(combo, 17) == 1
    assert coefficient_via_multiplicativity(combo, 29) == -2


def test_multiplicativity_rejects_level_primes():
    with pytest.raises(UnsupportedInstanceError):
        form_coefficient_via_multiplicativity(create_cm_form("case2"), 6)


@pytest.mark.parametrize("tag", ["case1", "case3", "case4_plus", "603", "130", "310p"])
def test_hasse_bound(tag):
    for p in (5, 7, 11, 13, 17, 19, 29, 31, 37):
        assert hasse_bound_holds(coefficient(tag, p), p)


def test_hasse_bound_detects_large_values():
    assert not hasse_bound_holds(5, 5)
    assert hasse_bound_holds(4, 5)
    assert hasse_bound_holds(-4, 5)
    assert not hasse_bound_holds(Fraction(9, 2), 5)


def test_hasse_bound_in_coefficient_fields():
    # |4 + 2i|^2 = 20 sits on the bound at p = 5
    assert hasse_bound_holds(QuadElement(-4, 4, 2), 5)
    assert not hasse_bound_holds(QuadElement(-4, 4, 3), 5)
    assert not hasse_bound_holds(5 * TowerElement.i(), 5)
    assert hasse_bound_holds(2 * TowerElement.sqrt6(), 7)
    assert not hasse_bound_holds(3 * TowerElement.sqrt6(), 7)
    # |1 + sqrt6|^2 = 7 + 2 sqrt6 lies just under 12 and over 8
    assert hasse_bound_holds(1 + TowerElement.sqrt6(), 3)
    assert not hasse_bound_holds(1 + TowerElement.sqrt6(), 2)


def test_expansion_cache_is_keyed_on_the_character_tag():
    first = cm_expansion(create_cm_form("case1"), 120)
    assert ("case1", 1) in _expansion_cache
    assert cm_expansion(create_cm_form("case1"), 60) == first.truncate(60)
    shifted = cm_expansion(create_cm_form("case1", 6), 120)
    assert shifted.first_nonzero() == 6
    assert first.first_nonzero() == 1


@pytest.mark.slow
def test_case5_identity():
    report = verify_case(5)
    assert report.equal
    assert report.bound == 768

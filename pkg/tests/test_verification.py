import pytest

from backend.core.qseries import eta_quotient_expand, f_b_spec
from backend.services.verification import compare_appendix2, verify_with_fixtures
from backend.utils.exceptions import FixtureError


def test_small_cases_need_no_fixtures():
    combo, report, comparison = verify_with_fixtures(2)
    assert report.equal
    assert report.bound == combo.sturm_bound == 8
    assert comparison is None
    assert report.details["target"] == combo.target.describe()


def test_case4_against_appendix2(fixtures):
    _, report, comparison = verify_with_fixtures(4, fixtures)
    assert report.equal
    assert comparison.table == "appendix2"
    assert comparison.rows == 64
    assert comparison.matched == 63
    assert comparison.mismatched == []
    assert comparison.quarantined == {109: "inconsistent"}


def test_appendix2_mismatch_is_reported(fixtures):
    table = fixtures.appendix2.copy()
    n = int(table.loc[0, "n"])
    table.loc[0, "b"] += 1
    target = eta_quotient_expand(f_b_spec(4), int(table["n"].max()) + 1)
    comparison = compare_appendix2(table, target)
    assert comparison.mismatched == [n]
    assert comparison.details[n].startswith("b: table")


def test_quarantined_appendix2_row_is_checked_on_a_only(fixtures):
    table = fixtures.appendix2.copy()
    target = eta_quotient_expand(f_b_spec(4), int(table["n"].max()) + 1)
    row = table.index[table["n"] == 109][0]
    table.loc[row, "b"] = 1000
    assert compare_appendix2(table, target).mismatched == []
    table.loc[row, "a"] += 1
    comparison = compare_appendix2(table, target)
    assert comparison.mismatched == [109]
    assert comparison.details[109].startswith("a: table")


def test_appendix2_needs_a_long_target(fixtures):
    target = eta_quotient_expand(f_b_spec(4), 50)
    with pytest.raises(FixtureError):
        compare_appendix2(fixtures.appendix2, target)


@pytest.mark.parametrize("case", [4, 5])
def test_fixture_cases_need_fixtures(case):
    with pytest.raises(FixtureError):
        verify_with_fixtures(case)


@pytest.mark.slow
def test_case5_against_appendix3(fixtures):
    _, report, comparison = verify_with_fixtures(5, fixtures)
    assert report.equal
    assert comparison.table == "appendix3"
    assert comparison.rows == 256
    assert comparison.mismatched == []
    assert sorted(comparison.quarantined) == [1, 269, 637, 683, 749]
    assert comparison.matched == 251

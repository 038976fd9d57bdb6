import pytest

from backend.core.quadideals import (
    EISENSTEIN,
    FIELDS,
    GAUSSIAN,
    SQRT_MINUS_2,
    SQRT_MINUS_6,
    NonPrincipal,
    Principal,
    QuadIdeal,
    classify,
    elements_of_norm,
    ideal_conjugate,
    ideal_count_oracle,
    ideal_from_generator_pair,
    ideal_mul,
    ideals_of_norm,
    is_coprime,
    is_inert,
    lattice_ideals_of_norm,
    principal_ideal,
    splitting_type,
)
from backend.utils.exceptions import UnsupportedInstanceError


@pytest.mark.parametrize("disc", sorted(FIELDS))
def test_ideals_of_norm_against_lattice_enumeration(disc):
    field = FIELDS[disc]
    for m in range(1, 121):
        ideals = ideals_of_norm(field, m)
        assert len(ideals) == ideal_count_oracle(field, m)
        assert set(ideals) == set(lattice_ideals_of_norm(field, m))
        assert all(ideal.norm == m for ideal in ideals)


@pytest.mark.parametrize("disc", sorted(FIELDS))
def test_23_is_inert_everywhere(disc):
    assert is_inert(FIELDS[disc], 23)


@pytest.mark.parametrize("field, p, kind", [
    (GAUSSIAN, 2, "ramified"),
    (GAUSSIAN, 5, "split"),
    (GAUSSIAN, 3, "inert"),
    (SQRT_MINUS_2, 3, "split"),
    (EISENSTEIN, 7, "split"),
    (EISENSTEIN, 3, "ramified"),
    (SQRT_MINUS_6, 5, "split"),
    (SQRT_MINUS_6, 2, "ramified"),
])
def test_splitting_type(field, p, kind):
    assert splitting_type(field, p) == kind


def test_ramified_prime_is_not_inert():
    assert not is_inert(GAUSSIAN, 2)


def test_class_group_of_sqrt_minus_6():
    alpha = ideal_from_generator_pair(SQRT_MINUS_6, SQRT_MINUS_6.element(5), SQRT_MINUS_6.element(2, 1))
    assert alpha.norm == 5
    assert isinstance(classify(alpha), NonPrincipal)
    square = ideal_mul(alpha, alpha)
    assert isinstance(classify(square), Principal)
    assert isinstance(classify(ideal_mul(alpha, ideal_conjugate(alpha))), Principal)
    assert isinstance(classify(principal_ideal(SQRT_MINUS_6, SQRT_MINUS_6.element(2, 1))), Principal)


def test_generators_have_the_ideal_norm():
    for m in range(1, 60):
        for ideal in ideals_of_norm(GAUSSIAN, m):
            cls = classify(ideal)
            assert isinstance(cls, Principal)
            assert cls.generator.norm == m
            assert ideal.contains(cls.generator)


def test_elements_of_norm():
    assert len(elements_of_norm(GAUSSIAN, 5)) == 8
    assert len(elements_of_norm(EISENSTEIN, 1)) == 6
    assert elements_of_norm(SQRT_MINUS_6, 5) == []


def test_coprimality():
    two = ideals_of_norm(GAUSSIAN, 2)[0]
    assert not is_coprime(ideals_of_norm(GAUSSIAN, 4)[0], two)
    assert all(is_coprime(ideal, two) for ideal in ideals_of_norm(GAUSSIAN, 25))


def test_invalid_normal_form():
    with pytest.raises(UnsupportedInstanceError):
        QuadIdeal(GAUSSIAN, 1, 3, 1)


@pytest.mark.parametrize("disc", sorted(FIELDS))
def test_ideal_counts_match_the_splitting_oracle(disc):
    field = FIELDS[disc]
    for m in range(1, 2001):
        assert len(ideals_of_norm(field, m)) == ideal_count_oracle(field, m)

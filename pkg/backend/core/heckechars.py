"""
Hecke characters with infinity exponent 1 attached to the lacunary eta products.

Every character is described by:

- a normalizing modulus and a set of "standard" residues: each generator g
  coprime to the conductor has exactly one unit multiple whose residue is
  standard;
- residue components: finite subgroups of (O/m)^* with listed generators,
  decomposed through a precomputed lookup table;
- a prefactor i^(weights . exponents) (times a sign) multiplying the
  standard generator.

For Q(sqrt-6) the non-principal class is handled through the fixed ideal
alpha = (5, 2 + sqrt-6): c(I) = c(I alpha) / c(alpha), where c(alpha) is the
tower generator s with s^2 = c(alpha^2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..utils.exceptions import (
    CharacterDomainError,
    DecompositionError,
    NormalizationError,
    UnsupportedInstanceError,
)
from .exactalg import QirCoords, QuadElement, Scalar, TowerElement
from .quadideals import (
    NonPrincipal,
    Principal,
    QuadField,
    QuadIdeal,
    classify,
    get_field,
    ideal_from_generator_pair,
    ideal_mul,
    is_coprime,
    principal_ideal,
)

logger = logging.getLogger(__name__)

Residue = Tuple[int, int]

CASE_TAGS = (
    "case1",
    "case2",
    "case3",
    "case4_plus",
    "case4_minus",
    "603",
    "203",
    "130",
    "130p",
    "310",
    "310p",
)


@dataclass(frozen=True, eq=False)
class ResidueComponent:
    """Subgroup of (O/modulus)^* generated by the listed elements, with a lookup table"""
    modulus: QuadIdeal
    generators: Tuple[QuadElement, ...]
    orders: Tuple[int, ...]
    table: Dict[Residue, Tuple[int, ...]] = field(default_factory=dict, repr=False)

    def decompose(self, g: QuadElement) -> Tuple[int, ...]:
        residue = self.modulus.residue(g)
        if residue not in self.table:
            raise DecompositionError(
                f"{g} mod {self.modulus} is not in the group generated by "
                f"{', '.join(str(x) for x in self.generators)}"
            )
        return self.table[residue]


def build_component(modulus: QuadIdeal, generators: Tuple[QuadElement, ...], orders: Tuple[int, ...]) -> ResidueComponent:
    """
    Tabulate prod g_j^(e_j) mod modulus for 0 <= e_j < orders[j].

    Raises:
        DecompositionError: If two exponent tuples give the same residue
    """
    table: Dict[Residue, Tuple[int, ...]] = {}
    for exps in product(*(range(o) for o in orders)):
        value = QuadElement(modulus.field.disc, 1, 0)
        for g, e in zip(generators, exps):
            value = value * g ** e
        residue = modulus.residue(value)
        if residue in table:
            raise DecompositionError(
                f"Exponents {table[residue]} and {exps} give the same residue mod {modulus}"
            )
        table[residue] = exps
    logger.debug(f"Residue table mod {modulus}: {len(table)} entries")
    return ResidueComponent(modulus, generators, orders, table)


@dataclass(frozen=True, eq=False)
class CharacterSpec:
    """
    One Hecke character of infinity type 1.

    The value at a principal ideal (g) is sign * i^(weights . exponents) * g_std,
    where g_std is the standard associate of g.
    """
    tag: str
    field: QuadField
    conductor: QuadIdeal
    normalizer: QuadIdeal
    standard: FrozenSet[Residue]
    components: Tuple[ResidueComponent, ...] = ()
    exponent_weights: Tuple[int, ...] = ()
    sign: int = 1
    indices: Optional[Tuple[int, int, int]] = None
    primed: bool = False
    branch_parameter: Optional[QirCoords] = None

    infinity_exponent = 1

    @property
    def level(self) -> int:
        """|D| N(f_c), the level of the attached CM form"""
        return -self.field.disc * self.conductor.norm

    @property
    def label(self) -> str:
        if self.indices is None:
            return self.tag
        digits = "".join(str(x) for x in self.indices)
        return digits + ("'" if self.primed else "")

    @property
    def branch(self) -> Optional[TowerElement]:
        """c(alpha) for the non-principal class; s for unprimed, -s for primed characters"""
        if self.branch_parameter is None:
            return None
        s = TowerElement.s(self.branch_parameter)
        return -s if self.primed else s

    @property
    def units(self) -> List[QuadElement]:
        return unit_group(self.field)


def unit_group(field: QuadField) -> List[QuadElement]:
    d = field.disc
    if d == -4:
        return [QuadElement(d, 1, 0), QuadElement(d, 0, 1), QuadElement(d, -1, 0), QuadElement(d, 0, -1)]
    if d == -3:
        omega = QuadElement(d, 0, 1)
        return [QuadElement(d, 1, 0), omega, omega * omega, QuadElement(d, -1, 0), -omega, -(omega * omega)]
    return [QuadElement(d, 1, 0), QuadElement(d, -1, 0)]


def _scalar_ideal(field: QuadField, n: int) -> QuadIdeal:
    return principal_ideal(field, QuadElement(field.disc, n, 0))


def _standard_residues(modulus: QuadIdeal, elements: List[QuadElement]) -> FrozenSet[Residue]:
    return frozenset(modulus.residue(x) for x in elements)


def unit_residue_count(modulus: QuadIdeal) -> int:
    """|(O/modulus)^*| by direct enumeration of residues"""
    count = 0
    for y in range(modulus.d):
        for x in range(modulus.d * modulus.a):
            if x == 0 and y == 0:
                continue
            element = QuadElement(modulus.field.disc, x, y)
            if is_coprime(principal_ideal(modulus.field, element), modulus):
                count += 1
    return count


def _check_transversal(spec: CharacterSpec) -> None:
    """Standard residues must be a transversal of the unit action on (O/normalizer)^*"""
    m = spec.normalizer
    for residue in spec.standard:
        x = QuadElement(spec.field.disc, residue[0], residue[1])
        orbit = {m.residue(u * x) for u in spec.units}
        hits = orbit & spec.standard
        if len(orbit) != len(spec.units) or len(hits) != 1:
            raise NormalizationError(
                f"Standard set of {spec.tag} meets the unit orbit of {x} in {len(hits)} residues"
            )
    expected = unit_residue_count(m)
    if len(spec.standard) * len(spec.units) != expected:
        raise NormalizationError(
            f"Standard set of {spec.tag} has {len(spec.standard)} residues; "
            f"{expected} units mod {m} need {expected // len(spec.units)}"
        )


def _gaussian_case5(tag: str, indices: Tuple[int, int, int]) -> CharacterSpec:
    r, s, t = indices
    if r % 2:
        raise UnsupportedInstanceError(f"zeta_8^{r} is not in Q(i); index r must be even")
    f = get_field(-4)
    mod8 = _scalar_ideal(f, 8)
    mod8_component = build_component(mod8, (f.element(2, 1), f.element(4, 1)), (4, 2))
    return CharacterSpec(
        tag=tag,
        field=f,
        conductor=_scalar_ideal(f, 24),
        normalizer=mod8,
        standard=frozenset(mod8_component.table),
        components=(build_component(_scalar_ideal(f, 3), (f.element(1, -1),), (8,)), mod8_component),
        exponent_weights=(r // 2, s, t),
        indices=indices,
    )


def _real_case5(tag: str, indices: Tuple[int, int, int], primed: bool) -> CharacterSpec:
    r, s, t = indices
    f = get_field(-24)
    modulus = principal_ideal(f, f.element(0, 4))
    component = build_component(modulus, (f.element(1, 1), f.element(1, -1), f.element(5, 0)), (4, 2, 2))
    return CharacterSpec(
        tag=tag,
        field=f,
        conductor=modulus,
        normalizer=modulus,
        standard=frozenset(component.table),
        components=(component,),
        exponent_weights=(r, s, 2 * t),
        indices=indices,
        primed=primed,
    )


def _build_spec(tag: str) -> CharacterSpec:
    if tag == "case1":
        f = get_field(-3)
        conductor = principal_ideal(f, f.element(2, 4))  # 2 sqrt-3 = 2 + 4 omega
        return CharacterSpec(tag, f, conductor, conductor, _standard_residues(conductor, [f.element(1)]))
    if tag == "case2":
        f = get_field(-4)
        conductor = principal_ideal(f, f.element(2, 2))
        return CharacterSpec(tag, f, conductor, conductor, _standard_residues(conductor, [f.element(1)]))
    if tag == "case3":
        f = get_field(-3)
        conductor = _scalar_ideal(f, 3)
        return CharacterSpec(tag, f, conductor, conductor, _standard_residues(conductor, [f.element(2)]), sign=-1)
    if tag in ("case4_plus", "case4_minus"):
        f = get_field(-4)
        primary = principal_ideal(f, f.element(2, 2))
        mod3 = build_component(_scalar_ideal(f, 3), (f.element(1, -1),), (8,))
        mod4 = build_component(_scalar_ideal(f, 4), (f.element(-1, 2),), (2,))
        # (+-i)^u (-1)^v
        weights = (1, 2) if tag == "case4_plus" else (3, 2)
        return CharacterSpec(
            tag, f, _scalar_ideal(f, 12), primary, _standard_residues(primary, [f.element(1)]),
            components=(mod3, mod4), exponent_weights=weights,
        )
    if tag in ("603", "203"):
        return _gaussian_case5(tag, tuple(int(c) for c in tag))
    if tag in ("130", "130p", "310", "310p"):
        return _real_case5(tag, tuple(int(c) for c in tag[:3]), tag.endswith("p"))
    raise UnsupportedInstanceError(f"Unknown character {tag!r}; expected one of {', '.join(CASE_TAGS)}")


ALPHA_GENERATORS = ((5, 0), (2, 1))


def alpha_ideal() -> QuadIdeal:
    """alpha = (5, 2 + sqrt-6), representative of the non-principal class of Q(sqrt-6)"""
    f = get_field(-24)
    return ideal_from_generator_pair(f, f.element(*ALPHA_GENERATORS[0]), f.element(*ALPHA_GENERATORS[1]))


@lru_cache(maxsize=None)
def create_character(tag: str) -> CharacterSpec:
    """
    Build and validate the character named by tag.

    Tags: case1, case2, case3, case4_plus, case4_minus, 603, 203, 130, 130p,
    310, 310p. For the Q(sqrt-6) characters the branch parameter c(alpha^2)
    is computed here.

    Raises:
        UnsupportedInstanceError: For unknown tags
        DecompositionError: If a residue table is degenerate
        NormalizationError: If the standard set is not a unit transversal
    """
    spec = _build_spec(tag)
    _check_transversal(spec)
    if spec.field.class_number == 2:
        square = ideal_mul(alpha_ideal(), alpha_ideal())
        square_class = classify(square)
        if not isinstance(square_class, Principal):
            raise NormalizationError(f"alpha^2 = {square} is not principal")
        value = principal_value(spec, square_class.generator)
        if any(value.s_part):
            raise NormalizationError(f"c(alpha^2) = {value} leaves Q(i, sqrt-6)")
        spec = replace(spec, branch_parameter=value.p_part)
        logger.debug(f"Character {spec.label}: c(alpha^2) = {value}")
    return spec


def primary_representative(spec: CharacterSpec, g: QuadElement) -> QuadElement:
    """
    The unique unit multiple of g whose residue is standard.

    Raises:
        CharacterDomainError: If g is not coprime to the conductor
        NormalizationError: If zero or several associates are standard
    """
    if not is_coprime(principal_ideal(spec.field, g), spec.conductor):
        raise CharacterDomainError(f"{g} is not coprime to the conductor {spec.conductor} of {spec.label}")
    hits = [u * g for u in spec.units if spec.normalizer.residue(u * g) in spec.standard]
    if len(hits) != 1:
        raise NormalizationError(f"{len(hits)} associates of {g} are standard for {spec.label}")
    return hits[0]


def exponents(spec: CharacterSpec, g_primary: QuadElement) -> Tuple[int, ...]:
    """
    Exponents of g_primary with respect to the generators of each residue component.

    Raises:
        DecompositionError: If a residue is outside a component's group
    """
    result: Tuple[int, ...] = ()
    for component in spec.components:
        result += component.decompose(g_primary)
    return result


def _root_of_unity(power: int) -> TowerElement:
    return TowerElement.i() ** (power % 4)


def principal_value(spec: CharacterSpec, g: QuadElement) -> Scalar:
    """c((g)) for a generator g coprime to the conductor"""
    g_std = primary_representative(spec, g)
    if spec.field.disc in (-3, -8):
        return spec.sign * g_std
    power = sum(w * e for w, e in zip(spec.exponent_weights, exponents(spec, g_std)))
    return spec.sign * _root_of_unity(power) * TowerElement.from_quad(g_std)


def evaluate(spec: CharacterSpec, ideal: QuadIdeal) -> Scalar:
    """
    c(I) for an integral ideal coprime to the conductor.

    Principal ideals use the standard generator; a non-principal I of Q(sqrt-6)
    evaluates as c(I alpha) / c(alpha).

    Raises:
        CharacterDomainError: If I is not coprime to the conductor
    """
    if ideal.field != spec.field:
        raise CharacterDomainError(f"Ideal of {ideal.field} given to a character of {spec.field}")
    if not is_coprime(ideal, spec.conductor):
        raise CharacterDomainError(f"{ideal} is not coprime to the conductor {spec.conductor} of {spec.label}")
    return _evaluate_cached(spec, ideal)


@lru_cache(maxsize=262144)
def _evaluate_cached(spec: CharacterSpec, ideal: QuadIdeal) -> Scalar:
    cls = classify(ideal)
    if isinstance(cls, Principal):
        return principal_value(spec, cls.generator)
    if spec.branch is None:
        raise NormalizationError(f"Character {spec.label} has no branch for non-principal {ideal}")
    shifted = classify(ideal_mul(ideal, alpha_ideal()))
    if isinstance(shifted, NonPrincipal):
        raise NormalizationError(f"{ideal} * alpha is not principal")
    return principal_value(spec, shifted.generator) / spec.branch


def dirichlet_omega(spec: CharacterSpec, n: int) -> Scalar:
    """
    omega_c(n) = c((n)) / n, a root of unity.

    Raises:
        CharacterDomainError: If n shares a factor with N(f_c)
    """
    if n == 0 or gcd(n, spec.conductor.norm) != 1:
        raise CharacterDomainError(f"{n} is not coprime to N(f_c) = {spec.conductor.norm}")
    return principal_value(spec, QuadElement(spec.field.disc, n, 0)) / n


def branch_scale(spec: CharacterSpec) -> TowerElement:
    """t = c(alpha) / (6 - 2 sqrt-6), the scaling under which the Q(sqrt-6) columns are tabulated"""
    if spec.field.disc != -24 or spec.branch_parameter is None:
        raise UnsupportedInstanceError(f"Character {spec.label} has no branch")
    s = TowerElement.s(spec.branch_parameter)
    return s / (6 - 2 * TowerElement.r())

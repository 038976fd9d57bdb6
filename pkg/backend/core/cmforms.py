"""
CM forms sum_I c(I) q^(delta N(I)) and the linear combinations that express
the lacunary eta products f_b for b = 1, 2, 3, 4, 16.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

from sympy import factorint

from ..utils.exceptions import (
    InsufficientTruncationError,
    NonRationalCombinationError,
    UnsupportedInstanceError,
)
from .exactalg import QuadElement, Scalar, TowerElement, ring_tag, zero_of
from .heckechars import CharacterSpec, branch_scale, create_character, dirichlet_omega, evaluate
from .heckeops import SpaceDescriptor, sturm_bound
from .qseries import EtaQuotient, QSeries, eta_quotient_expand, f_b_spec
from .quadideals import ideals_of_norm, is_coprime

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CMFormSpec:
    """phi_{K,c,delta}, a weight-2 cusp form of level delta |D| N(f_c)"""
    character: CharacterSpec
    delta: int = 1

    weight = 2

    def __post_init__(self):
        if self.delta < 1:
            raise UnsupportedInstanceError(f"delta must be positive, got {self.delta}")

    @property
    def level(self) -> int:
        return self.delta * self.character.level

    @property
    def label(self) -> str:
        suffix = "" if self.delta == 1 else f"({self.delta}z)"
        return f"phi_{self.character.label}{suffix}"

    @property
    def ring(self) -> str:
        if self.character.field.disc in (-3, -8):
            return f"QK({self.character.field.disc})"
        if self.character.branch_parameter is not None:
            return ring_tag(TowerElement.s(self.character.branch_parameter))
        return "tower"

    def space(self) -> SpaceDescriptor:
        return SpaceDescriptor(self.weight, self.level)


def create_cm_form(tag: str, delta: int = 1) -> CMFormSpec:
    return CMFormSpec(create_character(tag), delta)


# (character tag, delta) -> longest expansion computed so far
_expansion_cache: Dict[Tuple[str, int], QSeries] = {}


def ideal_sum(form: CMFormSpec, m: int) -> Scalar:
    """sum of c(I) over ideals I of norm m coprime to the conductor"""
    spec = form.character
    total = zero_of(form.ring)
    for ideal in ideals_of_norm(spec.field, m):
        if is_coprime(ideal, spec.conductor):
            total = total + evaluate(spec, ideal)
    return total


def cm_expansion(form: CMFormSpec, T: int) -> QSeries:
    """
    q-expansion of the CM form below q^T.

    The coefficient of q^n is the sum of c(I) over ideals coprime to f_c with
    delta N(I) = n; the unit ideal gives the coefficient 1 at q^delta.
    """
    if T < 1:
        raise InsufficientTruncationError(f"Truncation must be positive, got {T}")
    key = (form.character.tag, form.delta)
    cached = _expansion_cache.get(key)
    if cached is not None and cached.truncation >= T:
        return cached.truncate(T)
    zero = zero_of(form.ring)
    coeffs = [zero] * T
    for m in range(1, (T - 1) // form.delta + 1):
        coeffs[m * form.delta] = ideal_sum(form, m)
    series = QSeries(0, T, tuple(coeffs), form.ring)
    _expansion_cache[key] = series
    logger.debug(f"Expanded {form.label} below q^{T}: {len(series.terms())} nonzero coefficients")
    return series


CombinationScalar = Union[int, Fraction, TowerElement]


@dataclass(eq=False)
class Combination:
    """sum scalar_j * phi_j claimed equal to the target eta quotient"""
    terms: List[Tuple[CombinationScalar, CMFormSpec]]
    target: EtaQuotient
    label: str = ""
    case: Optional[int] = None

    @property
    def level(self) -> int:
        return max(form.level for _, form in self.terms)

    @property
    def sturm_bound(self) -> int:
        return sturm_bound(2, self.level)

    def describe(self) -> str:
        parts = [f"({scalar})*{form.label}" for scalar, form in self.terms]
        return " + ".join(parts)


def _rationalize(value: Scalar, n: int) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, TowerElement):
        if value.is_rational():
            return value.rational_value()
    elif isinstance(value, QuadElement):
        if value.b == 0:
            return value.a
    raise NonRationalCombinationError(f"Coefficient of q^{n} is {value}, which is not rational")


def create_case_combination(case: int) -> Combination:
    """
    The CM decomposition of the lacunary eta product for one of the five cases.

    Case 1: eta(6z)^4; case 2: eta(4z)^2 eta(8z)^2; case 3: eta(3z)^2 eta(9z)^2;
    case 4: f_4(12z) = (phi_- - phi_+)/8; case 5: f_16(12z) as a combination
    of two Gaussian and four Q(sqrt-6) forms.
    """
    if case == 1:
        return Combination([(1, create_cm_form("case1"))], EtaQuotient(((6, 4),), 36, "f_1(6z)"), "case 1", 1)
    if case == 2:
        return Combination([(1, create_cm_form("case2"))], EtaQuotient(((4, 2), (8, 2)), 32, "f_2(4z)"), "case 2", 2)
    if case == 3:
        return Combination([(1, create_cm_form("case3"))], EtaQuotient(((3, 2), (9, 2)), 27, "f_3(3z)"), "case 3", 3)
    if case == 4:
        eighth = Fraction(1, 8)
        terms = [(eighth, create_cm_form("case4_minus")), (-eighth, create_cm_form("case4_plus"))]
        return Combination(terms, f_b_spec(4), "case 4", 4)
    if case == 5:
        sixteenth = Fraction(1, 16)
        t = branch_scale(create_character("130")) * sixteenth
        terms = [
            (sixteenth, create_cm_form("603")),
            (-sixteenth, create_cm_form("203")),
            (-t, create_cm_form("130")),
            (t, create_cm_form("130p")),
            (-t, create_cm_form("310")),
            (t, create_cm_form("310p")),
        ]
        return Combination(terms, f_b_spec(16), "case 5", 5)
    raise UnsupportedInstanceError(f"Unknown case {case}; expected 1..5")


def combine(combo: Combination, T: int) -> QSeries:
    """
    Evaluate the combination below q^T as a rational series.

    Raises:
        NonRationalCombinationError: If some coefficient keeps an i, sqrt-6 or s component
    """
    coeffs: List[Scalar] = [0] * T
    for scalar, form in combo.terms:
        series = cm_expansion(form, T)
        for n, value in series.terms():
            coeffs[n] = scalar * value + coeffs[n]
    rational = tuple(_rationalize(c, n) for n, c in enumerate(coeffs))
    return QSeries(0, T, rational, "QQ")


@dataclass
class IdentityReport:
    """Coefficientwise comparison through a bound"""
    equal: bool
    bound: int
    first_mismatch: Optional[int] = None
    expected: Optional[str] = None
    actual: Optional[str] = None
    checked: int = 0
    details: Dict[str, str] = field(default_factory=dict)


def verify_identity(target: QSeries, combo: Combination, bound: int) -> IdentityReport:
    """
    Compare target and combination exactly for every n <= bound.

    Raises:
        InsufficientTruncationError: If the target is not known through q^bound
    """
    if target.truncation <= bound:
        raise InsufficientTruncationError(
            f"Target known below q^{target.truncation}, comparison needs q^{bound}"
        )
    combined = combine(combo, bound + 1)
    for n in range(bound + 1):
        expected, actual = target.coefficient(n), combined.coefficient(n)
        if expected != actual:
            logger.info(f"{combo.label}: mismatch at q^{n}: {expected} vs {actual}")
            return IdentityReport(False, bound, n, str(expected), str(actual), n + 1)
    logger.info(f"{combo.label}: identity holds through q^{bound}")
    return IdentityReport(True, bound, checked=bound + 1)


def verify_case(case: int, bound: Optional[int] = None) -> IdentityReport:
    """Expand the case's eta product and verify its CM decomposition through the Sturm bound"""
    combo = create_case_combination(case)
    bound = combo.sturm_bound if bound is None else bound
    target = eta_quotient_expand(combo.target, bound + 1)
    report = verify_identity(target, combo, bound)
    report.details["target"] = combo.target.describe()
    report.details["combination"] = combo.describe()
    return report


def nebentypus_value(form: CMFormSpec, p: int) -> Scalar:
    """omega_c(p) * epsilon_K(p), the character of the CM form at p"""
    return dirichlet_omega(form.character, p) * form.character.field.epsilon(p)


def prime_power_coefficient(form: CMFormSpec, p: int, e: int) -> Scalar:
    """a(p^e) from a(p) by a(p^r) = a(p) a(p^(r-1)) - chi(p) p a(p^(r-2))"""
    chi = nebentypus_value(form, p)
    a_p = ideal_sum(form, p)
    previous, current = zero_of(form.ring) + 1, a_p
    if e == 0:
        return previous
    for _ in range(e - 1):
        previous, current = current, a_p * current - chi * p * previous
    return current


def form_coefficient_via_multiplicativity(form: CMFormSpec, n: int) -> Scalar:
    """a(n) for n coprime to the level, multiplied out over prime powers"""
    if n < 1:
        raise UnsupportedInstanceError(f"n must be positive, got {n}")
    if form.delta != 1:
        raise UnsupportedInstanceError("Multiplicativity is only used for delta = 1")
    if gcd(n, form.level) != 1:
        raise UnsupportedInstanceError(f"{n} shares a prime with the level {form.level}")
    value: Scalar = zero_of(form.ring) + 1
    for p, e in sorted(factorint(n).items()):
        value = value * prime_power_coefficient(form, p, e)
    return value


def coefficient_via_multiplicativity(combo: Combination, n: int) -> Fraction:
    """
    Coefficient of q^n in the combination, each form's a(n) built from a(p)
    and the prime-power recurrence.

    Raises:
        UnsupportedInstanceError: If n shares a prime with the level
        NonRationalCombinationError: If the combined value is not rational
    """
    total: Scalar = 0
    for scalar, form in combo.terms:
        total = scalar * form_coefficient_via_multiplicativity(form, n) + total
    return _rationalize(total, n)


def _nonneg_real_quadratic(a: Fraction, b: Fraction, m: int) -> bool:
    """a + b sqrt(m) >= 0 exactly, for m > 0 not a square"""
    if a >= 0 and b >= 0:
        return True
    if a <= 0 and b <= 0:
        return a == 0 and b == 0
    if a > 0:
        return a * a >= b * b * m
    return b * b * m >= a * a


def hasse_bound_holds(value: Scalar, p: int) -> bool:
    """|a(p)|^2 <= 4p, computed exactly in the coefficient field"""
    bound = 4 * p
    if isinstance(value, (int, Fraction)):
        return value * value <= bound
    if isinstance(value, QuadElement):
        return value.norm <= bound
    if isinstance(value, TowerElement):
        square = value.abs_squared()
        c = square.coords
        if any(c[4:]) or c[1] or c[2]:
            raise UnsupportedInstanceError(f"|{value}|^2 = {square} is not real")
        # ir = i * sqrt-6 = -sqrt6
        return _nonneg_real_quadratic(bound - c[0], c[3], 6)
    raise UnsupportedInstanceError(f"Unsupported coefficient type {type(value).__name__}")

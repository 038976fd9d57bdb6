"""
Integral ideals of the maximal orders of Q(i), Q(sqrt-2), Q(omega), Q(sqrt-6).

Ideals are kept in normal form d * (aZ + (b + theta)Z) with 0 <= b < a and
a | N(b + theta); this is the Hermite normal form of the ideal lattice in the
basis {1, theta}, so two ideals are equal exactly when their normal forms are.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import factorint
from sympy.ntheory import sqrt_mod

from ..utils.exceptions import FieldMismatchError, UnsupportedInstanceError
from .exactalg import FIELD_PARAMETERS, QuadElement
from .heckeops import kronecker

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadField:
    """Imaginary quadratic field of discriminant D with ring of integers Z[theta]"""
    disc: int

    def __post_init__(self):
        if self.disc not in FIELD_PARAMETERS:
            raise UnsupportedInstanceError(
                f"Only discriminants {sorted(FIELD_PARAMETERS)} are supported, got {self.disc}"
            )

    @property
    def trace_coeff(self) -> int:
        """B in theta^2 + B theta + C = 0"""
        return FIELD_PARAMETERS[self.disc][0]

    @property
    def norm_coeff(self) -> int:
        """C in theta^2 + B theta + C = 0"""
        return FIELD_PARAMETERS[self.disc][1]

    @property
    def generator_name(self) -> str:
        return FIELD_PARAMETERS[self.disc][2]

    @property
    def class_number(self) -> int:
        return 2 if self.disc == -24 else 1

    def epsilon(self, n: int) -> int:
        """Quadratic character of the field, Kronecker(D, n)"""
        return kronecker(self.disc, n)

    def element(self, a: int, b: int = 0) -> QuadElement:
        return QuadElement(self.disc, a, b)

    def theta_norm(self, b: int) -> int:
        """N(b + theta)"""
        return b * b - self.trace_coeff * b + self.norm_coeff

    def __str__(self) -> str:
        return f"Q({self.generator_name})"


GAUSSIAN = QuadField(-4)
SQRT_MINUS_2 = QuadField(-8)
EISENSTEIN = QuadField(-3)
SQRT_MINUS_6 = QuadField(-24)
FIELDS = {f.disc: f for f in (GAUSSIAN, SQRT_MINUS_2, EISENSTEIN, SQRT_MINUS_6)}


def get_field(disc: int) -> QuadField:
    if disc not in FIELDS:
        raise UnsupportedInstanceError(f"Unsupported discriminant: {disc}")
    return FIELDS[disc]


@dataclass(frozen=True)
class Principal:
    generator: QuadElement


@dataclass(frozen=True)
class NonPrincipal:
    pass


IdealClass = Union[Principal, NonPrincipal]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s a + t b = g = gcd(a, b) >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _lattice_hnf(vectors: Iterable[Tuple[int, int]]) -> Tuple[int, int, int]:
    """
    Hermite normal form (A, B, C) of a full-rank lattice in Z^2.

    The lattice is spanned by (A, 0) and (B, C) with A, C > 0 and 0 <= B < A.
    """
    pivot_x, pivot_y = 0, 0
    axis: List[int] = []
    for x, y in vectors:
        if y == 0:
            axis.append(x)
            continue
        if pivot_y == 0:
            pivot_x, pivot_y = x, y
            continue
        g, s, t = _xgcd(pivot_y, y)
        axis.append((y // g) * pivot_x - (pivot_y // g) * x)
        pivot_x, pivot_y = s * pivot_x + t * x, g
    if pivot_y < 0:
        pivot_x, pivot_y = -pivot_x, -pivot_y
    big_a = 0
    for x in axis:
        big_a = gcd(big_a, x)
    if big_a == 0 or pivot_y == 0:
        raise UnsupportedInstanceError("Generators do not span a full-rank lattice")
    return big_a, pivot_x % big_a, pivot_y


@dataclass(frozen=True)
class QuadIdeal:
    """The ideal d * (aZ + (b + theta)Z) of the maximal order of field"""
    field: QuadField
    d: int
    a: int
    b: int

    def __post_init__(self):
        if self.d < 1 or self.a < 1 or not 0 <= self.b < self.a:
            raise UnsupportedInstanceError(f"Invalid normal form d={self.d} a={self.a} b={self.b}")
        if self.field.theta_norm(self.b) % self.a != 0:
            raise UnsupportedInstanceError(
                f"[{self.a}, {self.b}+theta] is not an ideal: a does not divide N(b+theta)"
            )

    @property
    def norm(self) -> int:
        return self.d * self.d * self.a

    @property
    def basis(self) -> Tuple[QuadElement, QuadElement]:
        """Z-basis d*a and d*(b + theta)"""
        return (
            QuadElement(self.field.disc, self.d * self.a, 0),
            QuadElement(self.field.disc, self.d * self.b, self.d),
        )

    def contains(self, x: QuadElement) -> bool:
        if x.disc != self.field.disc:
            raise FieldMismatchError(f"Element of Q(D={x.disc}) tested against ideal of {self.field}")
        if not x.is_integral():
            return False
        u, v = x.int_coords()
        if v % self.d:
            return False
        k = v // self.d
        return (u - k * self.d * self.b) % (self.d * self.a) == 0

    def residue(self, x: QuadElement) -> Tuple[int, int]:
        """Canonical coordinates of x modulo this ideal"""
        if x.disc != self.field.disc:
            raise FieldMismatchError(f"Element of Q(D={x.disc}) reduced modulo an ideal of {self.field}")
        u, v = x.int_coords()
        k = v // self.d
        return ((u - k * self.d * self.b) % (self.d * self.a), v - k * self.d)

    @property
    def ideal_class(self) -> IdealClass:
        return classify(self)

    def __mul__(self, other: QuadIdeal) -> QuadIdeal:
        return ideal_mul(self, other)

    def __str__(self) -> str:
        inner = f"[{self.a}, {self.b}+{self.field.generator_name}]"
        return inner if self.d == 1 else f"{self.d}*{inner}"


def ideal_from_generators(field: QuadField, generators: Sequence[QuadElement]) -> QuadIdeal:
    """The ideal generated (as an O-module) by the given integral elements"""
    theta = QuadElement(field.disc, 0, 1)
    vectors = []
    for g in generators:
        if g.disc != field.disc:
            raise FieldMismatchError(f"Generator {g} is not in {field}")
        for x in (g, g * theta):
            vectors.append(x.int_coords())
    big_a, big_b, big_c = _lattice_hnf(vectors)
    return QuadIdeal(field, big_c, big_a // big_c, big_b // big_c)


def unit_ideal(field: QuadField) -> QuadIdeal:
    return QuadIdeal(field, 1, 1, 0)


def principal_ideal(field: QuadField, g: QuadElement) -> QuadIdeal:
    return ideal_from_generators(field, [g])


def ideal_mul(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    if x.field != y.field:
        raise FieldMismatchError(f"Ideals of {x.field} and {y.field} cannot be multiplied")
    return _ideal_mul_cached(x, y)


@lru_cache(maxsize=65536)
def _ideal_mul_cached(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    gens = [g * h for g in x.basis for h in y.basis]
    return ideal_from_generators(x.field, gens)


def ideal_add(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    if x.field != y.field:
        raise FieldMismatchError(f"Ideals of {x.field} and {y.field} cannot be added")
    return ideal_from_generators(x.field, list(x.basis) + list(y.basis))


def ideal_conjugate(x: QuadIdeal) -> QuadIdeal:
    return ideal_from_generators(x.field, [g.conjugate() for g in x.basis])


def ideal_power(x: QuadIdeal, e: int) -> QuadIdeal:
    result = unit_ideal(x.field)
    for _ in range(e):
        result = ideal_mul(result, x)
    return result


def elements_of_norm(field: QuadField, n: int) -> List[QuadElement]:
    """All integral x + y*theta with N = n, found from 4N = (2x - By)^2 + |D| y^2"""
    return list(_elements_of_norm_cached(field, n))


@lru_cache(maxsize=65536)
def _elements_of_norm_cached(field: QuadField, n: int) -> Tuple[QuadElement, ...]:
    if n < 0:
        return ()
    if n == 0:
        return (QuadElement(field.disc, 0, 0),)
    big_b = field.trace_coeff
    abs_d = -field.disc
    y_max = isqrt(4 * n // abs_d)
    found = []
    for y in range(-y_max, y_max + 1):
        t = 4 * n - abs_d * y * y
        if t < 0:
            continue
        z = isqrt(t)
        if z * z != t:
            continue
        for zz in sorted({z, -z}):
            x2 = zz + big_b * y
            if x2 % 2 == 0:
                found.append(QuadElement(field.disc, x2 // 2, y))
    return tuple(found)


def classify(ideal: QuadIdeal) -> IdealClass:
    """
    Principal(generator) if the ideal is principal, else NonPrincipal.

    A generator is an element of the ideal whose norm equals the ideal's norm.
    """
    return _classify_cached(ideal)


@lru_cache(maxsize=65536)
def _classify_cached(ideal: QuadIdeal) -> IdealClass:
    for g in elements_of_norm(ideal.field, ideal.norm):
        if ideal.contains(g):
            return Principal(g)
    if ideal.field.class_number == 1:
        raise UnsupportedInstanceError(f"No generator found for {ideal} in class-number-one {ideal.field}")
    return NonPrincipal()


def is_coprime(ideal: QuadIdeal, conductor: QuadIdeal) -> bool:
    """True iff ideal + conductor is the unit ideal"""
    if ideal.field != conductor.field:
        raise FieldMismatchError(f"Ideals of {ideal.field} and {conductor.field} compared")
    if gcd(ideal.norm, conductor.norm) == 1:
        return True
    return ideal_add(ideal, conductor).norm == 1


def splitting_type(field: QuadField, p: int) -> str:
    """"split", "inert" or "ramified" for a rational prime p"""
    symbol = kronecker(field.disc, p)
    if symbol == 0:
        return "ramified"
    return "split" if symbol == 1 else "inert"


def is_inert(field: QuadField, p: int) -> bool:
    """True iff p stays prime in the field; ramified primes are reported as not inert"""
    kind = splitting_type(field, p)
    if kind == "ramified":
        logger.debug(f"{p} ramifies in {field}; not inert")
    return kind == "inert"


def _theta_roots(field: QuadField, p: int) -> List[int]:
    """Roots b mod p of N(b + theta) = b^2 - B b + C"""
    if p == 2:
        return [b for b in range(2) if field.theta_norm(b) % 2 == 0]
    big_b = field.trace_coeff
    inv2 = (p + 1) // 2
    roots = sqrt_mod(field.disc % p, p, all_roots=True) or []
    return sorted({((big_b + z) * inv2) % p for z in roots})


@lru_cache(maxsize=4096)
def prime_ideals_above(field: QuadField, p: int) -> Tuple[QuadIdeal, ...]:
    """Prime ideals over the rational prime p"""
    kind = splitting_type(field, p)
    if kind == "inert":
        return (QuadIdeal(field, p, 1, 0),)
    roots = _theta_roots(field, p)
    ideals = tuple(QuadIdeal(field, 1, p, b) for b in roots)
    expected = 1 if kind == "ramified" else 2
    if len(ideals) != expected:
        raise UnsupportedInstanceError(f"Found {len(ideals)} primes above {p} in {field}, expected {expected}")
    return ideals


def _prime_power_ideals(field: QuadField, p: int, e: int) -> List[QuadIdeal]:
    primes = prime_ideals_above(field, p)
    kind = splitting_type(field, p)
    if kind == "inert":
        return [ideal_power(primes[0], e // 2)] if e % 2 == 0 else []
    if kind == "ramified":
        return [ideal_power(primes[0], e)]
    first, second = primes
    return [ideal_mul(ideal_power(first, i), ideal_power(second, e - i)) for i in range(e + 1)]


def ideals_of_norm(field: QuadField, m: int) -> List[QuadIdeal]:
    """
    Every integral ideal of norm exactly m, without duplicates.

    Built multiplicatively from the prime-power pieces of m.
    """
    if m < 1:
        raise UnsupportedInstanceError(f"Ideal norm must be positive, got {m}")
    pieces = []
    for p, e in sorted(factorint(m).items()):
        local = _prime_power_ideals(field, p, e)
        if not local:
            return []
        pieces.append(local)
    result = []
    for combo in product(*pieces):
        ideal = unit_ideal(field)
        for part in combo:
            ideal = ideal_mul(ideal, part)
        result.append(ideal)
    return result


def lattice_ideals_of_norm(field: QuadField, m: int) -> List[QuadIdeal]:
    """Brute-force enumeration over all normal forms of norm m (test oracle)"""
    found = []
    d = 1
    while d * d <= m:
        if m % (d * d) == 0:
            a = m // (d * d)
            for b in range(a):
                if field.theta_norm(b) % a == 0:
                    found.append(QuadIdeal(field, d, a, b))
        d += 1
    return found


def ideal_count_oracle(field: QuadField, m: int) -> int:
    """Number of ideals of norm m from the splitting of each prime power"""
    if m < 1:
        raise UnsupportedInstanceError(f"Ideal norm must be positive, got {m}")
    count = 1
    for p, e in factorint(m).items():
        symbol = kronecker(field.disc, p)
        if symbol == 1:
            count *= e + 1
        elif symbol == -1 and e % 2:
            return 0
    return count


def ideal_from_generator_pair(field: QuadField, g1: QuadElement, g2: QuadElement) -> QuadIdeal:
    """The ideal (g1, g2), e.g. (5, 2 + sqrt-6)"""
    return ideal_from_generators(field, [g1, g2])

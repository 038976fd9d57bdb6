"""
Hecke operators on q-expansions, the Kronecker symbol, Sturm bounds and the
modularity criterion for eta quotients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Integral, Rational
from typing import Optional

from sympy import isprime, primefactors
from sympy.ntheory import jacobi_symbol

from ..utils.exceptions import InsufficientTruncationError, LevelError, UnsupportedInstanceError
from .exactalg import Scalar, zero_of
from .qseries import EtaQuotient, QSeries

logger = logging.getLogger(__name__)


def kronecker(a: int, n: int) -> int:
    """
    Kronecker symbol (a / n) for arbitrary integers.

    Conventions: (a/0) = 1 iff a = +-1; (a/-1) = -1 iff a < 0; (a/2) is 0 for
    even a, 1 for a = +-1 mod 8 and -1 for a = +-3 mod 8.
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if a % 2 == 0:
            return 0
        if twos % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(a % n, n))


def gamma0_index(N: int) -> int:
    """[SL2(Z) : Gamma0(N)] = N prod_{l | N} (1 + 1/l)"""
    if N < 1:
        raise UnsupportedInstanceError(f"Level must be positive, got {N}")
    index = N
    for ell in primefactors(N):
        index = index // ell * (ell + 1)
    return index


def sturm_bound(k: int, N: int) -> int:
    """
    floor(k [SL2(Z) : Gamma0(N)] / 12).

    Two forms of weight k on Gamma0(N) agreeing at every n <= the bound are equal.
    """
    if k < 1:
        raise UnsupportedInstanceError(f"Weight must be positive, got {k}")
    return k * gamma0_index(N) // 12


@dataclass(frozen=True)
class SpaceDescriptor:
    """M_k(Gamma0(N), chi) with chi = Kronecker(character_disc, .); character_disc = 1 is trivial"""
    weight: int
    level: int
    character_disc: int = 1

    def __post_init__(self):
        if self.weight < 1:
            raise UnsupportedInstanceError(f"Weight must be positive, got {self.weight}")
        if self.level < 1:
            raise UnsupportedInstanceError(f"Level must be positive, got {self.level}")

    def chi(self, n: int) -> int:
        if gcd(n, self.level) != 1:
            return 0
        return kronecker(self.character_disc, n)

    @property
    def sturm_bound(self) -> int:
        return sturm_bound(self.weight, self.level)


def _native(c: Scalar) -> Scalar:
    """Plain int / Fraction for any foreign integral or rational number type"""
    if isinstance(c, (int, Fraction)) or not isinstance(c, Rational):
        return c
    if isinstance(c, Integral):
        return int(c)
    return Fraction(int(c.numerator), int(c.denominator))


def hecke_tp(f: QSeries, p: int, space: SpaceDescriptor) -> QSeries:
    """
    Apply T_p: c(n) = a(np) + chi(p) p^(k-1) a(n/p), the second term only when p | n.

    Args:
        f: Input series known below q^T
        p: Prime
        space: Weight, level and character of the ambient space

    Returns:
        Series with truncation floor(T / p); nothing beyond it is determined

    Raises:
        InsufficientTruncationError: If T < p
    """
    if not isprime(p):
        raise UnsupportedInstanceError(f"T_p needs a prime p, got {p}")
    out_truncation = f.truncation // p
    if out_truncation < 1:
        raise InsufficientTruncationError(
            f"Series known below q^{f.truncation} gives no coefficient of T_{p}"
        )
    zero = zero_of(f.ring)
    twist = int(space.chi(p)) * p ** (space.weight - 1)
    valuation = min(-(-f.valuation // p), out_truncation - 1)
    coeffs = []
    for n in range(valuation, out_truncation):
        c = f.coefficient(n * p)
        if twist and n % p == 0:
            c = c + twist * f.coefficient(n // p)
        coeffs.append(_native(c) if c != 0 else zero)
    return QSeries(valuation, out_truncation, tuple(coeffs), f.ring)


def hecke_eigenvalue(f: QSeries, p: int, space: SpaceDescriptor) -> Optional[Scalar]:
    """
    lambda with T_p f = lambda f on every coefficient T_p determines, else None.

    The candidate lambda is read off at the first nonzero coefficient of f.
    """
    image = hecke_tp(f, p, space)
    lead = f.first_nonzero()
    if lead is None or lead >= image.truncation:
        return None
    numerator, denominator = image.coefficient(lead), f.coefficient(lead)
    if isinstance(numerator, int) and isinstance(denominator, int):
        eigenvalue = Fraction(numerator, denominator)
    else:
        eigenvalue = numerator / denominator
    for n in range(image.valuation, image.truncation):
        if image.coefficient(n) != eigenvalue * f.coefficient(n):
            return None
    return eigenvalue


@dataclass(frozen=True)
class ModularityReport:
    """Outcome of the eta-quotient modularity criterion at level N"""
    level: int
    weight: Fraction
    character_numerator: Optional[int]
    character_trivial: Optional[bool]
    cond24_a: bool
    cond24_b: bool

    @property
    def holds(self) -> bool:
        return self.weight.denominator == 1 and self.cond24_a and self.cond24_b

    def space(self) -> SpaceDescriptor:
        if self.weight.denominator != 1 or self.character_numerator is None:
            raise UnsupportedInstanceError(f"Half-integral weight {self.weight} has no integral-weight space")
        disc = 1 if self.character_trivial else self.character_numerator
        return SpaceDescriptor(int(self.weight), self.level, disc)


def eta_modularity_check(spec: EtaQuotient, N: int, allow_half_integral: bool = False) -> ModularityReport:
    """
    Check the standard sufficient criterion for an eta quotient to lie on Gamma0(N).

    Conditions: sum delta r_delta = 0 mod 24 and sum (N / delta) r_delta = 0 mod 24.
    The character is Kronecker((-1)^k prod delta^(r_delta), .); exponents only
    matter mod 2, so negative r_delta use |r_delta|.

    Args:
        spec: The eta quotient
        N: Candidate level
        allow_half_integral: Report half-integral weights instead of raising

    Raises:
        LevelError: If some delta does not divide N
        UnsupportedInstanceError: If the weight is half-integral and not allowed
    """
    if N < 1:
        raise LevelError(f"Level must be positive, got {N}")
    for d, _ in spec.factors:
        if N % d:
            raise LevelError(f"eta({d}z) does not divide level {N}")
    weight = spec.weight
    cond_a = sum(d * r for d, r in spec.factors) % 24 == 0
    cond_b = sum((N // d) * r for d, r in spec.factors) % 24 == 0
    if weight.denominator != 1:
        if not allow_half_integral:
            raise UnsupportedInstanceError(f"{spec.describe()} has half-integral weight {weight}")
        return ModularityReport(N, weight, None, None, cond_a, cond_b)
    numerator = (-1) ** int(weight)
    for d, r in spec.factors:
        numerator *= d ** abs(r)
    trivial = numerator > 0 and isqrt(numerator) ** 2 == numerator
    logger.debug(f"{spec.describe()} at level {N}: k={weight} conditions=({cond_a}, {cond_b}) trivial chi={trivial}")
    return ModularityReport(N, weight, numerator, trivial, cond_a, cond_b)

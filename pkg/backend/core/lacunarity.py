"""
Lacunarity decision for f_b(z) = eta(z)^2 eta(bz)^2.

f_b(12z) has weight 2 and level 144b. A lacunary form is a combination of CM
forms over Q(i), Q(sqrt-2), Q(omega) or Q(sqrt-6); 23 is inert in all four,
so T_23 kills it. A nonzero coefficient of f_b(12z) | T_23 therefore rules
lacunarity out, and vanishing through the Sturm bound is the evidence for
the remaining b.
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint, isprime

from ..utils.base_results import (
    CoefficientSource,
    DensityPoint,
    Excluded,
    HeckeVanishing,
    ScanVerdict,
    TableSource,
    Witness,
)
from ..utils.exceptions import InsufficientTruncationError, UnsupportedInstanceError
from .heckeops import SpaceDescriptor, hecke_tp, sturm_bound
from .qseries import QSeries, eta_quotient_expand, f_b_spec
from .quadideals import FIELDS

logger = logging.getLogger(__name__)

LACUNARY_B = frozenset({1, 2, 3, 4, 16})
SCAN_MODES = ("adaptive", "full")
DENSITY_MODES = ("all", "support_progression")
TABLE_COLUMNS = 23


def eligible(b: int) -> bool:
    """True iff 23 does not divide b and p^2 does not divide b for any prime p >= 5"""
    if b < 1:
        raise UnsupportedInstanceError(f"b must be positive, got {b}")
    if b % 23 == 0:
        return False
    return all(e < 2 for p, e in factorint(b).items() if p >= 5)


def exclusion_reason(b: int) -> Optional[str]:
    if b % 23 == 0:
        return "23 | b"
    for p, e in sorted(factorint(b).items()):
        if p >= 5 and e >= 2:
            return f"{p}^2 | b"
    return None


def candidate_cm_fields(b: int) -> List[int]:
    """
    Discriminants among -4, -8, -3, -24 whose CM forms can occur at level 144b.

    A field qualifies when |D| N(f_c) | 144b for some conductor, i.e. when
    |D| itself divides 144b.
    """
    if not eligible(b):
        raise UnsupportedInstanceError(f"b={b} is not in the scanned family ({exclusion_reason(b)})")
    level = 144 * b
    return [d for d in sorted(FIELDS, key=abs) if level % abs(d) == 0]


def witness_index(b: int, n: int) -> Optional[int]:
    """(23n - (1 + b)) / 12 when it is a non-negative integer"""
    numerator = 23 * n - (1 + b)
    if numerator < 0 or numerator % 12:
        return None
    return numerator // 12


def direct_coefficient(b: int, j: int, table: CoefficientSource) -> int:
    """
    Coefficient of q^(1 + b + 12j) in f_b(12z) = q^(1+b) P(q^12) P(q^(12b)),
    P = prod (1 - x^n)^2, from the tabulated coefficients of P.
    """
    total = 0
    k = 0
    while b * k <= j:
        total += table.coefficient(k) * table.coefficient(j - b * k)
        k += 1
    return total


class WitnessSearchResult:
    """Outcome of the table-driven witness search: found, none or inconclusive"""

    def __init__(self, b: int, status: str, witness: Optional[Witness] = None, examined: int = 0):
        self.b = b
        self.status = status
        self.witness = witness
        self.examined = examined

    @property
    def found(self) -> bool:
        return self.status == "found"

    def __repr__(self) -> str:
        return f"WitnessSearchResult(b={self.b}, status={self.status!r}, witness={self.witness})"


def witness_search(b: int, table: Union[CoefficientSource, Sequence[int]]) -> WitnessSearchResult:
    """
    Smallest n with 1 + b <= n < 12b, 23 not dividing n and n = -(1 + b) mod 12
    whose tabulated value b((23n - (1 + b)) / 12) is nonzero.

    The table value equals the coefficient of q^(23n) in f_b(12z) only while the
    (1 - q^(12bn)) factor does not contribute, so every candidate is confirmed
    against the full product before it is accepted.

    Args:
        b: Positive integer
        table: Coefficients b(1), b(2), ... of prod (1 - q^n)^2

    Returns:
        Result with status "found", "none" (range exhausted) or "inconclusive"
        (the table ran out first)
    """
    source = table if isinstance(table, CoefficientSource) else TableSource(table)
    examined = 0
    exhausted = False
    start = 1 + b
    start += (-(1 + b) - start) % 12
    for n in range(start, 12 * b, 12):
        if n % 23 == 0:
            continue
        j = witness_index(b, n)
        if j is None:
            continue
        if j >= source.known_below:
            exhausted = True
            break
        examined += 1
        table_value = source.coefficient(j)
        if table_value == 0:
            continue
        value = direct_coefficient(b, j, source)
        if value == 0:
            logger.debug(f"b={b}: table value at n={n} is {table_value} but the full coefficient vanishes")
            continue
        witness = Witness(n=n, value=value, prime=23, table_index=j, table_value=table_value)
        return WitnessSearchResult(b, "found", witness, examined)
    if exhausted:
        logger.warning(f"b={b}: witness search inconclusive, table exhausted after {examined} candidates")
        return WitnessSearchResult(b, "inconclusive", None, examined)
    return WitnessSearchResult(b, "none", None, examined)


def column_profile(table: Union[CoefficientSource, Sequence[int]], rows: int = 6,
                   columns: int = TABLE_COLUMNS) -> List[int]:
    """Nonzero entries per column of the table laid out in rows of the given width"""
    values = table.values(1, rows * columns + 1) if isinstance(table, CoefficientSource) else list(table)
    grid = np.array(values[:rows * columns], dtype=np.int64).reshape(rows, columns)
    return np.count_nonzero(grid, axis=0).tolist()


def level_of(b: int) -> int:
    return 144 * b


def required_truncation(b: int, p: int) -> int:
    """Input truncation so that T_p f_b(12z) is known through the Sturm bound"""
    return p * (sturm_bound(2, level_of(b)) + 1)


def hecke_vanishing_test(b: int, p: int = 23, mode: str = "adaptive", start_truncation: int = 4096) -> ScanVerdict:
    """
    Decide whether f_b(12z) | T_p vanishes through the Sturm bound of level 144b.

    Args:
        b: Positive integer
        p: Prime not dividing 144b (23, or 47 when 23 | b)
        mode: "full" expands once to p (B + 1); "adaptive" starts at
            start_truncation and doubles until a nonzero coefficient appears
            or the full requirement is reached
        start_truncation: First truncation tried in adaptive mode

    Returns:
        ScanVerdict with Witness or HeckeVanishing evidence
    """
    if mode not in SCAN_MODES:
        raise ValueError(f"Unknown scan mode: {mode}. Expected one of {SCAN_MODES}")
    if not isprime(p):
        raise UnsupportedInstanceError(f"{p} is not prime")
    level = level_of(b)
    if level % p == 0:
        raise UnsupportedInstanceError(f"p={p} divides the level {level}")
    bound = sturm_bound(2, level)
    required = required_truncation(b, p)
    truncation = required if mode == "full" else min(max(start_truncation, p * (b + 2)), required)
    space = SpaceDescriptor(2, level)
    spec = f_b_spec(b)
    while True:
        series = eta_quotient_expand(spec, truncation)
        image = hecke_tp(series, p, space)
        first = image.first_nonzero()
        if first is not None and first <= bound:
            logger.debug(f"b={b}: T_{p} coefficient {first} is {image.coefficient(first)} (truncation {truncation})")
            witness = Witness(n=first, value=int(image.coefficient(first)), prime=p)
            return ScanVerdict(b, False, witness, mode, additional_metadata={"truncation": truncation})
        if truncation >= required:
            break
        truncation = min(2 * truncation, required)
    logger.debug(f"b={b}: T_{p} vanishes through {bound}")
    evidence = HeckeVanishing(prime=p, bound=bound, truncation=truncation)
    return ScanVerdict(b, True, evidence, mode)


def scan_one(b: int, mode: str = "adaptive", start_truncation: int = 4096,
             alternate_prime: Optional[int] = None) -> ScanVerdict:
    """
    Verdict for one b, with ineligible b reported as excluded.

    When alternate_prime is given, b divisible by 23 are tested with
    T_alternate_prime instead of being excluded; those verdicts carry
    validated=False in their metadata.
    """
    reason = exclusion_reason(b)
    if reason == "23 | b" and alternate_prime is not None:
        verdict = hecke_vanishing_test(b, alternate_prime, mode, start_truncation)
        verdict.additional_metadata["validated"] = False
        return verdict
    if reason is not None:
        return ScanVerdict(b, False, Excluded(reason), mode)
    return hecke_vanishing_test(b, 23, mode, start_truncation)


def full_scan(b_max: int = 175, mode: str = "adaptive", start_truncation: int = 4096,
              alternate_prime: Optional[int] = None) -> List[ScanVerdict]:
    """Verdicts for b = 1 .. b_max; ineligible b are reported as excluded"""
    return [scan_one(b, mode, start_truncation, alternate_prime) for b in range(1, b_max + 1)]


def lacunary_set(verdicts: Iterable[ScanVerdict]) -> List[int]:
    return sorted(v.b for v in verdicts if v.lacunary)


def support_progression(f: QSeries) -> Optional[Tuple[int, int]]:
    """(modulus, residue) of the arithmetic progression containing the support, or None if f = 0"""
    terms = f.terms()
    if not terms:
        return None
    first = terms[0][0]
    modulus = 0
    for n, _ in terms[1:]:
        modulus = gcd(modulus, n - first)
    if modulus == 0:
        return None
    return modulus, first % modulus


def zero_count(f: QSeries, X: int, relative_to: str = "all",
               progression: Optional[Tuple[int, int]] = None) -> DensityPoint:
    """
    Zero coefficients among indices 1 .. X.

    In support_progression mode only indices n = residue (mod modulus) are
    counted. The progression is inferred from the nonzero terms of f unless
    one is passed; an inferred one is only as good as the prefix f is known on.
    """
    if relative_to not in DENSITY_MODES:
        raise ValueError(f"Unknown density mode: {relative_to}. Expected one of {DENSITY_MODES}")
    if X < 1:
        raise UnsupportedInstanceError(f"X must be positive, got {X}")
    if f.truncation <= X:
        raise InsufficientTruncationError(f"Series known below q^{f.truncation}, density needs q^{X}")
    values = np.array(f.dense(1)[:X], dtype=object)
    indices = np.arange(1, X + 1)
    if relative_to == "support_progression":
        if progression is None:
            progression = support_progression(f)
        if progression is not None:
            modulus, residue = progression
            if modulus < 1:
                raise UnsupportedInstanceError(f"Progression modulus must be positive, got {modulus}")
            values = values[indices % modulus == residue % modulus]
    zeros = int(np.count_nonzero(values == 0))
    return DensityPoint(X, zeros, len(values))


def zero_density(f: QSeries, X: int, relative_to: str = "all") -> Fraction:
    """Fraction of zero coefficients a(n), 1 <= n <= X"""
    return zero_count(f, X, relative_to).density


def density_ladder(x_max: int, start: int = 1000) -> List[int]:
    """1000, 2000, 5000, 10000, ... up to x_max"""
    ladder = []
    scale = start
    while scale <= x_max:
        for step in (1, 2, 5):
            if scale * step <= x_max:
                ladder.append(scale * step)
        scale *= 10
    return ladder or [x_max]


def density_curve(b: int, xs: Sequence[int], relative_to: str = "support_progression") -> List[DensityPoint]:
    """Zero counts of f_b(12z) at each X; its support lies in n = 1 + b (mod 12)"""
    series = eta_quotient_expand(f_b_spec(b), max(xs) + 1)
    progression = (12, (1 + b) % 12)
    return [zero_count(series, x, relative_to, progression) for x in xs]

"""
Truncated q-series engine and eta-product expansion.

A QSeries stores the coefficients of q^valuation .. q^(truncation - 1); every
coefficient below the valuation is zero and nothing at or beyond the
truncation is known. Products of Euler factors (1 - q^(delta n))^r are built
from the pentagonal-number expansion, which has only O(sqrt T) nonzero terms
below T, so multiplication loops over the sparser operand.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from jsonschema import ValidationError, validate

from ..utils.exceptions import (
    InsufficientTruncationError,
    ParseError,
    RingMismatchError,
    UnsupportedInstanceError,
)
from .exactalg import Scalar, format_scalar, parse_scalar, ring_tag, zero_of

logger = logging.getLogger(__name__)

SERIES_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "valuation": {"type": "integer", "minimum": 0},
        "truncation": {"type": "integer", "minimum": 1},
        "ring": {"type": "string", "pattern": r"^(ZZ|QQ|QK\(-?\d+\)|tower(\(.*\))?)$"},
        "coeffs": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["valuation", "truncation", "ring", "coeffs"],
    "additionalProperties": False,
}

_ETA_TERM_RE = re.compile(r"^eta\((\d*)z\)(?:\^\(?([+-]?\d+)\)?)?$")


def _common_ring(a: str, b: str) -> str:
    if a == b:
        return a
    if a.startswith("tower") and b.startswith("tower"):
        if a == "tower":
            return b
        if b == "tower":
            return a
    raise RingMismatchError(f"Coefficient rings differ: {a} vs {b}")


@dataclass(frozen=True)
class QSeries:
    """Truncated power series sum_{valuation <= n < truncation} coeffs[n - valuation] q^n"""
    valuation: int
    truncation: int
    coeffs: Tuple[Any, ...]
    ring: str = "ZZ"

    def __post_init__(self):
        if self.valuation < 0:
            raise UnsupportedInstanceError(f"Negative valuation {self.valuation} is not supported")
        if self.truncation <= self.valuation:
            raise InsufficientTruncationError(
                f"Truncation {self.truncation} must exceed valuation {self.valuation}"
            )
        if len(self.coeffs) != self.truncation - self.valuation:
            raise ValueError(
                f"Expected {self.truncation - self.valuation} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coefficients(cls,
                          coeffs: Sequence[Scalar],
                          valuation: int = 0,
                          truncation: Optional[int] = None,
                          ring: Optional[str] = None) -> QSeries:
        """Build a series from a coefficient list starting at q^valuation"""
        coeffs = tuple(coeffs)
        if ring is None:
            ring = ring_tag(coeffs[0]) if coeffs else "ZZ"
        if truncation is None:
            truncation = valuation + len(coeffs)
        if len(coeffs) < truncation - valuation:
            coeffs = coeffs + (zero_of(ring),) * (truncation - valuation - len(coeffs))
        return cls(valuation, truncation, coeffs[:truncation - valuation], ring)

    @classmethod
    def zero(cls, truncation: int, ring: str = "ZZ") -> QSeries:
        return cls(0, truncation, (zero_of(ring),) * truncation, ring)

    @classmethod
    def one(cls, truncation: int, ring: str = "ZZ") -> QSeries:
        coeffs = [zero_of(ring)] * truncation
        coeffs[0] = coeffs[0] + 1
        return cls(0, truncation, tuple(coeffs), ring)

    def coefficient(self, n: int) -> Scalar:
        """Coefficient of q^n"""
        if n >= self.truncation:
            raise InsufficientTruncationError(
                f"Coefficient of q^{n} requested but series is known only below q^{self.truncation}"
            )
        if n < self.valuation:
            return zero_of(self.ring)
        return self.coeffs[n - self.valuation]

    def __getitem__(self, n: int) -> Scalar:
        return self.coefficient(n)

    def terms(self) -> List[Tuple[int, Scalar]]:
        """Nonzero (exponent, coefficient) pairs in ascending order"""
        return [(self.valuation + k, c) for k, c in enumerate(self.coeffs) if c != 0]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return self.valuation + k
        return None

    def dense(self, start: int = 0) -> List[Scalar]:
        """Coefficients of q^start .. q^(truncation - 1), zero-filled below the valuation"""
        zero = zero_of(self.ring)
        head = [zero] * max(0, self.valuation - start)
        return head + list(self.coeffs[max(0, start - self.valuation):])

    def truncate(self, truncation: int) -> QSeries:
        if truncation >= self.truncation:
            return self
        if truncation <= self.valuation:
            raise InsufficientTruncationError(
                f"Cannot truncate at {truncation}: at or below valuation {self.valuation}"
            )
        return QSeries(self.valuation, truncation, self.coeffs[:truncation - self.valuation], self.ring)

    def shift(self, s: int) -> QSeries:
        """Multiply by q^s"""
        return QSeries(self.valuation + s, self.truncation + s, self.coeffs, self.ring)

    def scale(self, c: Scalar) -> QSeries:
        """Multiply every coefficient by the scalar c"""
        coeffs = tuple(c * x for x in self.coeffs)
        ring = ring_tag(c * zero_of(self.ring))
        return QSeries(self.valuation, self.truncation, coeffs, ring)

    def map(self, fn, ring: Optional[str] = None) -> QSeries:
        coeffs = tuple(fn(c) for c in self.coeffs)
        return QSeries(self.valuation, self.truncation, coeffs, ring or self.ring)

    def _combine(self, other: QSeries, sign: int) -> QSeries:
        ring = _common_ring(self.ring, other.ring)
        valuation = min(self.valuation, other.valuation)
        truncation = min(self.truncation, other.truncation)
        if truncation <= valuation:
            raise InsufficientTruncationError("Operands share no known coefficients")
        a = self.dense(valuation)[:truncation - valuation]
        b = other.dense(valuation)[:truncation - valuation]
        if sign > 0:
            coeffs = tuple(x + y for x, y in zip(a, b))
        else:
            coeffs = tuple(x - y for x, y in zip(a, b))
        return QSeries(valuation, truncation, coeffs, ring)

    def __add__(self, other: QSeries) -> QSeries:
        return self._combine(other, 1)

    def __sub__(self, other: QSeries) -> QSeries:
        return self._combine(other, -1)

    def __neg__(self) -> QSeries:
        return self.map(lambda c: -c)

    def __mul__(self, other: QSeries) -> QSeries:
        return mul(self, other)


def _sparse_convolve(dense: List[Scalar], sparse: List[Tuple[int, Scalar]], length: int, zero: Scalar) -> List[Scalar]:
    """sum over (e, c) in sparse of c * q^e * dense, truncated to length"""
    out = np.empty(length, dtype=object)
    out.fill(zero)
    src = np.empty(len(dense), dtype=object)
    src[:] = dense
    for e, c in sparse:
        if e >= length:
            continue
        span = min(length - e, len(dense))
        if c == 1:
            out[e:e + span] += src[:span]
        elif c == -1:
            out[e:e + span] -= src[:span]
        else:
            out[e:e + span] += src[:span] * c
    return out.tolist()


def mul(f: QSeries, g: QSeries) -> QSeries:
    """
    Product of two truncated series.

    The valuation is the sum of valuations; coefficient n of the product is
    known when every contributing pair is known, which gives
    truncation = min(T_f + v_g, T_g + v_f).

    Raises:
        RingMismatchError: If the coefficient rings differ
    """
    ring = _common_ring(f.ring, g.ring)
    valuation = f.valuation + g.valuation
    truncation = min(f.truncation + g.valuation, g.truncation + f.valuation)
    length = truncation - valuation
    f_terms = [(k, c) for k, c in enumerate(f.coeffs) if c != 0]
    g_terms = [(k, c) for k, c in enumerate(g.coeffs) if c != 0]
    if len(f_terms) <= len(g_terms):
        sparse, dense = f_terms, list(g.coeffs)
    else:
        sparse, dense = g_terms, list(f.coeffs)
    coeffs = _sparse_convolve(dense, sparse, length, zero_of(ring))
    return QSeries(valuation, truncation, tuple(coeffs), ring)


def pentagonal_terms(limit: int) -> List[Tuple[int, int]]:
    """
    Nonzero terms of prod_{n>=1} (1 - q^n) below q^limit.

    Euler's pentagonal number theorem: the product equals
    sum_k (-1)^k q^(k(3k-1)/2) over all integers k.
    """
    terms = [(0, 1)] if limit > 0 else []
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= limit:
            break
        terms.append((e1, sign))
        if e2 < limit:
            terms.append((e2, sign))
        k += 1
    return terms


def _euler_power(r: int, length: int) -> List[int]:
    """Coefficients of prod (1 - x^n)^r below x^length"""
    if length <= 0:
        return []
    penta = pentagonal_terms(length)
    if r == 0:
        return [1] + [0] * (length - 1)
    if r > 0:
        pentagonal = [0] * length
        for e, c in penta:
            pentagonal[e] = c
        result = pentagonal
        for _ in range(r - 1):
            result = _sparse_convolve(result, penta, length, 0)
        return result
    # n F(n) = sum_{k>=1} p_k ((r + 1) e_k - n) F(n - e_k) from P F' = r P' F
    tail = penta[1:]
    result = [0] * length
    result[0] = 1
    for n in range(1, length):
        acc = 0
        for e, c in tail:
            if e > n:
                break
            acc += c * ((r + 1) * e - n) * result[n - e]
        result[n] = acc // n
    return result


def eta_factor(delta: int, r: int, T: int) -> QSeries:
    """
    Expansion of prod_{n>=1} (1 - q^(delta n))^r below q^T.

    Args:
        delta: Positive dilation of q
        r: Nonzero integer exponent; negative exponents give the series inverse
        T: Truncation (coefficients of q^0 .. q^(T-1) are returned)

    Returns:
        Integer QSeries with valuation 0 and truncation T
    """
    if delta < 1:
        raise UnsupportedInstanceError(f"delta must be positive, got {delta}")
    if T < 1:
        raise InsufficientTruncationError(f"Truncation must be positive, got {T}")
    length = (T + delta - 1) // delta
    base = QSeries(0, length, tuple(_euler_power(r, length)), "ZZ")
    logger.debug(f"eta_factor delta={delta} r={r} T={T}: {len(base.terms())} nonzero terms")
    return rescale(base, delta).truncate(T)


def partition_numbers(T: int) -> List[int]:
    """p(0), ..., p(T-1) from the inverse of the Euler product"""
    return list(eta_factor(1, -1, T).coeffs)


def rescale(f: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m; exponents and truncation scale by m"""
    if m < 1:
        raise UnsupportedInstanceError(f"rescale factor must be positive, got {m}")
    if m == 1:
        return f
    coeffs = [zero_of(f.ring)] * ((f.truncation - f.valuation) * m)
    for k, c in enumerate(f.coeffs):
        coeffs[k * m] = c
    return QSeries(f.valuation * m, f.truncation * m, tuple(coeffs), f.ring)


def support_residues(f: QSeries, m: int) -> Set[int]:
    """Residues mod m of the exponents carrying nonzero coefficients"""
    if m < 1:
        raise UnsupportedInstanceError(f"modulus must be positive, got {m}")
    return {n % m for n, _ in f.terms()}


@dataclass(frozen=True)
class EtaQuotient:
    """prod_delta eta(delta z)^(r_delta) with derived prefactor exponent and weight"""
    factors: Tuple[Tuple[int, int], ...]
    level: Optional[int] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        deltas = [d for d, _ in self.factors]
        if len(set(deltas)) != len(deltas):
            raise ParseError(f"Repeated delta in eta quotient: {deltas}")
        for d, r in self.factors:
            if d < 1 or r == 0:
                raise ParseError(f"Invalid eta factor eta({d}z)^{r}")

    @property
    def s(self) -> Fraction:
        """Exponent of the q^s prefactor, (1/24) sum delta r_delta"""
        return Fraction(sum(d * r for d, r in self.factors), 24)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def describe(self) -> str:
        if self.label:
            return self.label
        return format_eta_product(self)


def format_eta_product(spec: EtaQuotient) -> str:
    parts = []
    for d, r in spec.factors:
        inner = "z" if d == 1 else f"{d}z"
        parts.append(f"eta({inner})^{r}")
    return "*".join(parts)


def parse_eta_product(text: str, level: Optional[int] = None) -> EtaQuotient:
    """
    Parse "eta(<m>z)^<r> * ..." into an EtaQuotient.

    Repeated factors are merged; factors whose exponents cancel are dropped.

    Raises:
        ParseError: If the string does not follow the grammar
    """
    if not text or not text.strip():
        raise ParseError("Empty eta-product specification")
    exponents: Dict[int, int] = {}
    for raw in text.replace(" ", "").split("*"):
        match = _ETA_TERM_RE.match(raw)
        if not match:
            raise ParseError(f"Cannot parse eta factor {raw!r} in {text!r}")
        delta = int(match.group(1)) if match.group(1) else 1
        r = int(match.group(2)) if match.group(2) is not None else 1
        if delta < 1:
            raise ParseError(f"delta must be positive in {raw!r}")
        exponents[delta] = exponents.get(delta, 0) + r
    factors = tuple(sorted((d, r) for d, r in exponents.items() if r != 0))
    if not factors:
        raise ParseError(f"Eta product {text!r} is trivial")
    return EtaQuotient(factors, level=level)


def f_b_spec(b: int, scale: int = 12) -> EtaQuotient:
    """eta(scale z)^2 eta(scale b z)^2, the dilated form of eta(z)^2 eta(bz)^2"""
    if b < 1:
        raise UnsupportedInstanceError(f"b must be positive, got {b}")
    if b == 1:
        return EtaQuotient(((scale, 4),), level=144 * b if scale == 12 else None, label=f"f_1({scale}z)")
    return EtaQuotient(((scale, 2), (scale * b, 2)), level=144 * b if scale == 12 else None,
                       label=f"f_{b}({scale}z)")


def eta_quotient_expand(spec: EtaQuotient, T: int) -> QSeries:
    """
    Expand q^s prod_delta prod_n (1 - q^(delta n))^(r_delta) below q^T.

    The product is computed in x = q^g with g the gcd of the deltas and then
    rescaled, so dilated products cost no more than undilated ones.

    Raises:
        UnsupportedInstanceError: If s is not an integer
        InsufficientTruncationError: If T does not exceed s
    """
    s = spec.s
    if s.denominator != 1:
        raise UnsupportedInstanceError(
            f"{spec.describe()} has q-prefactor exponent s = {s}, which is not an integer"
        )
    s = int(s)
    if s < 0:
        raise UnsupportedInstanceError(f"{spec.describe()} has negative valuation {s}")
    if T <= s:
        raise InsufficientTruncationError(f"Truncation {T} must exceed the valuation {s}")
    g = reduce(gcd, (d for d, _ in spec.factors))
    length = (T - s + g - 1) // g
    product = QSeries.one(length)
    for d, r in spec.factors:
        product = mul(product, eta_factor(d // g, r, length))
    expanded = rescale(product, g).truncate(T - s).shift(s)
    logger.debug(f"Expanded {spec.describe()} to q^{T}: valuation {s}, {len(expanded.terms())} nonzero terms")
    return expanded


def series_to_json(f: QSeries) -> Dict[str, Any]:
    return {
        "valuation": f.valuation,
        "truncation": f.truncation,
        "ring": f.ring,
        "coeffs": [format_scalar(c) for c in f.coeffs],
    }


def series_from_json(doc: Dict[str, Any]) -> QSeries:
    """
    Rebuild a series from its JSON document.

    Raises:
        ParseError: If the document violates the series schema
    """
    try:
        validate(instance=doc, schema=SERIES_SCHEMA)
    except ValidationError as e:
        raise ParseError(f"Invalid series document: {e.message}")
    if len(doc["coeffs"]) != doc["truncation"] - doc["valuation"]:
        raise ParseError(
            f"Series document lists {len(doc['coeffs'])} coefficients for "
            f"q^{doc['valuation']} .. q^{doc['truncation'] - 1}"
        )
    coeffs = tuple(parse_scalar(c, doc["ring"]) for c in doc["coeffs"])
    return QSeries(doc["valuation"], doc["truncation"], coeffs, doc["ring"])


def series_to_text(f: QSeries) -> str:
    """One "exponent coefficient" pair per line for the nonzero coefficients"""
    return "\n".join(f"{n} {format_scalar(c)}" for n, c in f.terms())


def linear_combination(terms: Iterable[Tuple[Scalar, QSeries]]) -> QSeries:
    """sum c_j f_j over a common known range"""
    result: Optional[QSeries] = None
    for c, f in terms:
        scaled = f.scale(c)
        result = scaled if result is None else result + scaled
    if result is None:
        raise ValueError("Empty linear combination")
    return result

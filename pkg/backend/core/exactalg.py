"""
Exact scalar arithmetic for eta-product and CM-form coefficients.

Three kinds of scalars are used across the toolkit:
rationals (fractions.Fraction), elements of the four imaginary quadratic
fields Q(i), Q(sqrt-2), Q(omega), Q(sqrt-6), and elements of the tower
Q(i, r, s) with r^2 = -6 and s^2 = u, where u lies in Q(i, r). The tower
carries the square-root branch needed for the non-principal ideal class of
Q(sqrt-6).
"""

from __future__ import annotations

import logging
import re
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Optional, Tuple, Union

from ..utils.exceptions import (
    FieldMismatchError,
    ParseError,
    TowerParameterError,
    UnsupportedInstanceError,
)

logger = logging.getLogger(__name__)

Rational = Fraction

# theta^2 = -B*theta - C for the canonical generator theta of each field
FIELD_PARAMETERS = {
    -4: (0, 1, "i"),
    -8: (0, 2, "sqrt-2"),
    -3: (1, 1, "omega"),
    -24: (0, 6, "sqrt-6"),
}

Scalar = Union[int, Fraction, "QuadElement", "TowerElement"]
QirCoords = Tuple[Fraction, Fraction, Fraction, Fraction]

_RATIONAL_RE = r"[+-]?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^\s*({_RATIONAL_RE})\s*([+-])\s*(\d+(?:/\d+)?)\*theta\((-?\d+)\)\s*$"
)
_TOWER_RE = re.compile(r"^\s*tower\[(.*)\]\s*$")


def to_rational(value: Union[int, Fraction, str]) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not re.fullmatch(rf"\s*{_RATIONAL_RE}\s*", value):
            raise ParseError(f"Not a rational number: {value!r}")
        return Fraction(value.strip())
    raise ParseError(f"Cannot interpret {value!r} as a rational number")


def format_rational(value: Union[int, Fraction]) -> str:
    """Serialize a rational as "p/q" (or "p" when q = 1)"""
    return str(Fraction(value))


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None"""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class QuadElement:
    """Element a + b*theta of one of the four imaginary quadratic fields"""

    def __init__(self, disc: int, a: Union[int, Fraction], b: Union[int, Fraction] = 0) -> None:
        if disc not in FIELD_PARAMETERS:
            raise UnsupportedInstanceError(f"Unsupported discriminant: {disc}")
        self._disc = disc
        self._a = to_rational(a)
        self._b = to_rational(b)

    @property
    def disc(self) -> int:
        return self._disc

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def from_int(cls, disc: int, x: int) -> QuadElement:
        return cls(disc, x, 0)

    @classmethod
    def theta(cls, disc: int) -> QuadElement:
        return cls(disc, 0, 1)

    def _coerce(self, other) -> Optional[QuadElement]:
        if isinstance(other, QuadElement):
            if other.disc != self._disc:
                raise FieldMismatchError(
                    f"Cannot combine elements of discriminants {self._disc} and {other.disc}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(self._disc, other, 0)
        return None

    def __repr__(self) -> str:
        return f"QuadElement({self._disc}, {self._a}, {self._b})"

    def __str__(self) -> str:
        return format_quad(self)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and self._a == other
        if isinstance(other, QuadElement):
            return self._disc == other.disc and self._a == other.a and self._b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self._b == 0:
            return hash(self._a)
        return hash((self._disc, self._a, self._b))

    def __add__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self._disc, self._a + o.a, self._b + o.b)

    def __radd__(self, other) -> QuadElement:
        return self + other

    def __neg__(self) -> QuadElement:
        return QuadElement(self._disc, -self._a, -self._b)

    def __sub__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self._disc, self._a - o.a, self._b - o.b)

    def __rsub__(self, other) -> QuadElement:
        return (-self) + other

    def __mul__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        big_b, big_c, _ = FIELD_PARAMETERS[self._disc]
        bb = self._b * o.b
        return QuadElement(
            self._disc,
            self._a * o.a - big_c * bb,
            self._a * o.b + self._b * o.a - big_b * bb,
        )

    def __rmul__(self, other) -> QuadElement:
        return self * other

    def __truediv__(self, other) -> QuadElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, exponent: int) -> QuadElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QuadElement(self._disc, 1, 0)
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> QuadElement:
        big_b, _, _ = FIELD_PARAMETERS[self._disc]
        return QuadElement(self._disc, self._a - big_b * self._b, -self._b)

    @cached_property
    def norm(self) -> Fraction:
        big_b, big_c, _ = FIELD_PARAMETERS[self._disc]
        return self._a * self._a - big_b * self._a * self._b + big_c * self._b * self._b

    def trace(self) -> Fraction:
        big_b, _, _ = FIELD_PARAMETERS[self._disc]
        return 2 * self._a - big_b * self._b

    def inverse(self) -> QuadElement:
        if self.norm == 0:
            raise ZeroDivisionError("QuadElement division by zero")
        conj = self.conjugate()
        return QuadElement(self._disc, conj.a / self.norm, conj.b / self.norm)

    def is_integral(self) -> bool:
        return self._a.denominator == 1 and self._b.denominator == 1

    def int_coords(self) -> Tuple[int, int]:
        if not self.is_integral():
            raise UnsupportedInstanceError(f"{self} is not an algebraic integer in the basis {{1, theta}}")
        return int(self._a), int(self._b)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0


def quad_conjugate(x: QuadElement) -> QuadElement:
    """a + b*theta -> its Galois conjugate (for omega: (a - b) - b*omega)"""
    return x.conjugate()


def norm(x: QuadElement) -> Fraction:
    """Field norm x * conjugate(x) as a rational"""
    return x.norm


def format_quad(x: QuadElement) -> str:
    sign = "-" if x.b < 0 else "+"
    return f"{format_rational(x.a)}{sign}{format_rational(abs(x.b))}*theta({x.disc})"


def parse_quad(text: str) -> QuadElement:
    match = _QUAD_RE.match(text)
    if not match:
        raise ParseError(f"Not a quadratic field element: {text!r}")
    a, sign, b, disc = match.groups()
    b_value = Fraction(b)
    if sign == "-":
        b_value = -b_value
    return QuadElement(int(disc), Fraction(a), b_value)


# Arithmetic on Q(i, r), r^2 = -6, coordinates over {1, i, r, ir}

def _gauss_mul(a0, a1, b0, b1):
    return a0 * b0 - a1 * b1, a0 * b1 + a1 * b0


def _qir_mul(x: QirCoords, y: QirCoords) -> QirCoords:
    p0, p1 = _gauss_mul(x[0], x[1], y[0], y[1])
    q0, q1 = _gauss_mul(x[2], x[3], y[2], y[3])
    m0, m1 = _gauss_mul(x[0], x[1], y[2], y[3])
    n0, n1 = _gauss_mul(x[2], x[3], y[0], y[1])
    return (p0 - 6 * q0, p1 - 6 * q1, m0 + n0, m1 + n1)


def _qir_add(x: QirCoords, y: QirCoords) -> QirCoords:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def _qir_neg(x: QirCoords) -> QirCoords:
    return (-x[0], -x[1], -x[2], -x[3])


def _qir_complex_conj(x: QirCoords) -> QirCoords:
    # i -> -i and r -> -r, so ir is fixed
    return (x[0], -x[1], -x[2], x[3])


def _qir_inverse(x: QirCoords) -> QirCoords:
    # (A + B r)^-1 = (A - B r) / (A^2 + 6 B^2) with A, B in Q(i)
    a0, a1, b0, b1 = x
    s0, s1 = _gauss_mul(a0, a1, a0, a1)
    t0, t1 = _gauss_mul(b0, b1, b0, b1)
    d0, d1 = s0 + 6 * t0, s1 + 6 * t1
    dn = d0 * d0 + d1 * d1
    if dn == 0:
        raise ZeroDivisionError("Q(i, sqrt-6) division by zero")
    inv0, inv1 = d0 / dn, -d1 / dn
    c0, c1 = _gauss_mul(a0, a1, inv0, inv1)
    e0, e1 = _gauss_mul(-b0, -b1, inv0, inv1)
    return (c0, c1, e0, e1)


_ZERO4: QirCoords = (Fraction(0),) * 4


def _merge_parameter(p: Optional[QirCoords], q: Optional[QirCoords]) -> Optional[QirCoords]:
    if p is None:
        return q
    if q is None or p == q:
        return p
    raise TowerParameterError(f"Tower parameters differ: {p} vs {q}")


class TowerElement:
    """
    Element of Q(i, r, s) in the basis {1, i, r, ir, s, is, rs, irs}.

    r^2 = -6 and s^2 = parameter, where the parameter is an element of Q(i, r)
    given by its four coordinates. Elements with no s-part may leave the
    parameter unset; they combine with elements over any parameter.
    """

    __slots__ = ("_coords", "_parameter")

    def __init__(self, coords, parameter: Optional[QirCoords] = None) -> None:
        values = tuple(to_rational(c) for c in coords)
        if len(values) != 8:
            raise ParseError(f"Tower element needs 8 coordinates, got {len(values)}")
        if parameter is not None:
            parameter = tuple(to_rational(c) for c in parameter)
            if len(parameter) != 4:
                raise TowerParameterError("Tower parameter needs 4 coordinates")
            if parameter == _ZERO4:
                raise TowerParameterError("Tower parameter must be nonzero")
        elif any(values[4:]):
            raise TowerParameterError("Element with an s-part needs a tower parameter")
        self._coords = values
        self._parameter = parameter

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return self._coords

    @property
    def parameter(self) -> Optional[QirCoords]:
        return self._parameter

    @property
    def p_part(self) -> QirCoords:
        return self._coords[:4]

    @property
    def s_part(self) -> QirCoords:
        return self._coords[4:]

    @classmethod
    def from_parts(cls, p: QirCoords, q: QirCoords, parameter: Optional[QirCoords]) -> TowerElement:
        if parameter is None and any(q):
            raise TowerParameterError("Element with an s-part needs a tower parameter")
        return cls(tuple(p) + tuple(q), parameter)

    @classmethod
    def from_rational(cls, x: Union[int, Fraction], parameter: Optional[QirCoords] = None) -> TowerElement:
        return cls((x, 0, 0, 0, 0, 0, 0, 0), parameter)

    @classmethod
    def from_quad(cls, x: QuadElement, parameter: Optional[QirCoords] = None) -> TowerElement:
        """Embed Q(i) or Q(sqrt-6) into the tower"""
        if x.disc == -4:
            return cls((x.a, x.b, 0, 0, 0, 0, 0, 0), parameter)
        if x.disc == -24:
            return cls((x.a, 0, x.b, 0, 0, 0, 0, 0), parameter)
        raise FieldMismatchError(f"Discriminant {x.disc} does not embed in the tower")

    @classmethod
    def i(cls) -> TowerElement:
        return cls((0, 1, 0, 0, 0, 0, 0, 0))

    @classmethod
    def r(cls) -> TowerElement:
        return cls((0, 0, 1, 0, 0, 0, 0, 0))

    @classmethod
    def s(cls, parameter: QirCoords) -> TowerElement:
        return cls((0, 0, 0, 0, 1, 0, 0, 0), parameter)

    @classmethod
    def sqrt6(cls) -> TowerElement:
        # sqrt-6 = i*sqrt6, so sqrt6 = -i*r
        return cls((0, 0, 0, -1, 0, 0, 0, 0))

    def _coerce(self, other) -> Optional[TowerElement]:
        if isinstance(other, TowerElement):
            return other
        if isinstance(other, (int, Fraction)):
            return TowerElement.from_rational(other, self._parameter)
        if isinstance(other, QuadElement):
            return TowerElement.from_quad(other, self._parameter)
        return None

    def __repr__(self) -> str:
        return f"TowerElement({[str(c) for c in self._coords]}, parameter={self._parameter})"

    def __str__(self) -> str:
        labels = ("", "i", "r", "ir", "s", "is", "rs", "irs")
        terms = []
        for coeff, label in zip(self._coords, labels):
            if coeff == 0:
                continue
            if label and coeff in (1, -1):
                terms.append(("-" if coeff < 0 else "+") + label)
            else:
                text = format_rational(coeff)
                terms.append((text if text.startswith("-") else "+" + text) + (("*" + label) if label else ""))
        if not terms:
            return "0"
        rendered = "".join(terms)
        return rendered[1:] if rendered.startswith("+") else rendered

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._coords[0] == other and not any(self._coords[1:])
        if isinstance(other, QuadElement):
            try:
                return self == TowerElement.from_quad(other)
            except FieldMismatchError:
                return False
        if isinstance(other, TowerElement):
            if self._coords != other.coords:
                return False
            if any(self.s_part):
                return self._parameter == other.parameter
            return True
        return NotImplemented

    def __hash__(self) -> int:
        if not any(self._coords[1:]):
            return hash(self._coords[0])
        return hash(self._coords)

    def __add__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        parameter = _merge_parameter(self._parameter, o.parameter)
        return TowerElement(tuple(x + y for x, y in zip(self._coords, o.coords)), parameter)

    def __radd__(self, other) -> TowerElement:
        return self + other

    def __neg__(self) -> TowerElement:
        return TowerElement(tuple(-c for c in self._coords), self._parameter)

    def __sub__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> TowerElement:
        return (-self) + other

    def __mul__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ring_mul(self, o)

    def __rmul__(self, other) -> TowerElement:
        return self * other

    def __truediv__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> TowerElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> TowerElement:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TowerElement.from_rational(1, self._parameter)
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> TowerElement:
        p, q = self.p_part, self.s_part
        if not any(q):
            return TowerElement.from_parts(_qir_inverse(p), _ZERO4, self._parameter)
        # (p + q s)^-1 = (p - q s) / (p^2 - q^2 u)
        u = self._parameter
        denom = _qir_add(_qir_mul(p, p), _qir_neg(_qir_mul(_qir_mul(q, q), u)))
        inv = _qir_inverse(denom)
        return TowerElement.from_parts(_qir_mul(p, inv), _qir_neg(_qir_mul(q, inv)), u)

    def is_zero(self) -> bool:
        return not any(self._coords)

    def is_rational(self) -> bool:
        return not any(self._coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise UnsupportedInstanceError(f"{self} is not rational")
        return self._coords[0]

    def complex_conjugate(self) -> TowerElement:
        """
        Complex conjugation, with conj(s) = |u| * s / u.

        Raises:
            UnsupportedInstanceError: If |u| is not rational
        """
        p = _qir_complex_conj(self.p_part)
        q = self.s_part
        if not any(q):
            return TowerElement.from_parts(p, _ZERO4, self._parameter)
        u = self._parameter
        uu = _qir_mul(u, _qir_complex_conj(u))
        modulus = rational_sqrt(uu[0]) if not any(uu[1:]) else None
        if modulus is None:
            raise UnsupportedInstanceError(f"|u| is not rational for tower parameter {u}")
        # conj(q s) = conj(q) * |u| * s / u
        factor = _qir_mul(_qir_complex_conj(q), _qir_inverse(u))
        factor = tuple(modulus * c for c in factor)
        return TowerElement.from_parts(p, factor, u)

    def abs_squared(self) -> TowerElement:
        return self * self.complex_conjugate()


def ring_mul(x: TowerElement, y: TowerElement) -> TowerElement:
    """
    Multiply two tower elements, reducing by i^2 = -1, r^2 = -6, s^2 = u.

    Raises:
        TowerParameterError: If the operands were built over different u
    """
    parameter = _merge_parameter(x.parameter, y.parameter)
    p1, q1 = x.p_part, x.s_part
    p2, q2 = y.p_part, y.s_part
    p = _qir_mul(p1, p2)
    if any(q1) and any(q2):
        p = _qir_add(p, _qir_mul(_qir_mul(q1, q2), parameter))
    if any(q1) or any(q2):
        q = _qir_add(_qir_mul(p1, q2), _qir_mul(q1, p2))
    else:
        q = _ZERO4
    return TowerElement.from_parts(p, q, parameter)


def format_tower(x: TowerElement) -> str:
    return "tower[" + ",".join(format_rational(c) for c in x.coords) + "]"


def parse_tower(text: str, parameter: Optional[QirCoords] = None) -> TowerElement:
    match = _TOWER_RE.match(text)
    if not match:
        raise ParseError(f"Not a tower element: {text!r}")
    parts = match.group(1).split(",")
    if len(parts) != 8:
        raise ParseError(f"Tower element needs 8 coordinates: {text!r}")
    return TowerElement(tuple(to_rational(p) for p in parts), parameter)


def format_scalar(value: Scalar) -> str:
    """Serialize any supported scalar to its canonical string"""
    if isinstance(value, bool):
        raise ParseError("Booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, QuadElement):
        return format_quad(value)
    if isinstance(value, TowerElement):
        return format_tower(value)
    raise ParseError(f"Unsupported scalar type: {type(value).__name__}")


def parse_scalar(text: str, ring: str) -> Scalar:
    """Parse a scalar string for the given ring tag (see ring_tag)"""
    if ring == "ZZ":
        value = to_rational(text)
        if value.denominator != 1:
            raise ParseError(f"Non-integral coefficient {text!r} in ZZ series")
        return int(value)
    if ring == "QQ":
        return to_rational(text)
    if ring.startswith("QK("):
        element = parse_quad(text)
        if ring != f"QK({element.disc})":
            raise ParseError(f"Element {text!r} does not belong to ring {ring}")
        return element
    if ring.startswith("tower"):
        return parse_tower(text, parse_tower_ring(ring))
    raise ParseError(f"Unknown ring tag: {ring!r}")


def ring_tag(value: Scalar) -> str:
    """Ring tag of a scalar: ZZ, QQ, QK(D) or tower / tower(u0,u1,u2,u3)"""
    if isinstance(value, bool):
        raise ParseError("Booleans are not scalars")
    if isinstance(value, int):
        return "ZZ"
    if isinstance(value, Fraction):
        return "QQ"
    if isinstance(value, QuadElement):
        return f"QK({value.disc})"
    if isinstance(value, TowerElement):
        if value.parameter is None:
            return "tower"
        return "tower(" + ",".join(format_rational(c) for c in value.parameter) + ")"
    raise ParseError(f"Unsupported scalar type: {type(value).__name__}")


def parse_tower_ring(ring: str) -> Optional[QirCoords]:
    if ring == "tower":
        return None
    match = re.fullmatch(r"tower\((.*)\)", ring)
    if not match:
        raise ParseError(f"Unknown ring tag: {ring!r}")
    parts = match.group(1).split(",")
    if len(parts) != 4:
        raise ParseError(f"Tower parameter needs 4 coordinates: {ring!r}")
    return tuple(to_rational(p) for p in parts)


def zero_of(ring: str) -> Scalar:
    """Additive identity of a ring tag"""
    if ring == "ZZ":
        return 0
    if ring == "QQ":
        return Fraction(0)
    if ring.startswith("QK("):
        return QuadElement(int(ring[3:-1]), 0, 0)
    if ring.startswith("tower"):
        return TowerElement.from_rational(0, parse_tower_ring(ring))
    raise ParseError(f"Unknown ring tag: {ring!r}")

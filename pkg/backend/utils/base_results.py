"""
Base classes and data structures for scan results and coefficient sources.
"""

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from .exceptions import InsufficientTruncationError


@dataclass
class Witness:
    """A nonzero coefficient of T_p f at index n"""
    n: int
    value: int
    prime: int = 23
    table_index: Optional[int] = None
    table_value: Optional[int] = None


@dataclass
class HeckeVanishing:
    """T_p f vanished at every index through the bound"""
    prime: int
    bound: int
    truncation: int


@dataclass
class Excluded:
    """b is outside the scanned family"""
    reason: str


Evidence = Union[Witness, HeckeVanishing, Excluded]


@dataclass
class ScanVerdict:
    """Classification of a single b"""
    b: int
    lacunary: bool
    evidence: Evidence
    mode: str = "adaptive"
    label: str = ""
    additional_metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.lacunary and not isinstance(self.evidence, HeckeVanishing):
            raise ValueError(f"Lacunary verdict for b={self.b} needs Hecke-vanishing evidence")
        if not self.label:
            if isinstance(self.evidence, HeckeVanishing):
                self.label = "T_p-annihilation evidence"
            elif isinstance(self.evidence, Witness):
                self.label = "non-lacunary"
            else:
                self.label = "excluded"

    @property
    def evidence_kind(self) -> str:
        return type(self.evidence).__name__

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": self.b,
            "lacunary": self.lacunary,
            "label": self.label,
            "mode": self.mode,
            "evidence": {"kind": self.evidence_kind, **asdict(self.evidence)},
            **({"metadata": self.additional_metadata} if self.additional_metadata else {}),
        }


@dataclass
class DensityPoint:
    """Zero count of a series over a range of indices"""
    x: int
    zeros: int
    total: int

    @property
    def density(self) -> Fraction:
        if self.total == 0:
            return Fraction(1)
        return Fraction(self.zeros, self.total)


class CoefficientSource(ABC):
    """Read-only access to the coefficients c(0), c(1), ... of some series"""

    @property
    @abstractmethod
    def known_below(self) -> int:
        """Coefficients with index below this value are available"""
        pass

    @abstractmethod
    def _lookup(self, n: int) -> int:
        pass

    def coefficient(self, n: int) -> int:
        if n < 0:
            return 0
        if n >= self.known_below:
            raise InsufficientTruncationError(
                f"Coefficient {n} requested from a source known below {self.known_below}"
            )
        return self._lookup(n)

    def values(self, start: int, stop: int) -> List[int]:
        return [self.coefficient(n) for n in range(start, stop)]


class TableSource(CoefficientSource):
    """
    Tabulated coefficients b(1), b(2), ... of a series with constant term 1,
    such as the first 1000 coefficients of prod (1 - q^n)^2.
    """

    def __init__(self, values: Sequence[int], constant: int = 1):
        self._values = [int(v) for v in values]
        self._constant = constant

    @property
    def known_below(self) -> int:
        return len(self._values) + 1

    def _lookup(self, n: int) -> int:
        if n == 0:
            return self._constant
        return self._values[n - 1]

    @property
    def entries(self) -> List[int]:
        return list(self._values)


class SeriesSource(CoefficientSource):
    """Coefficients read from an integer QSeries"""

    def __init__(self, series):
        self._series = series

    @property
    def known_below(self) -> int:
        return self._series.truncation

    def _lookup(self, n: int) -> int:
        return self._series.coefficient(n)

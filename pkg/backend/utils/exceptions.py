"""
Error hierarchy for the eta-product lacunarity toolkit.

All errors derive from ValueError so callers that only care about bad input
can keep catching ValueError.
"""


class EtaLacError(ValueError):
    """Base class for every error raised by the toolkit"""
    exit_code: int = 1


class TowerParameterError(EtaLacError):
    """Tower elements built over different square-root parameters were combined"""


class RingMismatchError(EtaLacError):
    """Series over different coefficient rings were combined"""


class InsufficientTruncationError(EtaLacError):
    """A coefficient beyond the known truncation was requested"""


class UnsupportedInstanceError(EtaLacError):
    """The input is well formed but outside what the toolkit computes"""
    exit_code = 3


class LevelError(EtaLacError):
    """An eta factor does not divide the requested level"""
    exit_code = 3


class FieldMismatchError(EtaLacError):
    """Ideals or elements from different quadratic fields were combined"""


class NormalizationError(EtaLacError):
    """No unique associate satisfies the normalization rule of a character"""


class DecompositionError(EtaLacError):
    """A residue is outside the group generated by the character's generators"""


class CharacterDomainError(EtaLacError):
    """A character was evaluated at an ideal or integer not coprime to its conductor"""


class NonRationalCombinationError(EtaLacError):
    """A linear combination of CM forms produced a non-rational coefficient"""


class ParseError(EtaLacError):
    """Malformed eta-product string, scalar string or series document"""
    exit_code = 2


class FixtureError(EtaLacError):
    """Fixture file missing, malformed or failing its checksum"""
    exit_code = 4


class VerificationMismatch(EtaLacError):
    """An identity check or fixture comparison failed"""
    exit_code = 5

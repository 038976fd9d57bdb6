"""
Utility modules for the eta-product lacunarity toolkit.
"""

from .base_results import (
    CoefficientSource,
    DensityPoint,
    Excluded,
    HeckeVanishing,
    ScanVerdict,
    SeriesSource,
    TableSource,
    Witness,
)
from .exceptions import EtaLacError, FixtureError, ParseError, UnsupportedInstanceError, VerificationMismatch
from .validators import validate_appendix1, validate_fixture_frame, validate_scan_settings

__all__ = [
    "CoefficientSource",
    "DensityPoint",
    "Excluded",
    "HeckeVanishing",
    "ScanVerdict",
    "SeriesSource",
    "TableSource",
    "Witness",
    "EtaLacError",
    "FixtureError",
    "ParseError",
    "UnsupportedInstanceError",
    "VerificationMismatch",
    "validate_appendix1",
    "validate_fixture_frame",
    "validate_scan_settings"
]

"""
Helper utilities for the eta-product lacunarity toolkit.
"""

import hashlib
import uuid
from fractions import Fraction
from typing import Any, Dict, Union

from ..core.exactalg import Scalar, format_scalar


def generate_run_id() -> str:
    """Generate a unique run ID"""
    return str(uuid.uuid4())


def calculate_file_hash(file_path: str) -> str:
    """Calculate the SHA-256 hash of a file"""
    hash_sha256 = hashlib.sha256()
    with open(file_path, "rb") as f:
        for chunk in iter(lambda: f.read(4096), b""):
            hash_sha256.update(chunk)
    return hash_sha256.hexdigest()


def format_exact(value: Union[int, Fraction]) -> str:
    """Exact rational string, e.g. 3/7"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Union[int, Fraction], places: int = 6) -> str:
    return f"{float(value):.{places}f}"


def scalar_to_str(value: Scalar) -> str:
    """Integers and rationals in plain form, field and tower elements in canonical form"""
    if isinstance(value, (int, Fraction)):
        return format_exact(value)
    return format_scalar(value)


def format_duration(seconds: float) -> str:
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, rest = divmod(seconds, 60)
    return f"{int(minutes)}m {rest:.1f}s"


def merge_settings(base_settings: Dict[str, Any],
                   override_settings: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge override settings into base settings; None overrides are ignored

    Args:
        base_settings: Base settings dictionary
        override_settings: Settings to override

    Returns:
        Merged settings dictionary
    """
    merged = base_settings.copy()

    for key, value in override_settings.items():
        if value is None:
            continue
        if key in merged and isinstance(merged[key], dict) and isinstance(value, dict):
            # Recursively merge nested dictionaries
            merged[key] = merge_settings(merged[key], value)
        else:
            merged[key] = value

    return merged

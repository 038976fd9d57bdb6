"""
Validation utilities for the eta-product lacunarity toolkit.
"""

from typing import Any, Dict, List, Sequence

import pandas as pd

from .exceptions import FixtureError, ParseError, UnsupportedInstanceError

APPENDIX1_ENTRIES = 1000
APPENDIX1_COLUMNS = 23
APPENDIX2_COLUMNS = ["n", "a", "b", "c", "quarantine"]
APPENDIX3_COLUMNS = ["n", "a", "b1", "b2", "c1", "c2", "c3", "c4", "quarantine"]
QUARANTINE_REASONS = {"unscaled", "ordering", "imaginary", "inconsistent", "asterisk"}


def validate_positive_int(value: Any, name: str) -> int:
    """
    Validate a positive integer argument

    Raises:
        ParseError: If the value is not a positive integer
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ParseError(f"{name} must be positive, got {value}")
    return value


def validate_case(case: Any) -> int:
    if case not in (1, 2, 3, 4, 5):
        raise ParseError(f"case must be one of 1..5, got {case!r}")
    return case


def validate_scan_settings(settings: Dict[str, Any], b_limit: int) -> Dict[str, Any]:
    """
    Validate scan settings

    Args:
        settings: Dictionary with mode, b_max, alternate_prime, start_truncation and jobs
        b_limit: Largest b a scan may reach

    Returns:
        Validated settings dictionary

    Raises:
        ParseError: If a setting has the wrong shape
        UnsupportedInstanceError: If b_max exceeds the limit
    """
    validated = {}

    mode = settings.get("mode", "adaptive")
    if mode not in ("adaptive", "full"):
        raise ParseError(f"Invalid scan mode: {mode}. Must be 'adaptive' or 'full'")
    validated["mode"] = mode

    b_max = settings.get("b_max", 0)
    if isinstance(b_max, bool) or not isinstance(b_max, int) or b_max < 0:
        raise ParseError(f"b_max must be a non-negative integer, got {b_max!r}")
    if b_max > b_limit:
        raise UnsupportedInstanceError(f"b_max={b_max} exceeds the limit {b_limit}")
    validated["b_max"] = b_max

    alternate = settings.get("alternate_prime")
    if alternate is not None:
        validate_positive_int(alternate, "alternate_prime")
        if alternate == 23:
            alternate = None
    validated["alternate_prime"] = alternate

    start = settings.get("start_truncation")
    if start is not None:
        validate_positive_int(start, "start_truncation")
    validated["start_truncation"] = start

    jobs = settings.get("jobs", 1)
    validated["jobs"] = validate_positive_int(jobs, "jobs")
    return validated


def validate_density_request(x: int, x_max: int) -> int:
    validate_positive_int(x, "X")
    if x > x_max:
        raise UnsupportedInstanceError(f"X={x} exceeds the limit {x_max}")
    return x


def validate_appendix1(rows: Sequence[Sequence[int]]) -> List[int]:
    """
    Validate the 1000 tabulated coefficients of prod (1 - q^n)^2, laid out
    23 per row in row-major order with the remainder on the last row

    Returns:
        The entries flattened in order

    Raises:
        FixtureError: If the entry count or a row width is wrong
    """
    values = [int(v) for row in rows for v in row]
    if len(values) != APPENDIX1_ENTRIES:
        raise FixtureError(f"Appendix 1 must have {APPENDIX1_ENTRIES} entries, found {len(values)}")
    for number, row in enumerate(rows[:-1], start=1):
        if len(row) != APPENDIX1_COLUMNS:
            raise FixtureError(f"Appendix 1 row {number} has {len(row)} entries, expected {APPENDIX1_COLUMNS}")
    if not 0 < len(rows[-1]) <= APPENDIX1_COLUMNS:
        raise FixtureError(f"Appendix 1 last row has {len(rows[-1])} entries")
    return values


def validate_fixture_frame(df: pd.DataFrame, columns: List[str], name: str) -> pd.DataFrame:
    """
    Validate a fixture table: expected columns, non-empty, n coprime to 6

    Raises:
        FixtureError: If the table is malformed
    """
    if df.empty:
        raise FixtureError(f"{name} is empty")

    if list(df.columns) != columns:
        raise FixtureError(f"{name} columns must be {columns}, found {list(df.columns)}")

    if df["n"].isna().any():
        raise FixtureError(f"{name} has rows without n")

    n_values = df["n"].astype(int)
    bad = n_values[(n_values % 2 == 0) | (n_values % 3 == 0)]
    if not bad.empty:
        raise FixtureError(f"{name} rows must have n coprime to 6, found {bad.tolist()[:5]}")

    if n_values.duplicated().any():
        raise FixtureError(f"{name} repeats n = {n_values[n_values.duplicated()].tolist()}")

    if "quarantine" in df.columns:
        reasons = set(df["quarantine"].dropna()) - {""}
        unknown = reasons - QUARANTINE_REASONS
        if unknown:
            raise FixtureError(f"{name} has unknown quarantine reasons {sorted(unknown)}")

    return df

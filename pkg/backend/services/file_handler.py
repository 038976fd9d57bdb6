"""
File handling service for shipped fixtures and command outputs
"""

import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from config.settings import settings
from ..core.exactalg import Scalar, TowerElement
from ..utils.exceptions import FixtureError
from ..utils.helpers import calculate_file_hash
from ..utils.validators import (
    APPENDIX2_COLUMNS,
    APPENDIX3_COLUMNS,
    validate_appendix1,
    validate_fixture_frame,
)

logger = logging.getLogger(__name__)

APPENDIX1_FILE = "appendix1.txt"
APPENDIX2_FILE = "appendix2.csv"
APPENDIX3_FILE = "appendix3.csv"
MANIFEST_FILE = "MANIFEST"
FIXTURE_FILES = (APPENDIX1_FILE, APPENDIX2_FILE, APPENDIX3_FILE)

NOT_COMPUTED = "*"

_TOKEN_PATTERNS = [
    (re.compile(r"^(-?\d+)$"), "integer"),
    (re.compile(r"^(-?\d+)t$"), "t"),
    (re.compile(r"^(-?\d+)i$"), "i"),
    (re.compile(r"^(-?\d+)\*sqrt6\*t$"), "sqrt6_t"),
    (re.compile(r"^(-?\d+)\*sqrt6$"), "sqrt6"),
    (re.compile(r"^(-?\d+)/sqrt6$"), "over_sqrt6"),
]


def parse_fixture_token(token: str, t: Optional[TowerElement] = None) -> Optional[Scalar]:
    """
    Parse one Appendix 3 entry.

    Args:
        token: ASCII entry such as 7, -2*sqrt6*t, 4/sqrt6, 7t, -15i or *
        t: The branch scale; needed only for entries carrying a t

    Returns:
        The value, or None for "*" (an entry that cancels and was not computed)

    Raises:
        FixtureError: If the token is malformed
    """
    token = token.strip()
    if token == NOT_COMPUTED:
        return None
    for pattern, kind in _TOKEN_PATTERNS:
        match = pattern.match(token)
        if not match:
            continue
        n = int(match.group(1))
        if kind == "integer":
            return n
        if kind == "i":
            return n * TowerElement.i()
        if kind == "sqrt6":
            return n * TowerElement.sqrt6()
        if kind == "over_sqrt6":
            return n / TowerElement.sqrt6()
        if t is None:
            raise FixtureError(f"Entry {token!r} needs the branch scale t")
        if kind == "t":
            return n * t
        return n * TowerElement.sqrt6() * t
    raise FixtureError(f"Malformed fixture entry {token!r}")


def quarantined_rows(table: pd.DataFrame) -> Dict[int, str]:
    """n -> reason for every row with a non-empty quarantine flag"""
    rows = table[table["quarantine"] != ""]
    return {int(n): reason for n, reason in zip(rows["n"], rows["quarantine"])}


def _warn_quarantined(table: pd.DataFrame, name: str) -> None:
    for n, reason in quarantined_rows(table).items():
        logger.warning(f"{name}: row n={n} quarantined ({reason})")


@dataclass
class FixtureSet:
    """The three appendix tables as shipped with the package"""
    appendix1: List[int]
    appendix2: pd.DataFrame
    appendix3: pd.DataFrame
    directory: Path

    @property
    def quarantined(self) -> Dict[str, Dict[int, str]]:
        """Quarantined rows per table, n -> reason"""
        return {
            "appendix2": quarantined_rows(self.appendix2),
            "appendix3": quarantined_rows(self.appendix3),
        }


class FileHandler:
    """Handles fixture ingestion and output files"""

    def __init__(self, fixtures_dir: Optional[Path] = None, output_dir: Optional[Path] = None):
        self.fixtures_dir = Path(fixtures_dir or settings.FIXTURES_DIR)
        self.output_dir = Path(output_dir or settings.OUTPUT_DIR)

    def _fixture_path(self, name: str) -> Path:
        path = self.fixtures_dir / name
        if not path.is_file():
            raise FixtureError(f"Fixture file {path} is missing")
        return path

    def load_manifest(self) -> Dict[str, str]:
        """Read the sha256 manifest ("<hash>  <file>" per line)"""
        manifest = {}
        for line in self._fixture_path(MANIFEST_FILE).read_text().splitlines():
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FixtureError(f"Malformed manifest line: {line!r}")
            digest, name = parts
            manifest[name.lstrip("*")] = digest
        return manifest

    def verify_checksums(self) -> None:
        """
        Raises:
            FixtureError: If a fixture is missing from the manifest or its hash differs
        """
        manifest = self.load_manifest()
        for name in FIXTURE_FILES:
            if name not in manifest:
                raise FixtureError(f"{name} is not listed in the manifest")
            actual = calculate_file_hash(str(self._fixture_path(name)))
            if actual != manifest[name]:
                raise FixtureError(f"Checksum mismatch for {name}: expected {manifest[name]}, got {actual}")
        logger.debug(f"Fixture checksums verified in {self.fixtures_dir}")

    def load_appendix1(self) -> List[int]:
        """First 1000 coefficients b(1..1000) of prod (1 - q^n)^2"""
        text = self._fixture_path(APPENDIX1_FILE).read_text()
        try:
            rows = [[int(token) for token in line.split()] for line in text.splitlines() if line.strip()]
        except ValueError as e:
            raise FixtureError(f"{APPENDIX1_FILE} has a non-integer entry: {e}")
        return validate_appendix1(rows)

    def _read_csv(self, name: str, **kwargs) -> pd.DataFrame:
        try:
            return pd.read_csv(self._fixture_path(name), **kwargs)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
            raise FixtureError(f"Failed to parse {name}: {e}")

    def load_appendix2(self) -> pd.DataFrame:
        """Rows (n, a, b, c, quarantine) for case 4"""
        df = self._read_csv(APPENDIX2_FILE, dtype=str, keep_default_na=False)
        df = validate_fixture_frame(df, APPENDIX2_COLUMNS, APPENDIX2_FILE)
        try:
            df[["n", "a", "b", "c"]] = df[["n", "a", "b", "c"]].astype(int)
        except ValueError as e:
            raise FixtureError(f"{APPENDIX2_FILE} has a non-integer entry: {e}")
        _warn_quarantined(df, APPENDIX2_FILE)
        return df

    def load_appendix3(self) -> pd.DataFrame:
        """Rows (n, a, b1, b2, c1..c4, quarantine) for case 5, entries kept as strings"""
        df = self._read_csv(APPENDIX3_FILE, dtype=str, keep_default_na=False)
        df = validate_fixture_frame(df, APPENDIX3_COLUMNS, APPENDIX3_FILE)
        df["n"] = df["n"].astype(int)
        df["a"] = df["a"].astype(int)
        _warn_quarantined(df, APPENDIX3_FILE)
        return df

    def load_all(self, verify: bool = True) -> FixtureSet:
        if verify:
            self.verify_checksums()
        fixtures = FixtureSet(
            appendix1=self.load_appendix1(),
            appendix2=self.load_appendix2(),
            appendix3=self.load_appendix3(),
            directory=self.fixtures_dir,
        )
        logger.info(f"Loaded fixtures from {self.fixtures_dir}")
        return fixtures

    def output_path(self, name: str) -> Path:
        """
        Resolve an output file name inside the output directory.

        Raises:
            FixtureError: If the name escapes the output directory
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        root = self.output_dir.resolve()
        path = (root / name).resolve()
        if root not in path.parents:
            raise FixtureError(f"Output {name} is outside {root}")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self.output_path(name)
        path.write_text(json.dumps(payload, indent=2))
        logger.info(f"Wrote {path}")
        return path

    def write_dataframe(self, name: str, df: pd.DataFrame) -> Path:
        path = self.output_path(name)
        df.to_csv(path, index=False)
        logger.info(f"Wrote {len(df)} rows to {path}")
        return path

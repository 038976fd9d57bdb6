"""
Pydantic models for machine-readable command output
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..core.qseries import QSeries, series_from_json, series_to_json


# Series
class SeriesModel(BaseModel):
    """Truncated q-series with coefficients serialized as exact strings"""
    valuation: int = Field(..., ge=0)
    truncation: int = Field(..., ge=1)
    ring: str
    coeffs: List[str]

    @field_validator("coeffs")
    @classmethod
    def validate_coeffs(cls, v, info):
        valuation = info.data.get("valuation")
        truncation = info.data.get("truncation")
        if valuation is not None and truncation is not None and len(v) != truncation - valuation:
            raise ValueError(f"Expected {truncation - valuation} coefficients, got {len(v)}")
        return v

    @classmethod
    def from_series(cls, f: QSeries) -> "SeriesModel":
        return cls(**series_to_json(f))

    def to_series(self) -> QSeries:
        return series_from_json(self.model_dump())


class ExpandResponse(BaseModel):
    """expand command output"""
    success: bool = True
    spec: str
    level: Optional[int] = None
    weight: str
    terms: int
    series: SeriesModel
    timestamp: str


# Scan
class VerdictModel(BaseModel):
    """Classification of one b with its evidence"""
    b: int = Field(..., ge=1)
    lacunary: bool
    label: str
    mode: Literal["adaptive", "full"]
    evidence: Dict[str, Any]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("evidence")
    @classmethod
    def validate_evidence(cls, v):
        if v.get("kind") not in ("Witness", "HeckeVanishing", "Excluded"):
            raise ValueError(f"Unknown evidence kind: {v.get('kind')}")
        return v


class ScanErrorRecord(BaseModel):
    """A b whose scan raised instead of producing a verdict"""
    b: int
    error: str
    error_type: str


class ScanResponse(BaseModel):
    """scan command output"""
    success: bool = True
    run_id: str
    timestamp: str
    b_max: int = Field(..., ge=0)
    alternate_prime: Optional[int] = None
    mode: Literal["adaptive", "full"]
    verdicts: List[VerdictModel]
    errors: List[ScanErrorRecord] = Field(default_factory=list)
    lacunary: List[int]
    summary: str
    processing_time_seconds: float


class WitnessSearchResponse(BaseModel):
    """Table-driven witness search over a range of b"""
    success: bool = True
    b_min: int
    b_max: int
    found: Dict[int, Dict[str, Any]]
    missing: List[int]
    inconclusive: List[int]
    timestamp: str


# Verification
class FixtureComparison(BaseModel):
    """Row agreement between a computed combination and a shipped table"""
    table: str
    rows: int
    matched: int
    mismatched: List[int] = Field(default_factory=list)
    quarantined: Dict[int, str] = Field(default_factory=dict)
    details: Dict[int, str] = Field(default_factory=dict)


class VerifyResponse(BaseModel):
    """verify command output"""
    success: bool
    case: int = Field(..., ge=1, le=5)
    target: str
    combination: str
    level: int
    bound: int
    equal: bool
    checked: int
    first_mismatch: Optional[int] = None
    expected: Optional[str] = None
    actual: Optional[str] = None
    fixture: Optional[FixtureComparison] = None
    timestamp: str


# Density
class DensityPointModel(BaseModel):
    x: int = Field(..., ge=1)
    zeros: int = Field(..., ge=0)
    total: int = Field(..., ge=0)
    density: str
    decimal: str


class DensityResponse(BaseModel):
    """density command output"""
    success: bool = True
    b: int
    mode: Literal["all", "support_progression"]
    points: List[DensityPointModel]
    csv_path: Optional[str] = None
    timestamp: str


# Hecke and Sturm
class SturmResponse(BaseModel):
    success: bool = True
    weight: int
    level: int
    index: int
    bound: int
    timestamp: str


class HeckeResponse(BaseModel):
    """T_p applied to f_b(12z)"""
    success: bool = True
    b: int
    prime: int
    level: int
    input_truncation: int
    output_truncation: int
    sturm_bound: int
    vanishes_through_bound: Optional[bool] = None
    series: SeriesModel
    timestamp: str


class ErrorResponse(BaseModel):
    """Error response"""
    success: bool = False
    error: str
    error_type: str
    exit_code: int
    timestamp: str

"""
Response builder service for standardized command output
"""

from datetime import datetime
from typing import Any, Dict, Iterable, List, Optional

from ..api.models import (
    DensityPointModel,
    DensityResponse,
    ErrorResponse,
    ExpandResponse,
    FixtureComparison,
    HeckeResponse,
    ScanResponse,
    SeriesModel,
    SturmResponse,
    VerifyResponse,
    WitnessSearchResponse,
)
from ..core.cmforms import Combination, IdentityReport
from ..core.lacunarity import WitnessSearchResult
from ..core.qseries import EtaQuotient, QSeries, format_eta_product
from ..utils.base_results import DensityPoint
from ..utils.exceptions import EtaLacError
from ..utils.helpers import format_decimal, format_exact


def format_lacunary_summary(values: Iterable[int]) -> str:
    """lacunary: {1,2,3,4,16}"""
    return "lacunary: {" + ",".join(str(b) for b in sorted(values)) + "}"


class ResponseBuilder:
    """Builds standardized command responses"""

    @staticmethod
    def _timestamp() -> str:
        return datetime.now().isoformat()

    def build_expand_response(self, spec: EtaQuotient, terms: int, series: QSeries) -> Dict[str, Any]:
        response = ExpandResponse(
            spec=format_eta_product(spec),
            level=spec.level,
            weight=format_exact(spec.weight),
            terms=terms,
            series=SeriesModel.from_series(series),
            timestamp=self._timestamp(),
        )
        return response.model_dump()

    def build_scan_response(self,
                            run_id: str,
                            b_max: int,
                            alternate_prime: Optional[int],
                            mode: str,
                            records: List[Dict[str, Any]],
                            processing_time: float) -> Dict[str, Any]:
        """
        Build the scan report

        Args:
            run_id: Scan run ID
            b_max: Largest b scanned
            alternate_prime: Hecke prime used for b divisible by 23, if any
            mode: Scan mode
            records: Per-b records from the pipeline, each a verdict or an error
            processing_time: Total processing time

        Returns:
            Scan report with verdicts sorted by b and the lacunary summary line
        """
        verdicts = sorted((r["verdict"] for r in records if r.get("success")), key=lambda v: v["b"])
        errors = sorted(
            ({"b": r["b"], "error": r["error"], "error_type": r["error_type"]} for r in records if not r.get("success")),
            key=lambda e: e["b"],
        )
        lacunary = [v["b"] for v in verdicts if v["lacunary"]]
        response = ScanResponse(
            run_id=run_id,
            timestamp=self._timestamp(),
            b_max=b_max,
            alternate_prime=alternate_prime,
            mode=mode,
            verdicts=verdicts,
            errors=errors,
            lacunary=lacunary,
            summary=format_lacunary_summary(lacunary),
            processing_time_seconds=round(processing_time, 3),
        )
        return response.model_dump()

    def build_witness_response(self, b_min: int, b_max: int, results: List[WitnessSearchResult]) -> Dict[str, Any]:
        found = {
            r.b: {"n": r.witness.n, "value": r.witness.value, "table_value": r.witness.table_value}
            for r in results if r.found
        }
        response = WitnessSearchResponse(
            b_min=b_min,
            b_max=b_max,
            found=found,
            missing=[r.b for r in results if r.status == "none"],
            inconclusive=[r.b for r in results if r.status == "inconclusive"],
            timestamp=self._timestamp(),
        )
        return response.model_dump()

    def build_verify_response(self,
                              case: int,
                              combo: Combination,
                              report: IdentityReport,
                              fixture: Optional[FixtureComparison] = None) -> Dict[str, Any]:
        fixture_ok = fixture is None or not fixture.mismatched
        response = VerifyResponse(
            success=report.equal and fixture_ok,
            case=case,
            target=report.details.get("target", combo.target.describe()),
            combination=report.details.get("combination", combo.describe()),
            level=combo.level,
            bound=report.bound,
            equal=report.equal,
            checked=report.checked,
            first_mismatch=report.first_mismatch,
            expected=report.expected,
            actual=report.actual,
            fixture=fixture,
            timestamp=self._timestamp(),
        )
        return response.model_dump()

    def build_density_response(self, b: int, mode: str, points: List[DensityPoint],
                               csv_path: Optional[str] = None) -> Dict[str, Any]:
        response = DensityResponse(
            b=b,
            mode=mode,
            points=[
                DensityPointModel(
                    x=p.x,
                    zeros=p.zeros,
                    total=p.total,
                    density=format_exact(p.density),
                    decimal=format_decimal(p.density),
                )
                for p in points
            ],
            csv_path=csv_path,
            timestamp=self._timestamp(),
        )
        return response.model_dump()

    def build_sturm_response(self, weight: int, level: int, index: int, bound: int) -> Dict[str, Any]:
        return SturmResponse(weight=weight, level=level, index=index, bound=bound,
                             timestamp=self._timestamp()).model_dump()

    def build_hecke_response(self, b: int, prime: int, level: int, input_truncation: int,
                             image: QSeries, bound: int) -> Dict[str, Any]:
        vanishes = None
        if image.truncation > bound:
            first = image.first_nonzero()
            vanishes = first is None or first > bound
        response = HeckeResponse(
            b=b,
            prime=prime,
            level=level,
            input_truncation=input_truncation,
            output_truncation=image.truncation,
            sturm_bound=bound,
            vanishes_through_bound=vanishes,
            series=SeriesModel.from_series(image),
            timestamp=self._timestamp(),
        )
        return response.model_dump()

    def build_error_response(self, error: Exception) -> Dict[str, Any]:
        """
        Build error response

        Args:
            error: The exception that ended the command

        Returns:
            Error response carrying the exit code of the error kind
        """
        exit_code = error.exit_code if isinstance(error, EtaLacError) else 1
        response = ErrorResponse(
            error=str(error),
            error_type=type(error).__name__,
            exit_code=exit_code,
            timestamp=self._timestamp(),
        )
        return response.model_dump()

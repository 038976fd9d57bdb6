"""
Scan pipeline orchestrator - fans the per-b lacunarity tests out to workers
"""

import asyncio
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Union

from tqdm import tqdm

from config.settings import settings
from ..core.lacunarity import eligible, scan_one, witness_search
from ..utils.base_results import CoefficientSource
from ..utils.helpers import format_duration, generate_run_id, merge_settings
from ..utils.validators import validate_scan_settings
from .response_builder import ResponseBuilder

logger = logging.getLogger(__name__)


def _scan_task(b: int, mode: str, start_truncation: Optional[int], alternate_prime: Optional[int]) -> Dict[str, Any]:
    """Run one b; failures become error records so the batch keeps going"""
    try:
        kwargs = {"start_truncation": start_truncation} if start_truncation else {}
        verdict = scan_one(b, mode, alternate_prime=alternate_prime, **kwargs)
        return {"success": True, "b": b, "verdict": verdict.to_dict()}
    except Exception as e:
        return {"success": False, "b": b, "error": str(e), "error_type": type(e).__name__}


class ScanPipeline:
    """Main scan orchestrator"""

    def __init__(self, jobs: Optional[int] = None, progress: Optional[bool] = None):
        self.jobs = jobs or settings.JOBS
        self.progress = settings.PROGRESS if progress is None else progress
        self.response_builder = ResponseBuilder()

    def _executor(self) -> Executor:
        if self.jobs > 1:
            return ProcessPoolExecutor(max_workers=self.jobs)
        return ThreadPoolExecutor(max_workers=1)

    async def run_scan(self,
                       b_max: int,
                       mode: str = "adaptive",
                       alternate_prime: Optional[int] = None,
                       start_truncation: Optional[int] = None) -> Dict[str, Any]:
        """
        Classify every b in 1 .. b_max

        Args:
            b_max: Largest b to scan
            mode: Scan mode, "adaptive" or "full"
            alternate_prime: Hecke prime used for b divisible by 23 (otherwise excluded)
            start_truncation: First truncation of the adaptive ladder

        Returns:
            Scan report with one verdict or error record per b
        """
        run_id = generate_run_id()
        start_time = time.time()

        base_settings = settings.get_scan_defaults(mode)
        merged = merge_settings(base_settings, {
            "b_max": b_max,
            "alternate_prime": alternate_prime,
            "start_truncation": start_truncation,
            "jobs": self.jobs,
        })
        validated = validate_scan_settings(merged, settings.B_LIMIT)
        logger.info(f"Scan {run_id[:8]} started: b <= {validated['b_max']}, mode {mode}, "
                    f"alternate prime {validated['alternate_prime']}, {self.jobs} job(s)")

        records = await self._run_tasks(validated)

        processing_time = time.time() - start_time
        response = self.response_builder.build_scan_response(
            run_id=run_id,
            b_max=validated["b_max"],
            alternate_prime=validated["alternate_prime"],
            mode=mode,
            records=records,
            processing_time=processing_time,
        )
        logger.info(f"Scan {run_id[:8]} finished in {format_duration(processing_time)}: {response['summary']}")
        if response["errors"]:
            logger.warning(f"Scan {run_id[:8]}: {len(response['errors'])} b failed")
        return response

    async def _run_tasks(self, validated: Dict[str, Any]) -> List[Dict[str, Any]]:
        b_values = range(1, validated["b_max"] + 1)
        if not b_values:
            return []

        loop = asyncio.get_running_loop()
        records = []
        with self._executor() as executor:
            futures = [
                loop.run_in_executor(
                    executor,
                    _scan_task,
                    b,
                    validated["mode"],
                    validated["start_truncation"],
                    validated["alternate_prime"],
                )
                for b in b_values
            ]
            with tqdm(total=len(futures), desc="scan", unit="b", disable=not self.progress) as bar:
                for future in asyncio.as_completed(futures):
                    record = await future
                    records.append(record)
                    if record["success"]:
                        logger.debug(f"b={record['b']}: {record['verdict']['label']}")
                    else:
                        logger.error(f"b={record['b']} failed: {record['error']}")
                    bar.update(1)
        return records

    async def run_witness_search(self,
                                 b_min: int,
                                 b_max: int,
                                 table: Union[CoefficientSource, Sequence[int]]) -> Dict[str, Any]:
        """Table-driven witness search for b_min .. b_max, ineligible b skipped"""
        loop = asyncio.get_running_loop()
        eligible_b = [b for b in range(b_min, b_max + 1) if eligible(b)]
        results = []
        for b in tqdm(eligible_b, desc="witness", unit="b", disable=not self.progress):
            results.append(await loop.run_in_executor(None, witness_search, b, table))
        response = self.response_builder.build_witness_response(b_min, b_max, results)
        logger.info(f"Witness search {b_min}..{b_max}: {len(response['found'])} found, "
                    f"{len(response['missing'])} missing, {len(response['inconclusive'])} inconclusive")
        return response

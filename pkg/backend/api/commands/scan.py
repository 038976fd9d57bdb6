"""
scan command: lacunarity verdicts for b = 1 .. b_max, or the table-driven
witness search for large b
"""

import asyncio
import logging
from typing import Any, Dict, Optional

from ...services.pipeline import ScanPipeline
from ...utils.base_results import TableSource
from ...utils.exceptions import VerificationMismatch
from .base import CommandContext, CommandResult

logger = logging.getLogger(__name__)


def _evidence_text(verdict: Dict[str, Any]) -> str:
    evidence = verdict["evidence"]
    kind = evidence["kind"]
    if kind == "Witness":
        return f"T_{evidence['prime']} coefficient {evidence['n']} = {evidence['value']}"
    if kind == "HeckeVanishing":
        return f"T_{evidence['prime']} vanishes through {evidence['bound']} (truncation {evidence['truncation']})"
    return evidence["reason"]


def _scan_text(payload: Dict[str, Any]) -> str:
    lines = [f"b={v['b']:>4}  {v['label']:<26} {_evidence_text(v)}" for v in payload["verdicts"]]
    lines.extend(f"b={e['b']:>4}  error: {e['error']}" for e in payload["errors"])
    lines.append(payload["summary"])
    return "\n".join(lines)


def _witness_text(payload: Dict[str, Any]) -> str:
    lines = [f"b={b:>4}  n={w['n']}  coefficient {w['value']}" for b, w in sorted(payload["found"].items())]
    lines.append(f"missing: {payload['missing']}")
    lines.append(f"inconclusive: {payload['inconclusive']}")
    return "\n".join(lines)


def handle_scan(b_max: int,
                context: CommandContext,
                mode: str = "adaptive",
                alternate_prime: Optional[int] = None,
                start_truncation: Optional[int] = None,
                from_table: bool = False,
                b_min: int = 176) -> CommandResult:
    """
    Run the scan through the async pipeline.

    With from_table the Appendix 1 coefficients drive a witness search over
    b_min .. b_max instead of the Hecke test.
    """
    pipeline = ScanPipeline(jobs=context.jobs, progress=context.progress)
    if from_table:
        table = TableSource(context.file_handler().load_appendix1())
        payload = asyncio.run(pipeline.run_witness_search(b_min, b_max, table))
        render = _witness_text
        exit_code = 0 if not payload["missing"] and not payload["inconclusive"] else VerificationMismatch.exit_code
    else:
        payload = asyncio.run(pipeline.run_scan(
            b_max, mode=mode, alternate_prime=alternate_prime, start_truncation=start_truncation
        ))
        render = _scan_text
        exit_code = 0 if not payload["errors"] else 1
    if context.output_name:
        payload["output_path"] = str(context.file_handler().write_json(context.output_name, payload))
    return CommandResult(payload, render, exit_code)

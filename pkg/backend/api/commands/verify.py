"""
verify command: Sturm-bound identity check for cases 1-5 plus fixture rows
"""

import logging
from typing import Any, Dict, Optional

from ...services.response_builder import ResponseBuilder
from ...services.verification import verify_with_fixtures
from ...utils.exceptions import VerificationMismatch
from ...utils.validators import validate_case
from .base import CommandContext, CommandResult

logger = logging.getLogger(__name__)
response_builder = ResponseBuilder()


def _verify_text(payload: Dict[str, Any]) -> str:
    lines = [f"case {payload['case']}: {payload['target']} = {payload['combination']}"]
    if payload["equal"]:
        lines.append(f"equal through q^{payload['bound']} (level {payload['level']})")
    else:
        lines.append(f"MISMATCH at q^{payload['first_mismatch']}: "
                     f"expected {payload['expected']}, got {payload['actual']}")
    fixture = payload.get("fixture")
    if fixture:
        lines.append(f"{fixture['table']}: {fixture['matched']}/{fixture['rows']} rows match")
        for n, reason in sorted(fixture["quarantined"].items()):
            lines.append(f"  quarantined n={n}: {reason}")
        for n in fixture["mismatched"]:
            lines.append(f"  mismatch n={n}: {fixture['details'].get(n, '')}")
    return "\n".join(lines)


def handle_verify(case: int, context: CommandContext, bound: Optional[int] = None) -> CommandResult:
    """Exit code 5 when the identity or a non-quarantined fixture row disagrees"""
    validate_case(case)
    fixtures = context.file_handler().load_all() if case in (4, 5) else None
    combo, report, comparison = verify_with_fixtures(case, fixtures, bound)
    payload = response_builder.build_verify_response(case, combo, report, comparison)
    if payload["success"]:
        logger.info(f"Case {case} verified through q^{report.bound}")
    else:
        logger.error(f"Case {case} failed verification")
    if context.output_name:
        payload["output_path"] = str(context.file_handler().write_json(context.output_name, payload))
    return CommandResult(payload, _verify_text, 0 if payload["success"] else VerificationMismatch.exit_code)

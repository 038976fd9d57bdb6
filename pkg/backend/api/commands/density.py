"""
density command: exact zero density of f_b(12z) at one X or along a ladder
"""

import logging
from typing import Any, Dict, Optional

import pandas as pd

from config.settings import settings
from ...core.lacunarity import density_curve, density_ladder
from ...services.response_builder import ResponseBuilder
from ...utils.validators import validate_density_request, validate_positive_int
from .base import CommandContext, CommandResult

logger = logging.getLogger(__name__)
response_builder = ResponseBuilder()


def _density_text(payload: Dict[str, Any]) -> str:
    lines = [f"f_{payload['b']}(12z), {payload['mode']}"]
    for p in payload["points"]:
        lines.append(f"X={p['x']:>8}  zeros {p['zeros']}/{p['total']}  density {p['density']}  ~ {p['decimal']}")
    if payload.get("csv_path"):
        lines.append(f"written to {payload['csv_path']}")
    return "\n".join(lines)


def handle_density(b: int, x: int, context: CommandContext,
                   mode: Optional[str] = None, csv_name: Optional[str] = None) -> CommandResult:
    """
    Zero density of f_b(12z) among indices 1 .. X.

    With csv_name the density is taken along the 1, 2, 5 ladder up to X and
    written as (x, zeros, total, density) rows inside the output directory.
    """
    validate_positive_int(b, "b")
    validate_density_request(x, settings.DENSITY_X_MAX)
    defaults = settings.get_density_defaults()
    mode = mode or defaults["mode"]
    xs = density_ladder(x, defaults["ladder_start"]) if csv_name else [x]
    if xs[-1] != x:
        xs.append(x)
    points = density_curve(b, xs, mode)
    csv_path = None
    if csv_name:
        df = pd.DataFrame({
            "x": [p.x for p in points],
            "zeros": [p.zeros for p in points],
            "total": [p.total for p in points],
            "density": [float(p.density) for p in points],
        })
        csv_path = str(context.file_handler().write_dataframe(csv_name, df))
    payload = response_builder.build_density_response(b, mode, points, csv_path)
    logger.info(f"Density of f_{b}(12z) at X={x}: {payload['points'][-1]['density']}")
    return CommandResult(payload, _density_text)

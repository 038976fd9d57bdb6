"""
expand, sturm and hecke commands
"""

import logging
from typing import Any, Dict

from ...core.heckeops import SpaceDescriptor, gamma0_index, hecke_tp, sturm_bound
from ...core.lacunarity import level_of
from ...core.qseries import QSeries, eta_quotient_expand, f_b_spec, parse_eta_product, series_to_text
from ...services.response_builder import ResponseBuilder
from ...utils.validators import validate_positive_int
from ..models import SeriesModel
from .base import CommandContext, CommandResult

logger = logging.getLogger(__name__)
response_builder = ResponseBuilder()


def _series_text(payload: Dict[str, Any]) -> str:
    series: QSeries = SeriesModel(**payload["series"]).to_series()
    body = series_to_text(series)
    header = f"# valuation {series.valuation}, known below q^{series.truncation}, ring {series.ring}"
    return header + ("\n" + body if body else "")


def handle_expand(spec_text: str, terms: int, context: CommandContext) -> CommandResult:
    """
    Expand an eta product given as "eta(<m>z)^<r> * ..." to `terms` coefficients
    starting at its valuation.
    """
    validate_positive_int(terms, "terms")
    spec = parse_eta_product(spec_text)
    # a non-integral prefactor is rejected inside the expansion
    valuation = max(int(spec.s), 0)
    series = eta_quotient_expand(spec, valuation + terms)
    logger.info(f"Expanded {spec.describe()}: {terms} terms from q^{series.valuation}")
    payload = response_builder.build_expand_response(spec, terms, series)
    return CommandResult(payload, _series_text)


def _sturm_text(payload: Dict[str, Any]) -> str:
    return (f"sturm_bound(k={payload['weight']}, N={payload['level']}) = {payload['bound']}"
            f"  [Gamma_0(N) index {payload['index']}]")


def handle_sturm(weight: int, level: int, context: CommandContext) -> CommandResult:
    bound = sturm_bound(weight, level)
    payload = response_builder.build_sturm_response(weight, level, gamma0_index(level), bound)
    return CommandResult(payload, _sturm_text)


def _hecke_text(payload: Dict[str, Any]) -> str:
    lines = [f"T_{payload['prime']} f_{payload['b']}(12z), level {payload['level']}, "
             f"known below q^{payload['output_truncation']}"]
    if payload["vanishes_through_bound"] is not None:
        verdict = "vanishes" if payload["vanishes_through_bound"] else "does not vanish"
        lines.append(f"{verdict} through the Sturm bound {payload['sturm_bound']}")
    body = series_to_text(SeriesModel(**payload["series"]).to_series())
    if body:
        lines.append(body)
    return "\n".join(lines)


def handle_hecke(b: int, prime: int, terms: int, context: CommandContext) -> CommandResult:
    """T_p of f_b(12z), known through `terms` output coefficients"""
    validate_positive_int(b, "b")
    validate_positive_int(terms, "terms")
    level = level_of(b)
    input_truncation = prime * terms
    series = eta_quotient_expand(f_b_spec(b), input_truncation)
    image = hecke_tp(series, prime, SpaceDescriptor(2, level))
    payload = response_builder.build_hecke_response(
        b, prime, level, series.truncation, image, sturm_bound(2, level)
    )
    return CommandResult(payload, _hecke_text)

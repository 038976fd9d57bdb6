"""
Core computation modules for the eta-product lacunarity toolkit.
"""

from .exactalg import QuadElement, TowerElement, format_scalar, parse_scalar
from .qseries import QSeries, EtaQuotient, eta_factor, eta_quotient_expand, f_b_spec, parse_eta_product, partition_numbers
from .heckeops import SpaceDescriptor, hecke_tp, kronecker, sturm_bound, eta_modularity_check
from .quadideals import QuadField, QuadIdeal, get_field, ideals_of_norm, classify, is_coprime, ideal_count_oracle, is_inert
from .heckechars import CharacterSpec, create_character, primary_representative, exponents, evaluate, dirichlet_omega
from .cmforms import CMFormSpec, Combination, create_case_combination, cm_expansion, combine, verify_identity, coefficient_via_multiplicativity
from .lacunarity import eligible, candidate_cm_fields, witness_search, hecke_vanishing_test, full_scan, zero_density

__all__ = [
    "QuadElement",
    "TowerElement",
    "format_scalar",
    "parse_scalar",
    "QSeries",
    "EtaQuotient",
    "eta_factor",
    "eta_quotient_expand",
    "f_b_spec",
    "parse_eta_product",
    "partition_numbers",
    "SpaceDescriptor",
    "hecke_tp",
    "kronecker",
    "sturm_bound",
    "eta_modularity_check",
    "QuadField",
    "QuadIdeal",
    "get_field",
    "ideals_of_norm",
    "classify",
    "is_coprime",
    "ideal_count_oracle",
    "is_inert",
    "CharacterSpec",
    "create_character",
    "primary_representative",
    "exponents",
    "evaluate",
    "dirichlet_omega",
    "CMFormSpec",
    "Combination",
    "create_case_combination",
    "cm_expansion",
    "combine",
    "verify_identity",
    "coefficient_via_multiplicativity",
    "eligible",
    "candidate_cm_fields",
    "witness_search",
    "hecke_vanishing_test",
    "full_scan",
    "zero_density"
]

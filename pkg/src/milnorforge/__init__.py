"""milnorforge: exact symbol calculus for Milnor K-theory at desk scale."""

__version__ = "0.1.0"

from .arith import (
    FFElement,
    FiniteFieldCtx,
    LaurentSeries,
    LocalFieldCtx,
    PadicNumber,
    Poly,
    ff_ctx,
    ff_ctx_q,
    hensel_lift,
    laurent_ctx,
    padic_ctx,
    poly_factor,
    principal_unit_root,
    teichmuller,
    unit_decompose,
)
from .bass_tate import (
    bt_section,
    functoriality_check,
    k_equal,
    norm,
    projection_formula_check,
    reciprocity_check,
    residue_vector,
)
from .localk import (
    DivisibilityCertificate,
    divisibility_witness,
    generator_form,
    hilbert,
    lift_mod_m,
    parse_certificate,
    qf_oracle,
    reduce_mod_m,
    serialize_certificate,
    tame,
    verify_certificate,
)
from .ratfunc import Place, RatFuncCtx, support, tame_at
from .rational_ring import (
    MultiPoly,
    RationalRingElem,
    base_change_roundtrip,
    delta_kernel_check,
    is_unit,
    residue_map,
    s_member,
)
from .snf import AbGroupPresentation, snf
from .symbols import MilnorClass, ff_kgroup, symbol

__all__ = [
    "AbGroupPresentation",
    "DivisibilityCertificate",
    "FFElement",
    "FiniteFieldCtx",
    "LaurentSeries",
    "LocalFieldCtx",
    "MilnorClass",
    "MultiPoly",
    "PadicNumber",
    "Place",
    "Poly",
    "RatFuncCtx",
    "RationalRingElem",
    "base_change_roundtrip",
    "bt_section",
    "delta_kernel_check",
    "divisibility_witness",
    "ff_ctx",
    "ff_ctx_q",
    "ff_kgroup",
    "functoriality_check",
    "generator_form",
    "hensel_lift",
    "hilbert",
    "is_unit",
    "k_equal",
    "laurent_ctx",
    "lift_mod_m",
    "norm",
    "padic_ctx",
    "parse_certificate",
    "poly_factor",
    "principal_unit_root",
    "projection_formula_check",
    "qf_oracle",
    "reciprocity_check",
    "reduce_mod_m",
    "residue_map",
    "residue_vector",
    "s_member",
    "serialize_certificate",
    "snf",
    "support",
    "symbol",
    "tame",
    "tame_at",
    "teichmuller",
    "unit_decompose",
    "verify_certificate",
]

"""Permutation-trinomial toolkit for f(X) = X^(q^2-q+1) + A X^(q^2) + B X over GF(q^3), q = 2^m."""

__version__ = "0.1.0"

from .gf import ExtElem, FieldTower, get_tower, load_field_spec, tower_from_spec
from .pp import (
    ClassifyRecord,
    TrinomialParams,
    classify_field,
    cond1,
    cond2,
    eval_f,
    is_permutation,
    nontrivial_root,
    prop3_i,
    prop3_ii,
    prop3_witness,
    unit_equation_solutions,
)
from .mpoly import MultiPoly
from .bounds import BoundQuery, lang_weil_applicable, main_bound_holds, minimal_m
from .surface import (
    FactorCandidate,
    GDecomposition,
    SurfaceSystem,
    build_system,
    curve_point_count,
    derive_G,
    factor_candidate_test,
    remark_cond1_factorization,
    verify_claim_table,
    verify_factorization_aqb1,
)

__all__ = [
    "FactorCandidate",
    "GDecomposition",
    "SurfaceSystem",
    "build_system",
    "curve_point_count",
    "derive_G",
    "factor_candidate_test",
    "remark_cond1_factorization",
    "verify_claim_table",
    "verify_factorization_aqb1",
    "ExtElem",
    "FieldTower",
    "get_tower",
    "load_field_spec",
    "tower_from_spec",
    "TrinomialParams",
    "ClassifyRecord",
    "classify_field",
    "cond1",
    "cond2",
    "eval_f",
    "is_permutation",
    "nontrivial_root",
    "prop3_i",
    "prop3_ii",
    "prop3_witness",
    "unit_equation_solutions",
    "MultiPoly",
    "BoundQuery",
    "lang_weil_applicable",
    "main_bound_holds",
    "minimal_m",
]

"""Oriented vertex Turan numbers in the hypercube."""

from .chains import (
    ChainStats,
    LubellValue,
    chain_profile,
    fat_chain_count,
    formula_pk,
    lubell,
    pk_weight_bound,
    total_chain_weight,
    tree_upper_estimate,
)
from .construct import levels_family, residue_levels_family, v2_family, vr_family
from .core import Family, binomial, complement_family, make_family, out_neighbors
from .detect import contains_copy, longest_directed_path, max_out_cover_degree
from .pattern import Pattern, PatternInfo, opposite_pattern, parse_pattern, pattern_info
from .solver import SearchResult, complete_to_maximal, enumerate_copies, exact_exv, export_wcnf

__all__ = [
    "ChainStats", "Family", "LubellValue", "Pattern", "PatternInfo", "SearchResult",
    "binomial", "chain_profile", "complement_family", "complete_to_maximal",
    "contains_copy", "enumerate_copies", "exact_exv", "export_wcnf", "fat_chain_count",
    "formula_pk", "levels_family", "longest_directed_path", "lubell", "make_family",
    "max_out_cover_degree", "opposite_pattern", "out_neighbors", "parse_pattern",
    "pattern_info", "pk_weight_bound", "residue_levels_family", "total_chain_weight",
    "tree_upper_estimate", "v2_family", "vr_family",
]

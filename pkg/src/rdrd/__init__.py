"""Restrained double Roman domination: exact solvers, closed forms, certificates."""
from .audits import StripLayout, audit_columns, bagging_certificate, column_weights
from .catalog import catalog_bounds, catalog_value
from .constructions import combine_strong, construct_certificate
from .graph import FamilySpec, Graph, build_family, graph_stats, is_chordal, parse_graph, serialize_graph
from .labeling import Labeling, Variant, validate, weight
from .products import cardinal_product, corona, strong_product
from .reduction import X3CInstance, build_reduction, cover_to_labeling, labeling_to_cover
from .solver import Problem, SolveResult, brute_force, solve, solve_rdrd_bnb

__all__ = [
    "StripLayout", "audit_columns", "bagging_certificate", "column_weights",
    "catalog_bounds", "catalog_value", "combine_strong", "construct_certificate",
    "FamilySpec", "Graph", "build_family", "graph_stats", "is_chordal", "parse_graph",
    "serialize_graph", "Labeling", "Variant", "validate", "weight", "cardinal_product",
    "corona", "strong_product", "X3CInstance", "build_reduction", "cover_to_labeling",
    "labeling_to_cover", "Problem", "SolveResult", "brute_force", "solve", "solve_rdrd_bnb",
]

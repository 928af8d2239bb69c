"""Flooding times on sparse random graphs of active and passive nodes."""

from .degree_model import (
    DegreeSpec,
    DegreeStats,
    compute_stats,
    condition_diagnostics,
    make_family,
    theoretical_limit,
    validate_spec,
)
from .experiment import ExperimentPlan, convergence_report, run_experiment
from .fpp import WeightedGraph, brute_force_fpp, flooding, sample_weights, scale_parameters, walkable_fpp
from .graph_gen import TypedMultigraph, check_simple, generate_simple, match_halfedges

__version__ = "0.1.0"

__all__ = [
    "DegreeSpec",
    "DegreeStats",
    "ExperimentPlan",
    "TypedMultigraph",
    "WeightedGraph",
    "brute_force_fpp",
    "check_simple",
    "compute_stats",
    "condition_diagnostics",
    "convergence_report",
    "flooding",
    "generate_simple",
    "make_family",
    "match_halfedges",
    "run_experiment",
    "sample_weights",
    "scale_parameters",
    "theoretical_limit",
    "validate_spec",
    "walkable_fpp",
]

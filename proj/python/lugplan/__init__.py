"""Contingent planner with cost-sensitive planning graph heuristics.

Costs come back as fractions.Fraction; cost models are numbered from 1.
"""

from pathlib import Path

from ._lugplan import (
    PlanError,
    Problem,
    ProblemError,
    bench,
    gen_medical,
    gen_rovers,
    graph,
    heuristic_value,
    plan,
    validate,
)

HEURISTICS = ("clug-rp", "lug-rp", "cardinality", "zero")


def load_problem(path):
    """Read a problem JSON file."""
    return Problem.from_json(Path(path).read_text())


__all__ = [
    "HEURISTICS",
    "PlanError",
    "Problem",
    "ProblemError",
    "bench",
    "gen_medical",
    "gen_rovers",
    "graph",
    "heuristic_value",
    "load_problem",
    "plan",
    "validate",
]

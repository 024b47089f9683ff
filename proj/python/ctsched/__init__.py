"""Coupled-task scheduling with exact delays: maximum-lateness solvers."""

from ._core import (
    CapExceeded,
    Instance,
    InvalidInput,
    NotApplicable,
    classify,
    gantt,
    generate,
    lmax,
    oracle_structured,
    oracle_timeline_lmax,
    solve_agreeable,
    solve_disagreeable,
    solve_general_small,
    violations,
)


def solve(instance):
    """Dispatch on the instance class like the CLI's ``--algo auto``."""
    cls = classify(instance)
    if cls in ("agreeable", "both"):
        return solve_agreeable(instance)
    if cls == "disagreeable":
        return solve_disagreeable(instance)
    return solve_general_small(instance)


__all__ = [
    "CapExceeded",
    "Instance",
    "InvalidInput",
    "NotApplicable",
    "classify",
    "gantt",
    "generate",
    "lmax",
    "oracle_structured",
    "oracle_timeline_lmax",
    "solve",
    "solve_agreeable",
    "solve_disagreeable",
    "solve_general_small",
    "violations",
]

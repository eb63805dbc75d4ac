"""Estimate theta and y0 of the quadratic map 1 + theta * y^2 from its binary symbols."""

from ._core import (
    AnchorNotFoundError,
    ConfigError,
    DomainError,
    EdgeOfGridError,
    EscapeError,
    FeasibilityError,
    InversionDomainError,
    IoError,
    StageError,
    SymestError,
    backward_refine,
    cumulative_strength,
    default_config,
    evaluate,
    full,
    inverse_branch,
    iterate,
    point_strength,
    report,
    run_strength_chain,
    run_zooming,
    select_anchor,
    simulate,
    simulate_symbolic,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Limit of the normalised signature norm by bridge Monte Carlo and Sturm-Liouville ODEs."""

from .bridge import (
    BridgePath,
    bridge_exponential_mc,
    closed_form_bridge_exponential,
    r_nD,
    sample_bridge,
    sample_bridges,
)
from .expansion import (
    ExpansionTerms,
    circle_limit_candidates,
    expansion_terms,
    hambly_lyons_limit,
    limit_constant,
    limit_density,
    richardson_limit,
)
from .sturm_liouville import (
    DiscreteMeasure,
    SturmLiouvilleSolution,
    solve_psi_continuous,
    solve_psi_discrete,
)

__all__ = [
    "DiscreteMeasure",
    "SturmLiouvilleSolution",
    "solve_psi_discrete",
    "solve_psi_continuous",
    "BridgePath",
    "sample_bridge",
    "sample_bridges",
    "closed_form_bridge_exponential",
    "bridge_exponential_mc",
    "r_nD",
    "ExpansionTerms",
    "expansion_terms",
    "limit_constant",
    "limit_density",
    "hambly_lyons_limit",
    "circle_limit_candidates",
    "richardson_limit",
]

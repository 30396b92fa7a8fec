"""Continued fractions as Moebius products, cycle geometry and horocycle chains."""

from ._core import (
    CfcyclesError,
    Chain,
    ChainLink,
    ContinuedFraction,
    Multivector,
    __version__,
    build_chain,
    cf_matrix,
    chain_cycles_text,
    convergence_report,
    convergent_floats,
    convergents,
    evaluate_oracle,
    expand_real,
    md_partial_quotients,
    md_partial_quotients_exact,
    render_chain_svg,
    render_section_svg,
    vector_inverse,
    verify_chain,
)

__all__ = [
    "CfcyclesError",
    "Chain",
    "ChainLink",
    "ContinuedFraction",
    "Multivector",
    "__version__",
    "build_chain",
    "cf_matrix",
    "chain_cycles_text",
    "convergence_report",
    "convergent_floats",
    "convergents",
    "evaluate_oracle",
    "expand_real",
    "md_partial_quotients",
    "md_partial_quotients_exact",
    "render_chain_svg",
    "render_section_svg",
    "vector_inverse",
    "verify_chain",
]

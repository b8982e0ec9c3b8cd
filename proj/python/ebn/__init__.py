"""Embedded Bayesian networks: m-separation, tree bases, tree recovery.

Graphs travel as .edg text, joint tables as .jpt text and independence
statements in the I(x ; y | z) syntax; see the C++ library for the grammar.
"""

from ._core import (
    Error,
    canonical_graph,
    canonical_statements,
    canonical_table,
    ci,
    closure,
    conditional_basis,
    derives,
    enumerate_model,
    gk_graph,
    isomorphic,
    m_separated,
    marginal_basis,
    recover,
    sample_tree,
    t_set,
    verify_gk,
    verify_imap,
)

__all__ = [
    "Error",
    "canonical_graph",
    "canonical_statements",
    "canonical_table",
    "ci",
    "closure",
    "conditional_basis",
    "derives",
    "enumerate_model",
    "gk_graph",
    "isomorphic",
    "m_separated",
    "marginal_basis",
    "recover",
    "sample_tree",
    "t_set",
    "verify_gk",
    "verify_imap",
]

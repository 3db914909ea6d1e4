"""Exact Hurwitz-space combinatorics: groups, ramification data, Nielsen classes, Chevalley-Weil, Hodge integrals."""

from ._core import (
    Datum,
    DomainError,
    Group,
    boundary_labels,
    cw_invert,
    cw_multiplicities,
    hodge_ranks,
    hodge_recursion,
    hyperelliptic_integral,
    lambda_relation,
    nielsen,
    psi_integral,
    tau,
)

__all__ = [
    "Datum",
    "DomainError",
    "Group",
    "boundary_labels",
    "cw_invert",
    "cw_multiplicities",
    "hodge_ranks",
    "hodge_recursion",
    "hyperelliptic_integral",
    "lambda_relation",
    "nielsen",
    "psi_integral",
    "tau",
]

"""Exact Harborth constants for finite abelian groups.

Thin wrapper over the C++ core; see the project README for the CLI and the
underlying library.
"""

from zsum._core import (
    DomainError,
    ParseError,
    ResourceError,
    cauchy_davenport_holds,
    davenport,
    dsh_holds,
    extremal_to_file,
    group_exponent,
    group_order,
    harborth,
    has_zero_sum_subsequence_of_length,
    known_value,
    normalize_group,
    sigma,
    subsums,
    verify_c3c9,
    verify_composite,
    verify_kiefer,
    __version__,
)

__all__ = [
    "DomainError",
    "ParseError",
    "ResourceError",
    "cauchy_davenport_holds",
    "davenport",
    "dsh_holds",
    "extremal_to_file",
    "group_exponent",
    "group_order",
    "harborth",
    "has_zero_sum_subsequence_of_length",
    "known_value",
    "normalize_group",
    "sigma",
    "subsums",
    "verify_c3c9",
    "verify_composite",
    "verify_kiefer",
    "__version__",
]

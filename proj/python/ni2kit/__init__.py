"""Proof-term kernel and rewriting engine for second-order natural deduction."""

from _ni2 import (  # noqa: F401
    NiCheckError,
    NiError,
    NiParseError,
    check,
    church_numeral,
    equiv,
    ff_overflow,
    normalize,
    parse_formula,
    parse_term,
    rp_formula,
    rp_term,
    suite,
)

__all__ = [
    "NiCheckError",
    "NiError",
    "NiParseError",
    "check",
    "church_numeral",
    "equiv",
    "ff_overflow",
    "normalize",
    "parse_formula",
    "parse_term",
    "rp_formula",
    "rp_term",
    "suite",
]

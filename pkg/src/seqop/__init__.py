"""Sequence operad, coefficient elements and E-infinity structure on bar complexes."""

from .operad import (
    OperadElement,
    boundary,
    complexity,
    compose,
    contracting_homotopy,
    full_compose,
    iota_a,
    parse_element,
    parse_surjection,
    r_a,
    s_a,
    sigma_action,
)
from .coefficients import coefficient

__version__ = "0.1.0"

__all__ = [
    "OperadElement",
    "boundary",
    "complexity",
    "compose",
    "contracting_homotopy",
    "full_compose",
    "iota_a",
    "parse_element",
    "parse_surjection",
    "r_a",
    "s_a",
    "sigma_action",
    "coefficient",
]

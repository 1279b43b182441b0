"""Markov numbers, Lagrange numbers, and the series of Lagrange gaps.

A library plus CLI that enumerates Markov numbers in increasing order,
verifies the uniqueness conjecture up to configurable bounds, evaluates
the gap series and its remainders at arbitrary decimal precision, and
cross-validates the arithmetic against the hyperbolic-geometry side:
traces of simple closed geodesics on the modular torus, dihedral orbit
counts, and the length series converging to one half.
"""

__version__ = "0.1.0"

from .enumeration import (
    CheckpointCorruptedError,
    CheckpointError,
    CheckpointVersionError,
    Emission,
    FrontierNode,
    MarkovStream,
    checkpoint,
    next_markov,
    restore,
)
from .muc import DuplicateWitness, MucReport, check_muc
from .precision import (
    PrecisionMismatchError,
    PrecisionReal,
    log10_float,
    ulp,
)
from .series import (
    GUARD_DIGITS,
    ZAGIER_C,
    InsufficientPrecisionError,
    SeriesReport,
    default_precision,
    gap_term,
    lagrange,
    mcshane_partial,
    mcshane_profile,
    orbit_weighted_identity_check,
    partial_sum,
    series_profile,
    target_constant,
    zagier_tail,
)
from .slopes import (
    INFINITY_SLOPE,
    MODULAR_PAIR,
    HolonomyPair,
    Slope,
    canonical_slopes,
    christoffel_word,
    dihedral_group,
    dihedral_orbit,
    farey_markov,
    holonomy_trace,
    mcshane_term,
    mcshane_term_from_trace,
    mcshane_term_sqrt_form,
)
from .triples import (
    SINGULAR_CHAIN,
    TREE_ROOT,
    MarkovTriple,
    children,
    is_markov,
    vieta,
    vieta_landing,
)

__all__ = [
    "CheckpointCorruptedError",
    "CheckpointError",
    "CheckpointVersionError",
    "DuplicateWitness",
    "Emission",
    "FrontierNode",
    "GUARD_DIGITS",
    "HolonomyPair",
    "INFINITY_SLOPE",
    "InsufficientPrecisionError",
    "MODULAR_PAIR",
    "MarkovStream",
    "MarkovTriple",
    "MucReport",
    "PrecisionMismatchError",
    "PrecisionReal",
    "SINGULAR_CHAIN",
    "SeriesReport",
    "Slope",
    "TREE_ROOT",
    "ZAGIER_C",
    "canonical_slopes",
    "check_muc",
    "checkpoint",
    "children",
    "christoffel_word",
    "default_precision",
    "dihedral_group",
    "dihedral_orbit",
    "farey_markov",
    "gap_term",
    "holonomy_trace",
    "is_markov",
    "lagrange",
    "log10_float",
    "mcshane_partial",
    "mcshane_profile",
    "mcshane_term",
    "mcshane_term_from_trace",
    "mcshane_term_sqrt_form",
    "next_markov",
    "orbit_weighted_identity_check",
    "partial_sum",
    "restore",
    "series_profile",
    "target_constant",
    "ulp",
    "vieta",
    "vieta_landing",
    "zagier_tail",
]

"""Hochschild cohomology of triangular string algebras.

The cohomology dimensions are computed two independent ways, by a
counting formula over a partition of parallel paths and by exact rational
ranks on the minimal bimodule resolution of the algebra, and the ring
structure in positive degrees is certified trivial by exhibiting every
cup product as a coboundary.
"""

from .cup import (
    Cochain,
    chain_map_audit,
    cup,
    cup_table,
    is_coboundary,
    normalize_geq,
    normalize_leq,
)
from .hochschild import CochainComplex, ParallelPair, classify
from .linalg import RationalMatrix
from .presentation import (
    ParseError,
    Presentation,
    PathBasis,
    ValidationReport,
    basis_P,
    parse,
    parse_file,
    validate,
)
from .quiver import CompositionError, CyclicQuiverError, Path, Quiver, compose, occurrences
from .resolution import ApElement, Resolution, ap_op_sets, ap_sets, resolution_check

__all__ = [
    "ApElement",
    "Cochain",
    "CochainComplex",
    "CompositionError",
    "CyclicQuiverError",
    "ParallelPair",
    "ParseError",
    "Path",
    "PathBasis",
    "Presentation",
    "Quiver",
    "RationalMatrix",
    "Resolution",
    "ValidationReport",
    "ap_op_sets",
    "ap_sets",
    "basis_P",
    "chain_map_audit",
    "classify",
    "compose",
    "cup",
    "cup_table",
    "is_coboundary",
    "normalize_geq",
    "normalize_leq",
    "occurrences",
    "parse",
    "parse_file",
    "resolution_check",
    "validate",
]

__version__ = "0.1.0"

"""L-systems, NU-systems and repetitiveness measures."""

__version__ = "0.1.0"

from .model import (Extract, LSystem, NUSystem, ValidationError, VariantClasses, classify,
                    nu_size, system_size, validate_lsystem)
from .engine import ExpansionError, expand_full, extract, fixed_point_prefix, generate
from .nu import nu_generate, resolve_extraction, validate_nu
from .measures import (bwt, delta, inverse_bwt, lz76, lz_end, lz_no, r_measure, rle_runs,
                       substring_complexity)

__all__ = [
    "Extract", "LSystem", "NUSystem", "ValidationError", "VariantClasses", "classify",
    "nu_size", "system_size", "validate_lsystem", "ExpansionError", "expand_full",
    "extract", "fixed_point_prefix", "generate", "nu_generate", "resolve_extraction",
    "validate_nu", "bwt", "delta", "inverse_bwt", "lz76", "lz_end", "lz_no", "r_measure",
    "rle_runs", "substring_complexity",
]

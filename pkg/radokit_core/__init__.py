"""
RadoKit Core Module - u-equivalence, witness combinations and coloring search.
"""
__version__ = "0.1.0"

from .exceptions import (
    RadoKitError,
    ParseError,
    SemanticError,
    InvalidEquation,
    InvalidInput,
    DimensionMismatch,
    RangeError,
    ResourceExceeded,
    CacheError,
)
from .config import get_config, get_config_manager
from .ueq_core import Polynomial, reduce, u_equiv, u_equiv_poly, poly_to_string, closure_oracle
from .witness import (
    EquationCoeffs,
    WitnessCombination,
    PolynomialFamily,
    VerificationReport,
    build_witness,
    check_system,
    build_family,
    verify_family,
)
from .search import (
    Coloring,
    MTSpec,
    SearchOutcome,
    solutions_in_set,
    find_monochromatic,
    min_forcing_n,
    mt_sums,
    fs,
    verify_mt_monochromatic,
)
from .expr import (
    UltraExpr,
    ParsedEquation,
    parse_equation,
    parse_combination,
    combinations_equal,
    canonical_combination,
)
from . import api

__all__ = [
    "__version__",
    # Exceptions
    "RadoKitError",
    "ParseError",
    "SemanticError",
    "InvalidEquation",
    "InvalidInput",
    "DimensionMismatch",
    "RangeError",
    "ResourceExceeded",
    "CacheError",
    # Config
    "get_config",
    "get_config_manager",
    # u-equivalence
    "Polynomial",
    "reduce",
    "u_equiv",
    "u_equiv_poly",
    "poly_to_string",
    "closure_oracle",
    # Witness
    "EquationCoeffs",
    "WitnessCombination",
    "PolynomialFamily",
    "VerificationReport",
    "build_witness",
    "check_system",
    "build_family",
    "verify_family",
    # Search
    "Coloring",
    "MTSpec",
    "SearchOutcome",
    "solutions_in_set",
    "find_monochromatic",
    "min_forcing_n",
    "mt_sums",
    "fs",
    "verify_mt_monochromatic",
    # Expressions
    "UltraExpr",
    "ParsedEquation",
    "parse_equation",
    "parse_combination",
    "combinations_equal",
    "canonical_combination",
    # Submodules
    "api",
]

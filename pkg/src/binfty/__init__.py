"""Exact computations with B-infinity algebras, 2-associative differential algebras and bialgebras."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ArityError, AxiomError, BinftyError, CapError, HomogeneityError, InconsistencyError, TruncationError,
)
from .graded import GradedSpace, MultiMap, Permutation, koszul_sign, permute_tensor  # noqa: E402
from .structures import AInfinity, BInfinity, LawReport, Multibrace, check_b_infinity  # noqa: E402
from .underlying import TwoAssocDiffAlgebra, underlying_b_infinity, validate  # noqa: E402

__all__ = [
    "ArityError", "AxiomError", "BinftyError", "CapError", "HomogeneityError", "InconsistencyError",
    "TruncationError", "GradedSpace", "MultiMap", "Permutation", "koszul_sign", "permute_tensor",
    "AInfinity", "BInfinity", "LawReport", "Multibrace", "check_b_infinity", "TwoAssocDiffAlgebra",
    "underlying_b_infinity", "validate",
]

"""Exact symbolic verification of mean-value and difference functional equations."""

from .cyclotomic import CyclotomicNumber, DomainError, rat, root_power_sum, zeta_pow
from .operators import (
    SYMBOLIC,
    EquationParams,
    affine_transform,
    djokovic_check,
    djokovic_rhs,
    forward_difference,
    haruki_defect,
    knw_average,
    knw_defect,
    mixed_difference,
    real_affine_transform,
)
from .parser import ParseError, format_poly, parse
from .polyring import SparsePolynomial, complexify, realize
from .spaces import (
    CornerSet,
    characterize,
    frechet_membership,
    haruki_membership,
    knw_membership,
    solution_basis,
)

__version__ = "0.1.0"

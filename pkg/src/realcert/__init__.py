"""Exact certification of real solutions of polynomial systems."""
from .alphacert import (
    CertBounds,
    CertReport,
    ConjPairs,
    FullReal,
    Outcome,
    beta_sq,
    certify_coordinate_nonreal,
    certify_distinct,
    certify_in_V,
    certify_report,
    delta_sq,
    gamma_sq_upper,
    is_approximate_solution,
    newton_step,
    project_onto_V,
    refine,
    same_root,
)
from .exact import GaussianRational, Rational, dyadic_round, norm_sq, solve_linear, sqrt_bracket
from .polysys import (
    BlockStructure,
    Polynomial,
    PolynomialSystem,
    assemble_structured,
    evaluate,
    jacobian,
    parse_points,
    parse_system,
    serialize_points,
    serialize_system,
    validate_block_structure,
    weyl_norm_sq,
)

__version__ = "0.1.0"

"""General bivariate Krawtchouk polynomials and the interbasis overlaps of the
three-dimensional isotropic harmonic oscillator, computed by several
independent routes."""
from .bikraw import (
    BiKrawArgs,
    SingularParameterError,
    orthonormality_defect,
    p_aomoto,
    p_genfun,
    p_interbasis,
    p_matexp,
    tratnik_k2,
    weight,
)
from .oracles import gauss_hermite, p_quadrature, psi_cartesian, psi_polar
from .overlaps import overlap_matrix
from .polyfun import PreconditionError, dual_hahn, krawtchouk
from .rotations import EulerAngles, euler_to_rotation, wigner_d
from .su11cg import cg

__version__ = "0.1.0"

__all__ = [
    "BiKrawArgs",
    "EulerAngles",
    "PreconditionError",
    "SingularParameterError",
    "cg",
    "dual_hahn",
    "euler_to_rotation",
    "gauss_hermite",
    "krawtchouk",
    "orthonormality_defect",
    "overlap_matrix",
    "p_aomoto",
    "p_genfun",
    "p_interbasis",
    "p_matexp",
    "p_quadrature",
    "psi_cartesian",
    "psi_polar",
    "tratnik_k2",
    "weight",
    "wigner_d",
]

"""Exact invariants of line bundles on complex tori: elementary divisors,
discriminant groups, theta-group arithmetic, Jordan constants, pencils."""
from .appell_humbert import AHData
from .exact import FormalScalar, GaussianRational
from .jordan import jordan_constant
from .lattice import AlternatingForm, DiscriminantGroup, SymplecticData, symplectic_normal_form

__all__ = [
    "AHData",
    "AlternatingForm",
    "DiscriminantGroup",
    "FormalScalar",
    "GaussianRational",
    "SymplecticData",
    "jordan_constant",
    "symplectic_normal_form",
]
__version__ = "0.1.0"

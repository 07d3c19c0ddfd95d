"""Semiample toric hypersurfaces: Jacobian rings, Hodge numbers and chiral rings."""

__version__ = "0.1.0"

from .errors import InputError, MathError, ToricError
from .fan import Cone, Fan, order_rays_in_2cone, star_fan
from .divisors import chow_group, semiample_quotient
from .coxring import Polynomial, fermat_polynomial, random_polynomial, restrict_to_star
from .jacobian import JacobianContext, quasismooth_witness
from .cohomology import middle_cohomology, sigma_X_data, toric_cohomology_dims, toric_part_of_hypersurface
from .chiral import ChiralRing, build_chiral_basis

__all__ = [
    "__version__",
    "ToricError",
    "MathError",
    "InputError",
    "Cone",
    "Fan",
    "order_rays_in_2cone",
    "star_fan",
    "chow_group",
    "semiample_quotient",
    "Polynomial",
    "fermat_polynomial",
    "random_polynomial",
    "restrict_to_star",
    "JacobianContext",
    "quasismooth_witness",
    "middle_cohomology",
    "sigma_X_data",
    "toric_cohomology_dims",
    "toric_part_of_hypersurface",
    "ChiralRing",
    "build_chiral_basis",
]

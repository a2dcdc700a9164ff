"""Petrie relatives of Gordan's regular map {5,4}_6 and their icosahedral skeletal realizations."""

from .field import FieldScalar, coplanar, parse_scalar, to_float
from .flags import FlagSystem, MapInvariants, hexad, isomorphic
from .presentation import Presentation, build, enumerate_cosets, petrie_length, to_flag_system
from .realization import SkeletalPolyhedron, index_two_certificate, orbit_census, search, validate
from .symmetry import SymmetryGroup, VertexConfiguration, generate_h3, standard_configuration

__version__ = "0.1.0"

__all__ = [
    "FieldScalar",
    "FlagSystem",
    "MapInvariants",
    "Presentation",
    "SkeletalPolyhedron",
    "SymmetryGroup",
    "VertexConfiguration",
    "build",
    "coplanar",
    "enumerate_cosets",
    "generate_h3",
    "hexad",
    "index_two_certificate",
    "isomorphic",
    "orbit_census",
    "parse_scalar",
    "petrie_length",
    "search",
    "standard_configuration",
    "to_flag_system",
    "to_float",
    "validate",
]

"""Exact-arithmetic finite type cluster algebras.

Mutation and Laurent expansions, superunitary-region membership and faces,
frieze knitting and enumeration, and the Dynkin-type counting recursions.
"""

from .laurent import InexactDivisionError, LaurentPoly, RationalPoint
from .quiver import DynkinType, ExchangeMatrix, from_dynkin, mutate_matrix, recognize_dynkin
from .cluster import ClusterRegistry, Seed, SeedPattern, Subcluster, enumerate_pattern, mutate_seed

__all__ = [
    "InexactDivisionError",
    "LaurentPoly",
    "RationalPoint",
    "DynkinType",
    "ExchangeMatrix",
    "from_dynkin",
    "mutate_matrix",
    "recognize_dynkin",
    "ClusterRegistry",
    "Seed",
    "SeedPattern",
    "Subcluster",
    "enumerate_pattern",
    "mutate_seed",
]

__version__ = "0.1.0"

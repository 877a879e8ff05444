"""Plumbing graphs of the boundary of the Milnor fibre for finitely determined germs (C^2,0) -> (C^3,0)."""

from .boundary import BoundaryGraph, Pair, PairingData, build_boundary_graph
from .newton_puiseux import expand
from .plumbing import PlumbingGraph, equivalent, h1, isomorphic, normalize
from .resolution import ResolutionGraph, multiplicities, resolve
from .sigma10 import Sigma10Germ, compute_boundary, verify_sum_identity

__version__ = "0.1.0"

__all__ = [
    "BoundaryGraph",
    "Pair",
    "PairingData",
    "PlumbingGraph",
    "ResolutionGraph",
    "Sigma10Germ",
    "build_boundary_graph",
    "compute_boundary",
    "equivalent",
    "expand",
    "h1",
    "isomorphic",
    "multiplicities",
    "normalize",
    "resolve",
    "verify_sum_identity",
]

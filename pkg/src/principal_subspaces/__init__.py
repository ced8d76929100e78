"""Principal subspaces of standard sl(n+1)^ modules: presentations checked two ways."""

from .fock_lattice import LatticeModule, PrincipalSubspace, lattice_module
from .ideal_engine import (GradedSubspace, IdealSpec, Window, ideal_graded_component,
                           membership, membership_growing, quotient_dim)
from .root_data import Cocycle, RootSystemData, build_root_data, root_data
from .textform import ParseError, format_elem, parse_elem
from .upbw import AffineWeight, AlgElem, GradedIndex, LoopGen, loop_algebra, r_generator
from .verifier import VerificationReport, principal_dim, qseries, verify_presentation

__all__ = [
    "AffineWeight", "AlgElem", "Cocycle", "GradedIndex", "GradedSubspace", "IdealSpec",
    "LatticeModule", "LoopGen", "ParseError", "PrincipalSubspace", "RootSystemData",
    "VerificationReport", "Window", "build_root_data", "format_elem",
    "ideal_graded_component", "lattice_module", "loop_algebra", "membership",
    "membership_growing", "parse_elem", "principal_dim", "qseries", "quotient_dim",
    "r_generator", "root_data", "verify_presentation",
]

"""Hamiltonian paths in 2-trees: decision, construction and a brute-force
oracle to check both against."""

from .edgelist import format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from .errors import (
    ConstructionFailed,
    Disconnected,
    InfeasibleProfile,
    MissingEdge,
    MissingVertex,
    NotTwoTree,
    ParseError,
    PreconditionViolated,
    TooLarge,
    TwoTreeError,
)
from .generator import GenSpec, Profile, enumerate_small, generate
from .graph import Graph, edge_key
from .hamiltonian_engine import HPResult, WitnessReason, hamiltonian_path, validate_path
from .pyramids import CaseLabel, classify, pyramid_report

__all__ = [
    "CaseLabel",
    "ConstructionFailed",
    "Disconnected",
    "GenSpec",
    "Graph",
    "HPResult",
    "InfeasibleProfile",
    "MissingEdge",
    "MissingVertex",
    "NotTwoTree",
    "ParseError",
    "PreconditionViolated",
    "Profile",
    "TooLarge",
    "TwoTreeError",
    "WitnessReason",
    "classify",
    "edge_key",
    "enumerate_small",
    "format_edge_list",
    "generate",
    "hamiltonian_path",
    "parse_edge_list",
    "pyramid_report",
    "read_edge_list",
    "validate_path",
    "write_edge_list",
]

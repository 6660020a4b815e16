"""Symmetric bar-joint frameworks on the cylinder x^2 + y^2 = 1."""
__version__ = "0.1.0"

from .groups import GROUPS, GroupSpec, get_group
from .graph import SymmetricGraph, make_graph, validate, fixed_elements, orbits
from .sparsity import check_22, gamma_tight, run_pebble_game, brute_force_sparse
from .geometry import (Framework, random_symmetric_realization, rigidity_matrix,
                       graph_is_gamma_isostatic)
from .characters import necessary_conditions
from .construction import Certificate, Step, apply_step, certify, replay, verify_certificate
from .trees import decompose, verify_decomposition
from .io import parse_document, to_document

__all__ = [
    "GROUPS", "GroupSpec", "get_group", "SymmetricGraph", "make_graph", "validate",
    "fixed_elements", "orbits", "check_22", "gamma_tight", "run_pebble_game",
    "brute_force_sparse", "Framework", "random_symmetric_realization", "rigidity_matrix",
    "graph_is_gamma_isostatic", "necessary_conditions", "Certificate", "Step", "apply_step",
    "certify", "replay", "verify_certificate", "decompose", "verify_decomposition",
    "parse_document", "to_document",
]

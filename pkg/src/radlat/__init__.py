"""Radicals of relations on finite complete lattices, with a block-model
algebra layer, exhaustive theorem suites, and a command-line front end."""

from ._kernels import BACKEND as kernel_backend
from .lattice import Lattice, boolean_lattice, build_lattice, chain
from .relcalc import Relation, validate_relation

__all__ = [
    "BACKEND",
    "Lattice",
    "Relation",
    "boolean_lattice",
    "build_lattice",
    "chain",
    "kernel_backend",
    "validate_relation",
]

BACKEND = kernel_backend

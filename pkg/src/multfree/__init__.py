"""Multiplicity-freeness verdicts for finite groups over finite fields.

Exact GF(p^k) arithmetic and linear algebra, enumerated finite groups,
matrix representations, Hom spaces and Hecke algebras, a Meataxe, submodule
lattices, and scenario pipelines tying them together.
"""

from .errors import (
    MultfreeError,
    PreconditionFailed,
    SizeCapExceeded,
    SpecParseError,
    SplittingFieldInsufficient,
    UncertifiedInventory,
)
from .field import FieldElement, FiniteField, make_field
from .groups import FiniteGroup, Subgroup, double_cosets
from .homalg import HeckeAlgebra, MatrixAlgebra, end_algebra, hom_dim, hom_space, multiplicity_vector
from .linalg import Matrix, Subspace
from .meataxe import ModuleOverAlgebra, chop, irreducible_inventory
from .reps import Representation, induce, restrict
from .specs import parse_character, parse_field, parse_group, parse_subgroup
from .structure import SubmoduleLattice, Verdict, submodule_lattice
from .verdicts import Scenario, VerdictReport, run_scenario

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FiniteField",
    "FiniteGroup",
    "HeckeAlgebra",
    "Matrix",
    "MatrixAlgebra",
    "ModuleOverAlgebra",
    "MultfreeError",
    "PreconditionFailed",
    "Representation",
    "Scenario",
    "SizeCapExceeded",
    "SpecParseError",
    "SplittingFieldInsufficient",
    "Subgroup",
    "SubmoduleLattice",
    "Subspace",
    "UncertifiedInventory",
    "Verdict",
    "VerdictReport",
    "chop",
    "double_cosets",
    "end_algebra",
    "hom_dim",
    "hom_space",
    "induce",
    "irreducible_inventory",
    "make_field",
    "multiplicity_vector",
    "parse_character",
    "parse_field",
    "parse_group",
    "parse_subgroup",
    "restrict",
    "run_scenario",
    "submodule_lattice",
]

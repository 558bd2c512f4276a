"""banalg: character spaces and Δ-weak amenability of finite-dimensional algebras over ℂ."""

from .exceptions import BanalgError, InputError, SolverError
from .models import (
    Algebra,
    Character,
    CharacterSet,
    DecisionReport,
    Element,
    LinearMap,
    SubspaceBasis,
    ZeroCharacter,
)
from .repositories import load_algebra, load_corpus
from .services.algebra_factory import (
    AlgebraFactory,
    a_phi_algebra,
    direct_sum,
    finite_group_algebra,
    lau_product,
    multiply,
    new_algebra,
    quotient,
    span,
    unitization,
    upper_triangular,
)
from .services.amenability_service import (
    combine_identities,
    delta_weak_identity,
    delta_weak_phi_amenable,
    extend_character_from_ideal,
    kernel_basis,
    left_identity_in_kernel,
    phi_amenable,
    right_identity_in_kernel,
)
from .services.character_solver import character_space, evaluate, resolve_character, verify_character
from .services.identity_service import find_identity, find_right_identity_on
from .services.theorem_harness import run_all

__version__ = "0.1.0-dev"

__all__ = [
    "Algebra",
    "AlgebraFactory",
    "BanalgError",
    "Character",
    "CharacterSet",
    "DecisionReport",
    "Element",
    "InputError",
    "LinearMap",
    "SolverError",
    "SubspaceBasis",
    "ZeroCharacter",
    "a_phi_algebra",
    "character_space",
    "combine_identities",
    "delta_weak_identity",
    "delta_weak_phi_amenable",
    "direct_sum",
    "evaluate",
    "extend_character_from_ideal",
    "find_identity",
    "find_right_identity_on",
    "finite_group_algebra",
    "kernel_basis",
    "lau_product",
    "left_identity_in_kernel",
    "load_algebra",
    "load_corpus",
    "multiply",
    "new_algebra",
    "phi_amenable",
    "quotient",
    "resolve_character",
    "right_identity_in_kernel",
    "run_all",
    "span",
    "unitization",
    "upper_triangular",
    "verify_character",
]

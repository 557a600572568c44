"""Finite-semigroup workbench for Kannappan, Van Vleck and d'Alembert equations."""

from .corpus import load_corpus, load_semigroup
from .equations import (
    FAMILIES,
    EquationSpec,
    class_membership,
    is_solution,
    lemma_suite,
    residual,
    sine_addition_residual,
)
from .errors import SemifeqError
from .morphisms import (
    Character,
    InvolutiveMorphism,
    admissible_mus,
    all_involutions,
    enumerate_characters,
    enumerate_involutive_morphisms,
    sign_condition,
)
from .oracle import OracleResult, compare_sets, solve_all
from .report import VerificationReport, run_verification, verify_sweep
from .semigroup import Semigroup, center, element_profile, find_identity, validate_semigroup
from .solutions import build_char_solution, enumerate_classified, t_inverse, t_transform

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "Character",
    "EquationSpec",
    "InvolutiveMorphism",
    "OracleResult",
    "Semigroup",
    "SemifeqError",
    "VerificationReport",
    "admissible_mus",
    "all_involutions",
    "build_char_solution",
    "center",
    "class_membership",
    "compare_sets",
    "element_profile",
    "enumerate_characters",
    "enumerate_classified",
    "enumerate_involutive_morphisms",
    "find_identity",
    "is_solution",
    "lemma_suite",
    "load_corpus",
    "load_semigroup",
    "residual",
    "run_verification",
    "sign_condition",
    "sine_addition_residual",
    "solve_all",
    "t_inverse",
    "t_transform",
    "validate_semigroup",
    "verify_sweep",
]

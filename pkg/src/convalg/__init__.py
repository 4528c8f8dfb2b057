"""Convolution algebras of commutative monoids and of convex cones in R^n."""

from .algebra import FiniteSupportFunction, add, coeff, convolve, delta, scale, support
from .characters import Character, char_value, evaluate, is_bounded
from .cone import (
    ConvexCone,
    ExpCharacter,
    GridFunction,
    char_evaluate,
    char_multiplicativity_residual,
    cone_contains,
    dual_contains,
    grid_convolve,
)
from .l1 import SummableFunction, convolve_l1, evaluate_l1, geometric, l1_norm_interval
from .monoid import Monoid, combine, decompositions, identity
from .series import LazyFunction, character_triviality_check, total_convolve, total_convolve_at, truncate

__all__ = [
    "Character",
    "ConvexCone",
    "ExpCharacter",
    "FiniteSupportFunction",
    "GridFunction",
    "LazyFunction",
    "Monoid",
    "SummableFunction",
    "add",
    "char_evaluate",
    "char_multiplicativity_residual",
    "char_value",
    "character_triviality_check",
    "coeff",
    "combine",
    "cone_contains",
    "convolve",
    "convolve_l1",
    "decompositions",
    "delta",
    "dual_contains",
    "evaluate",
    "evaluate_l1",
    "geometric",
    "grid_convolve",
    "identity",
    "is_bounded",
    "l1_norm_interval",
    "scale",
    "support",
    "total_convolve",
    "total_convolve_at",
    "truncate",
]

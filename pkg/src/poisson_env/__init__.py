"""Exact symbolic engine for Poisson polynomial algebras, their Poisson-Ore
extensions and Poisson enveloping algebras in PBW normal form."""

from .envelope import EnvAlgebra, EnvElement, GDegree, build_envelope, compare_gdegree, embed_kahler
from .extensions import (
    DEDataPoisson,
    PoissonOreData,
    build_double_poisson_ore,
    build_poisson_ore_single,
    check_dedata,
    check_ore_data,
    decompose_iterated,
)
from .kahler import KahlerElement, kahler_action, kahler_bracket, kahler_d
from .parse import ParseError, parse_poly
from .poisson import PoissonAlgebra, bracket, check_jacobi
from .poly import Derivation, Polynomial, VarTable
from .report import Verdict, emit_report

__all__ = [
    "DEDataPoisson", "Derivation", "EnvAlgebra", "EnvElement", "GDegree", "KahlerElement", "ParseError",
    "PoissonAlgebra", "PoissonOreData", "Polynomial", "VarTable", "Verdict", "bracket", "build_double_poisson_ore",
    "build_envelope", "build_poisson_ore_single", "check_dedata", "check_jacobi", "check_ore_data",
    "compare_gdegree", "decompose_iterated", "embed_kahler", "emit_report", "kahler_action", "kahler_bracket",
    "kahler_d", "parse_poly",
]

"""Exact solver for second-degree Diophantine equations.

The core case is ``a x^2 - b y^2 + c = 0``: an integer automorphism built from
the resolvent equation ``a alpha^2 - b gamma^2 = a`` maps solutions to
solutions, so every solution descends to one of finitely many seeds. General
conics are reduced to that case by an affine change of variables, and diagonal
forms in more variables get an automorph search.
"""

from .classify import PellEquation, classify, congruence_certificate
from .conic import GeneralConic, reduce, solve_conic
from .exact import MatQ, Surd
from .nform import DiagonalForm, automorph_search, nform_solve
from .oracle import enumerate_solutions
from .parsing import parse_equation
from .pell import closed_form, generate, resolvent, solve

__all__ = [
    "DiagonalForm",
    "GeneralConic",
    "MatQ",
    "PellEquation",
    "Surd",
    "automorph_search",
    "classify",
    "closed_form",
    "congruence_certificate",
    "enumerate_solutions",
    "generate",
    "nform_solve",
    "parse_equation",
    "reduce",
    "resolvent",
    "solve",
    "solve_conic",
]

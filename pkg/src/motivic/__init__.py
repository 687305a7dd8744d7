"""Symbolic calculator for the localized Grothendieck ring of varieties.

The main entry points:

* :class:`LaurentPoly` - exact integer Laurent polynomials in ``L``;
* :class:`Registry`, :class:`MotivicClass` - classes as sums of generators;
* :func:`class_of` and the expression nodes in :mod:`motivic.varieties`;
* :func:`dual_k`, :func:`chi_ordinary`, :func:`verify_prespaar`;
* :mod:`motivic.relative` - relative classes and the six operations.
"""

from .core import GeneratorInfo, MotivicClass, Registry, realize
from .duality import SNCData, chi_ordinary, dual_k, pair_chi, verify_prespaar
from .errors import (
    DomainError, MotivicError, NotDualizableError, ParseError, PoleError,
    RegistryMismatchError, UnresolvedGeneratorError,
)
from .laurent import L, LaurentPoly
from .parser import parse_class, parse_class_expr, parse_expr, render_expr
from .varieties import (
    Affine, BlowUp, Complement, DisjointUnion, Empty, Grassmannian, Point, Product,
    Projective, ProjBundle, Symbolic, Torus, VarietyExpr, VecBundle, class_of,
    default_registry, exceptional_divisor,
)

__version__ = "0.1.0"

__all__ = [
    "GeneratorInfo", "MotivicClass", "Registry", "realize",
    "SNCData", "chi_ordinary", "dual_k", "pair_chi", "verify_prespaar",
    "DomainError", "MotivicError", "NotDualizableError", "ParseError", "PoleError",
    "RegistryMismatchError", "UnresolvedGeneratorError",
    "L", "LaurentPoly",
    "parse_class", "parse_class_expr", "parse_expr", "render_expr",
    "Affine", "BlowUp", "Complement", "DisjointUnion", "Empty", "Grassmannian", "Point",
    "Product", "Projective", "ProjBundle", "Symbolic", "Torus", "VarietyExpr", "VecBundle",
    "class_of", "default_registry", "exceptional_divisor",
]

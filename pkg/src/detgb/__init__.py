"""Groebner bases of determinantal ideals: exact polynomial arithmetic, Buchberger,
minors and their initial ideals, RSK, Stanley-Reisner complexes, joins and toric ideals."""

from .errors import DetGBError
from .poly import GF, QQ, GrevLex, Lex, MatrixOrder, Polynomial, PolyRing, VariableGrid, Weight
from .groebner import GroebnerBasis, buchberger, initial_ideal, is_groebner_basis, normal_form
from .monideal import MonomialIdeal
from .determinantal import MinorIndex, circuits_segre, diagonal_ideal, minor_poly, minors_ideal

__version__ = "0.1.0"

__all__ = [
    "DetGBError",
    "GF",
    "QQ",
    "GrevLex",
    "Lex",
    "MatrixOrder",
    "Polynomial",
    "PolyRing",
    "VariableGrid",
    "Weight",
    "GroebnerBasis",
    "buchberger",
    "initial_ideal",
    "is_groebner_basis",
    "normal_form",
    "MonomialIdeal",
    "MinorIndex",
    "circuits_segre",
    "diagonal_ideal",
    "minor_poly",
    "minors_ideal",
]

"""Frobenius closures, multiplicities and characteristic-p multiplicity bounds over F_p."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import FrobMultError
from .ffpoly import DEGREVLEX, LEX, MonomialOrder, Polynomial, PolyRing, PrimeField
from .frobenius import ParameterIdeal, RingPresentation, frobenius_closure
from .groebner import Ideal, buchberger

__all__ = [
    "DEGREVLEX", "LEX", "FrobMultError", "Ideal", "MonomialOrder", "ParameterIdeal", "PolyRing",
    "Polynomial", "PrimeField", "RingPresentation", "buchberger", "frobenius_closure", "__version__",
]

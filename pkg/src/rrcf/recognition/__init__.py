"""Algebraic-number recognition: integer relations, minimal polynomials, square-root fields, Yi's pipeline."""

from .field import FieldElement, recognize_in_field
from .minpoly import AlgebraicCandidate, recognize_minpoly
from .roots import designated_root, real_roots, select_root
from .yi import YiRecognition, yi_recognize, yi_s

__all__ = [
    "AlgebraicCandidate",
    "FieldElement",
    "YiRecognition",
    "designated_root",
    "real_roots",
    "recognize_in_field",
    "recognize_minpoly",
    "select_root",
    "yi_recognize",
    "yi_s",
]

"""Exact Kummer theory for the cyclic extension k(t) / k(t^(p^l)) over a finite field."""

from .errors import DomainError, InvariantViolation, KummerError, ParseError, UnsupportedInstanceError
from .expr import parse_ratfunc
from .ffield import GF, FieldElement
from .fpgmod import ModulePresentation, cyclic_decompose, dual_module, jordan_type
from .instance import InstanceFile, parse_instance
from .kummer import VerificationReport, build_extension, verify_relative_kummer
from .polyarith import Polynomial, factor
from .ratfield import FactoredElement, GaloisContext, KummerClass, class_of

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InvariantViolation", "KummerError", "ParseError", "UnsupportedInstanceError",
    "parse_ratfunc", "GF", "FieldElement", "ModulePresentation", "cyclic_decompose", "dual_module",
    "jordan_type", "InstanceFile", "parse_instance", "VerificationReport", "build_extension",
    "verify_relative_kummer", "Polynomial", "factor", "FactoredElement", "GaloisContext",
    "KummerClass", "class_of",
]

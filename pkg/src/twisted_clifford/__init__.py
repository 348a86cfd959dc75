"""Twisted group algebras, quadratic forms over GF(2) and real Clifford algebras."""

from .algebra import (AlgebraElement, GradingAssignment, TwistedAlgebra, associativity_report,
                      alternativity_report, center, is_associative, is_graded_division,
                      octonions, quaternions, verify_grading)
from .clifford import (IsoClass, Signature, arf_closed, arf_pq_brute, check_periodicity,
                       classify, classify_form, clifford_algebra, clock_table, tensor_iso)
from .cocycles import Bicharacter, Cocycle, beta_of, build_sigma, cohomologous, is_cocycle
from .errors import (CapacityError, DomainError, ParseError, StructuralError,
                     TwistedCliffordError, UnsupportedInputError, ValidationError)
from .forms import (QuadraticFormF2, arf_brute, dickson_canonical, equivalent, find_witness,
                    parse_form, q_pq)
from .groups import FinAbGroup, GroupElement
from .models import MatrixModel, RatMatrix, build_model, verify_model

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "Bicharacter",
    "CapacityError",
    "Cocycle",
    "DomainError",
    "FinAbGroup",
    "GradingAssignment",
    "GroupElement",
    "IsoClass",
    "MatrixModel",
    "ParseError",
    "QuadraticFormF2",
    "RatMatrix",
    "Signature",
    "StructuralError",
    "TwistedAlgebra",
    "TwistedCliffordError",
    "UnsupportedInputError",
    "ValidationError",
    "alternativity_report",
    "arf_brute",
    "arf_closed",
    "arf_pq_brute",
    "associativity_report",
    "beta_of",
    "build_model",
    "build_sigma",
    "center",
    "check_periodicity",
    "classify",
    "classify_form",
    "clifford_algebra",
    "clock_table",
    "cohomologous",
    "dickson_canonical",
    "equivalent",
    "find_witness",
    "is_associative",
    "is_cocycle",
    "is_graded_division",
    "octonions",
    "parse_form",
    "q_pq",
    "quaternions",
    "tensor_iso",
    "verify_grading",
    "verify_model",
]

"""
errors.py - Exception hierarchy
===============================

Every failure raised by the algebra carries a witness dictionary naming the
first offending element, pair or triple, plus the exit code used by the CLI.
"""
from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_THEOREM = 3
EXIT_BOUND = 4


class AlgebraError(Exception):
    """Base class: message plus structured witness"""

    exit_code = EXIT_VALIDATION

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness: Dict[str, Any] = dict(witness or {})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "witness": self.witness,
        }


# ===== INPUT =====

class ParseError(AlgebraError):
    exit_code = EXIT_PARSE


# ===== GROUP STRUCTURE =====

class NotAssociative(AlgebraError):
    pass


class NoIdentityAtZero(AlgebraError):
    pass


class MissingInverse(AlgebraError):
    pass


class IndexOutOfRange(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotSubgroup(AlgebraError):
    pass


class NotHomomorphism(AlgebraError):
    pass


class SearchBoundExceeded(AlgebraError):
    exit_code = EXIT_BOUND


# ===== RRB AXIOMS =====

class PhiNotAction(AlgebraError):
    pass


class PhiNotAutomorphism(AlgebraError):
    pass


class RBIdentityFails(AlgebraError):
    pass


class NotIdeal(AlgebraError):
    pass


class CompatibilityFails(AlgebraError):
    pass


# ===== LINEAR ALGEBRA =====

class NotInSubgroup(AlgebraError):
    pass


class NoSolution(AlgebraError):
    pass


class DimensionMismatch(AlgebraError):
    pass


# ===== COCHAINS =====

class ShapeMismatch(AlgebraError):
    pass


class NotNormalized(AlgebraError):
    pass


class SectionInvalid(AlgebraError):
    pass


class NotInZ2(AlgebraError):
    pass


class HypothesisFails(AlgebraError):
    pass


class ModuleMismatch(AlgebraError):
    pass


# ===== YANG-BAXTER =====

class BraidFails(AlgebraError):
    exit_code = EXIT_THEOREM


class DegenerateComponent(AlgebraError):
    exit_code = EXIT_THEOREM


# ===== INTERNAL AGREEMENT =====

class ConsistencyError(AlgebraError):
    """Two independent computations disagree: always a bug or a false theorem"""

    exit_code = EXIT_THEOREM


class TheoremViolation(ConsistencyError):
    pass

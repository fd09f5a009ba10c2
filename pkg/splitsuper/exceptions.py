"""
Error hierarchy for splitsuper.

Every error carries the CLI exit category it maps to. Library code raises,
the command layer converts.
"""

from typing import Any, Dict, Optional


class SuperalgebraError(Exception):
    """Base class for all splitsuper errors"""
    exit_code = 1
    category = 'ERROR'

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'category': self.category,
            'message': self.message,
            'details': self.details,
        }


class ParseError(SuperalgebraError):
    """Malformed algebra document"""
    exit_code = 2
    category = 'PARSE_ERROR'


class ConsistencyError(ParseError):
    """Explicit mirror bracket entries disagree with skew-supersymmetry"""
    category = 'CONSISTENCY_ERROR'


class ValidationFailure(SuperalgebraError):
    """Input is not a (regular) Hom-Lie superalgebra, or an operation precondition on it fails"""
    exit_code = 3
    category = 'VALIDATION_FAILURE'


class DimensionMismatchError(ValidationFailure, ValueError):
    """Vectors, matrices or subspaces live in different ambient spaces"""
    category = 'DIMENSION_MISMATCH'


class NotSplitError(SuperalgebraError):
    """The algebra is not split with respect to the given MAGSA"""
    exit_code = 4
    category = 'NOT_SPLIT'

    NOT_SPLIT = 'NOT_SPLIT'
    NON_RATIONAL_SPECTRUM = 'NON_RATIONAL_SPECTRUM'

    def __init__(self, message: str, reason: str = NOT_SPLIT, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.reason = reason
        self.category = reason


class PreconditionUnmet(SuperalgebraError):
    """Structural hypotheses required by an operation do not hold"""
    exit_code = 4
    category = 'PRECONDITION_UNMET'


class TheoremViolation(SuperalgebraError):
    """A proven structural statement failed on a concrete instance; always a bug"""
    exit_code = 5
    category = 'THEOREM_VIOLATION'

    def __init__(self, message: str, check: str = 'THEOREM_VIOLATION', details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.check = check
        self.category = check

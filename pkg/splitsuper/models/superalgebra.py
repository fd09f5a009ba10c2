import logging
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from splitsuper.exceptions import ConsistencyError, DimensionMismatchError
from splitsuper.utils.exactlin import (
    Rational, Vector, format_rational, identity_matrix, matrix_rows, to_rational
)

logger = logging.getLogger(__name__)

# (i, j) -> {k: c(i, j, k)} with [b_i, b_j] = sum_k c(i, j, k) b_k
StructureConstants = Dict[Tuple[int, int], Dict[int, Rational]]


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    @property
    def label(self) -> str:
        return 'even' if self is Parity.EVEN else 'odd'


def super_sign(p: int, q: int) -> int:
    """(-1)^(p q) for parities p, q."""
    return -1 if (int(p) == 1 and int(q) == 1) else 1


def _clean_terms(terms: Mapping[int, Any]) -> Dict[int, Rational]:
    cleaned = {}
    for k, c in terms.items():
        c = to_rational(c)
        if c != 0:
            cleaned[int(k)] = c
    return cleaned


@dataclass(frozen=True, eq=False)
class Superalgebra:
    """
    A Hom-Lie superalgebra given by structure constants.

    `twist` is the matrix of phi acting on columns: column j holds the
    coordinates of phi(b_j). `bracket` lists only nonzero products and is
    complete for both orders of every pair.
    """
    basis_names: Tuple[str, ...]
    parities: Tuple[Parity, ...]
    bracket: StructureConstants = field(repr=False)
    twist: DomainMatrix = field(repr=False)
    regular: bool = True

    def __post_init__(self):
        n = len(self.basis_names)
        if len(self.parities) != n:
            raise DimensionMismatchError(f"{len(self.parities)} parities for {n} basis vectors")
        if self.twist.shape != (n, n):
            raise DimensionMismatchError(f"Twist of shape {self.twist.shape} for dimension {n}")

    @classmethod
    def from_products(cls, basis_names: Sequence[str], parities: Sequence[int],
                      products: Mapping[Tuple[int, int], Mapping[int, Any]],
                      twist: Optional[DomainMatrix] = None, regular: bool = True) -> 'Superalgebra':
        """
        Build an algebra from a partial product table.

        Missing mirror pairs are completed by skew-supersymmetry. When both
        (i, j) and (j, i) are given they must agree with it.

        Args:
            basis_names: Names of the basis vectors
            parities: 0 or 1 per basis vector
            products: (i, j) -> {k: coefficient}
            twist: Matrix of phi, identity when omitted
            regular: Whether phi is claimed invertible

        Returns:
            Superalgebra

        Raises:
            ConsistencyError: Explicit mirror entries disagree
        """
        n = len(basis_names)
        parities = tuple(Parity(int(p)) for p in parities)
        given = {}
        for (i, j), terms in products.items():
            for index in (i, j, *terms.keys()):
                if not 0 <= int(index) < n:
                    raise DimensionMismatchError(f"Basis index {index} out of range for dimension {n}")
            given[(int(i), int(j))] = _clean_terms(terms)

        bracket: StructureConstants = {}
        for (i, j), terms in given.items():
            sign = -super_sign(parities[i], parities[j])
            mirrored = {k: sign * c for k, c in terms.items()}
            if (j, i) in given and i != j and given[(j, i)] != mirrored:
                raise ConsistencyError(
                    f"Products [{basis_names[i]},{basis_names[j]}] and [{basis_names[j]},{basis_names[i]}] "
                    f"violate skew-supersymmetry",
                    details={'pair': [basis_names[i], basis_names[j]]},
                )
            if terms:
                bracket[(i, j)] = dict(terms)
                if i != j and (j, i) not in given:
                    bracket[(j, i)] = mirrored
        if twist is None:
            twist = identity_matrix(n)
        return cls(tuple(basis_names), parities, bracket, twist, regular)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @cached_property
    def parity_list(self) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.parities)

    @cached_property
    def even_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == Parity.EVEN)

    @cached_property
    def odd_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parities) if p == Parity.ODD)

    @cached_property
    def twist_rows(self) -> List[Vector]:
        return matrix_rows(self.twist)

    def product(self, i: int, j: int) -> Dict[int, Rational]:
        return self.bracket.get((i, j), {})

    def index_of(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise KeyError(f"No basis vector named {name!r}") from None

    def with_product(self, i: int, j: int, terms: Mapping[int, Any]) -> 'Superalgebra':
        """Copy with the single ordered product [b_i, b_j] replaced; the mirror is left alone."""
        bracket = {key: dict(value) for key, value in self.bracket.items()}
        cleaned = _clean_terms(terms)
        if cleaned:
            bracket[(i, j)] = cleaned
        else:
            bracket.pop((i, j), None)
        return Superalgebra(self.basis_names, self.parities, bracket, self.twist, self.regular)

    def with_twist(self, twist: DomainMatrix, regular: Optional[bool] = None) -> 'Superalgebra':
        return Superalgebra(self.basis_names, self.parities, self.bracket, twist,
                            self.regular if regular is None else regular)

    def structurally_equal(self, other: 'Superalgebra') -> bool:
        return (
            self.basis_names == other.basis_names
            and self.parities == other.parities
            and self.bracket == other.bracket
            and self.twist_rows == other.twist_rows
            and self.regular == other.regular
        )

    def __eq__(self, other):
        if not isinstance(other, Superalgebra):
            return NotImplemented
        return self.structurally_equal(other)

    __hash__ = None

    def describe_vector(self, v: Sequence[Any]) -> str:
        """Human-readable form such as "2*x2 - 1/4*y2"."""
        terms = []
        for name, c in zip(self.basis_names, v):
            if c == 0:
                continue
            text = format_rational(c)
            if text == '1':
                terms.append(name)
            elif text == '-1':
                terms.append(f"-{name}")
            else:
                terms.append(f"{text}*{name}")
        if not terms:
            return '0'
        return ' + '.join(terms).replace('+ -', '- ')

    def __repr__(self):
        return f'<Superalgebra dim={self.dim} even={len(self.even_indices)} odd={len(self.odd_indices)} regular={self.regular}>'


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[int, ...]
    lhs: Vector
    rhs: Vector

    def to_dict(self, algebra: Optional[Superalgebra] = None) -> Dict[str, Any]:
        names = [algebra.basis_names[i] for i in self.witness] if algebra else list(self.witness)
        return {
            'axiom': self.axiom,
            'witness': names,
            'lhs': [format_rational(c) for c in self.lhs],
            'rhs': [format_rational(c) for c in self.rhs],
        }


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> List[str]:
        seen = []
        for violation in self.violations:
            if violation.axiom not in seen:
                seen.append(violation.axiom)
        return seen

    def to_dict(self, algebra: Optional[Superalgebra] = None) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'violations': [v.to_dict(algebra) for v in self.violations],
        }

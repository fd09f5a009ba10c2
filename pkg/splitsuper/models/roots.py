import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from splitsuper.models.superalgebra import Superalgebra
from splitsuper.utils.exactlin import (
    Rational, Subspace, Vector, format_rational, is_zero, to_rational, vecmat
)

logger = logging.getLogger(__name__)

MAXIMAL_CONFIRMED = 'MAXIMAL_CONFIRMED'
MAXIMAL_REFUTED = 'MAXIMAL_REFUTED'
MAXIMALITY_UNKNOWN = 'MAXIMALITY_UNKNOWN'


@dataclass(frozen=True, order=True)
class RootFunctional:
    """Values of a functional on the fixed ordered basis h_1, ..., h_m of H_0."""
    coords: Tuple[Rational, ...]

    @classmethod
    def of(cls, values: Sequence[Any]) -> 'RootFunctional':
        return cls(tuple(to_rational(v) for v in values))

    @property
    def is_zero(self) -> bool:
        return is_zero(self.coords)

    def __neg__(self) -> 'RootFunctional':
        return RootFunctional(tuple(-c for c in self.coords))

    def __add__(self, other: 'RootFunctional') -> 'RootFunctional':
        return RootFunctional(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __call__(self, h_coordinates: Sequence[Any]) -> Rational:
        """Evaluate on an element of H_0 given in h_basis coordinates."""
        total = to_rational(0)
        for a, b in zip(self.coords, h_coordinates):
            total += a * to_rational(b)
        return total

    def compose(self, m: DomainMatrix) -> 'RootFunctional':
        """alpha o M, for M given on h_basis coordinates (row vector times matrix)."""
        return RootFunctional(vecmat(self.coords, m))

    def to_list(self) -> List[str]:
        return [format_rational(c) for c in self.coords]

    def __str__(self):
        return '(' + ', '.join(self.to_list()) + ')'


@dataclass(frozen=True)
class RootDecomposition:
    """
    L = H + sum of root spaces, with respect to a MAGSA H.

    `phi_h0` holds phi on H_0 in h_basis coordinates (column j is phi(h_j));
    `phi_perm[i]` is the index of roots[i] o phi^-1, None when it leaves the root set.
    """
    algebra: Superalgebra = field(repr=False, compare=False)
    H: Subspace
    h_basis: Tuple[Vector, ...]
    roots: Tuple[RootFunctional, ...]
    spaces: Tuple[Subspace, ...]
    phi_perm: Tuple[Optional[int], ...]
    residue: Subspace
    phi_h0: DomainMatrix = field(repr=False, compare=False)
    phi_h0_inverse: DomainMatrix = field(repr=False, compare=False)

    @property
    def is_split(self) -> bool:
        return self.residue.is_zero

    @property
    def rank(self) -> int:
        return len(self.h_basis)

    def index_of(self, functional: RootFunctional) -> Optional[int]:
        try:
            return self.roots.index(functional)
        except ValueError:
            return None

    def space_of(self, functional: RootFunctional) -> Subspace:
        """Root space of a functional; H for zero, the zero space for non-roots."""
        if functional.is_zero:
            return self.H
        index = self.index_of(functional)
        if index is None:
            zero = Subspace.zero(self.algebra.dim)
            return Subspace(zero.ambient_dim, even=zero, odd=zero)
        return self.spaces[index]

    def even_roots(self) -> Tuple[int, ...]:
        return tuple(i for i, space in enumerate(self.spaces) if not space.even.is_zero)

    def odd_roots(self) -> Tuple[int, ...]:
        return tuple(i for i, space in enumerate(self.spaces) if not space.odd.is_zero)

    def roots_of_parity(self, parity: int) -> Tuple[int, ...]:
        return self.even_roots() if int(parity) == 0 else self.odd_roots()

    def part(self, index: int, parity: int) -> Subspace:
        space = self.spaces[index]
        return space.even if int(parity) == 0 else space.odd

    def phi_inverse_power(self, functional: RootFunctional, power: int) -> RootFunctional:
        """functional o phi^(-power); negative powers compose with phi itself."""
        result = functional
        step = self.phi_h0_inverse if power >= 0 else self.phi_h0
        for _ in range(abs(power)):
            result = result.compose(step)
        return result

    def orbit(self, index: int) -> List[int]:
        """Indices of alpha, alpha phi^-1, alpha phi^-2, ... until the cycle closes."""
        seen = [index]
        current = self.phi_perm[index]
        while current is not None and current not in seen:
            seen.append(current)
            current = self.phi_perm[current]
        return seen

    def perm_cycles(self) -> List[List[int]]:
        cycles, visited = [], set()
        for i in range(len(self.roots)):
            if i in visited:
                continue
            cycle = self.orbit(i)
            visited.update(cycle)
            cycles.append(cycle)
        return cycles


@dataclass(frozen=True)
class MagsaReport:
    graded: bool
    abelian: bool
    phi_stable: bool
    phi_onto: bool
    phi_h0_bijective: bool
    phi_h_injective: bool
    regular: bool
    maximality: str = MAXIMALITY_UNKNOWN
    extension: Optional[Subspace] = None
    diagnostics: Tuple[str, ...] = ()

    @property
    def conditions_hold(self) -> bool:
        """Abelian, graded, phi-stable and invertible on H_0; onto H in regular mode."""
        base = self.graded and self.abelian and self.phi_stable and self.phi_h0_bijective
        if self.regular:
            return base and self.phi_onto
        return base

    @property
    def passed(self) -> bool:
        return self.conditions_hold and self.maximality != MAXIMAL_REFUTED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'graded': self.graded,
            'abelian': self.abelian,
            'phi_stable': self.phi_stable,
            'phi_onto': self.phi_onto,
            'phi_h0_bijective': self.phi_h0_bijective,
            'phi_h_injective': self.phi_h_injective,
            'maximality': self.maximality,
            'diagnostics': list(self.diagnostics),
        }


@dataclass(frozen=True)
class TransportIssue:
    check: str
    roots: Tuple[int, ...]
    parity: Optional[int]
    detail: str

    def to_dict(self) -> Dict[str, Any]:
        return {'check': self.check, 'roots': list(self.roots), 'parity': self.parity, 'detail': self.detail}


@dataclass(frozen=True)
class TransportReport:
    issues: Tuple[TransportIssue, ...] = ()
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.issues


@dataclass(frozen=True, order=True)
class SignedRoot:
    """sign * roots[root_index], an element of +-Lambda."""
    root_index: int
    sign: int = 1

    def functional(self, dec: RootDecomposition) -> RootFunctional:
        base = dec.roots[self.root_index]
        return base if self.sign > 0 else -base

    def label(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.root_index}"


@dataclass(frozen=True)
class ConnectionWitness:
    """
    A connection alpha_1, ..., alpha_k from `source` to `target`.

    alpha_1 = source o phi^-start_exponent and the last partial sum equals
    terminal_sign * target o phi^-terminal_exponent.
    """
    source: int
    target: int
    chain: Tuple[RootFunctional, ...]
    partial_sums: Tuple[RootFunctional, ...]
    start_exponent: int
    terminal_sign: int
    terminal_exponent: int

    @property
    def length(self) -> int:
        return len(self.chain)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'source': self.source,
            'target': self.target,
            'chain': [a.to_list() for a in self.chain],
            'partial_sums': [s.to_list() for s in self.partial_sums],
            'start_exponent': self.start_exponent,
            'terminal_sign': self.terminal_sign,
            'terminal_exponent': self.terminal_exponent,
        }


@dataclass(frozen=True)
class RootPartition:
    classes: Tuple[Tuple[int, ...], ...]

    @property
    def class_of(self) -> Dict[int, int]:
        return {root: class_id for class_id, members in enumerate(self.classes) for root in members}

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(min(members) for members in self.classes)

    def __len__(self):
        return len(self.classes)

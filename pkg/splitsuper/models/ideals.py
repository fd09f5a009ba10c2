from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from splitsuper.models.superalgebra import Superalgebra
from splitsuper.utils.exactlin import Subspace, Vector

SIMPLE = 'SIMPLE'
NOT_SIMPLE = 'NOT_SIMPLE'
INCONCLUSIVE = 'INCONCLUSIVE'
ORACLE_INAPPLICABLE = 'ORACLE_INAPPLICABLE'


@dataclass(frozen=True)
class ClassIdeal:
    """The ideal H_[a] + V_[a] attached to one connection class."""
    class_id: int
    roots: Tuple[int, ...]
    H_part: Subspace
    V_part: Subspace
    total: Subspace
    certified_subalgebra: bool
    certified_ideal: bool

    @property
    def label(self) -> int:
        return min(self.roots)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'class_id': self.class_id,
            'label': self.label,
            'roots': list(self.roots),
            'dim_H_part': self.H_part.dim,
            'dim_V_part': self.V_part.dim,
            'dim': self.total.dim,
            'certified_subalgebra': self.certified_subalgebra,
            'certified_ideal': self.certified_ideal,
        }


@dataclass(frozen=True)
class IdealDecomposition:
    U: Subspace
    ideals: Tuple[ClassIdeal, ...]
    spanning: bool
    direct_sum: bool
    pairwise_orthogonal: bool


@dataclass(frozen=True)
class StructureFlags:
    symmetric_roots: bool
    maximal_length: bool
    root_multiplicative: bool
    center_zero: bool
    h_generated: bool
    all_connected: bool

    @property
    def hypotheses(self) -> bool:
        """Hypotheses under which simplicity is decided by connectivity."""
        return self.symmetric_roots and self.maximal_length and self.root_multiplicative and self.center_zero

    @property
    def component_hypotheses(self) -> bool:
        return self.hypotheses and self.h_generated

    def to_dict(self) -> Dict[str, bool]:
        return {
            'symmetric_roots': self.symmetric_roots,
            'maximal_length': self.maximal_length,
            'root_multiplicative': self.root_multiplicative,
            'center_zero': self.center_zero,
            'h_generated': self.h_generated,
            'all_connected': self.all_connected,
        }


@dataclass(frozen=True)
class IdealSupport:
    even_roots: Tuple[int, ...]
    odd_roots: Tuple[int, ...]
    h_even: Subspace
    h_odd: Subspace
    reconstructs: bool


@dataclass(frozen=True)
class GeneratedIdeal:
    seed: Vector
    closure: Subspace
    rounds: int


@dataclass(frozen=True)
class OracleVerdict:
    verdict: str
    witness: Optional[GeneratedIdeal] = None
    reasons: Tuple[str, ...] = ()


@dataclass(frozen=True)
class SimplicityVerdict:
    verdict: str
    method: str
    reasons: Tuple[str, ...] = ()
    witness: Optional[Subspace] = None
    oracle: Optional[OracleVerdict] = None


@dataclass(frozen=True)
class SimpleComponent:
    ideal: ClassIdeal
    algebra: Superalgebra = field(repr=False)
    H: Subspace = field(repr=False)
    verdict: SimplicityVerdict = field(repr=False)

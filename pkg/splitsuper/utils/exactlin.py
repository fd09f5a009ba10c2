"""
Exact rational linear algebra.

Scalars are elements of sympy's ``QQ`` domain, vectors are tuples of them and
operators are ``DomainMatrix`` objects acting on column vectors
(``m[k][j]`` is the coefficient of the k-th basis vector in the image of the
j-th). Subspaces are stored by their reduced row echelon basis, so equal
subspaces compare equal.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from splitsuper.exceptions import DimensionMismatchError, ParseError

logger = logging.getLogger(__name__)

Rational = QQ.dtype
Vector = Tuple[Any, ...]

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')

ZERO = QQ(0)
ONE = QQ(1)


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Rational:
    """
    Parse a rational written as "p" or "p/q".

    Args:
        text: The string to parse

    Returns:
        The rational in lowest terms

    Raises:
        ParseError: If the text is not an integer or integer fraction
    """
    match = _RATIONAL_PATTERN.match(text) if isinstance(text, str) else None
    if not match:
        raise ParseError(f"Not a rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"Zero denominator in {text!r}")
    return QQ(numerator, denominator)


def to_rational(value: Any) -> Rational:
    """Coerce ints, strings, fractions and sympy rationals to a QQ element."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError(f"Refusing to treat boolean {value} as a rational")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, tuple) and len(value) == 2:
        return QQ(int(value[0]), int(value[1]))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return QQ(int(value.numerator), int(value.denominator))
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return QQ(int(value.p), int(value.q))
    raise TypeError(f"Cannot interpret {value!r} as an exact rational")


def format_rational(value: Any) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    value = to_rational(value)
    numerator = int(value.numerator)
    denominator = int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------

def vector(values: Iterable[Any]) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return tuple(ZERO for _ in range(n))


def unit_vector(n: int, index: int) -> Vector:
    if not 0 <= index < n:
        raise DimensionMismatchError(f"Unit vector index {index} outside dimension {n}")
    return tuple(ONE if i == index else ZERO for i in range(n))


def is_zero(v: Sequence[Any]) -> bool:
    return all(c == 0 for c in v)


def _check_same_length(v: Sequence[Any], w: Sequence[Any]) -> None:
    if len(v) != len(w):
        raise DimensionMismatchError(f"Vector lengths differ: {len(v)} != {len(w)}")


def add_vectors(v: Sequence[Any], w: Sequence[Any]) -> Vector:
    _check_same_length(v, w)
    return tuple(a + b for a, b in zip(v, w))


def subtract_vectors(v: Sequence[Any], w: Sequence[Any]) -> Vector:
    _check_same_length(v, w)
    return tuple(a - b for a, b in zip(v, w))


def scale_vector(c: Any, v: Sequence[Any]) -> Vector:
    c = to_rational(c)
    return tuple(c * a for a in v)


def linear_combination(coefficients: Sequence[Any], vectors: Sequence[Sequence[Any]], n: int) -> Vector:
    """Return sum(c_i * v_i) in dimension n."""
    if len(coefficients) != len(vectors):
        raise DimensionMismatchError(f"{len(coefficients)} coefficients for {len(vectors)} vectors")
    result = [ZERO] * n
    for c, v in zip(coefficients, vectors):
        if c == 0:
            continue
        if len(v) != n:
            raise DimensionMismatchError(f"Vector of length {len(v)} in dimension {n}")
        for i, a in enumerate(v):
            if a != 0:
                result[i] += c * a
    return tuple(result)


def homogeneous_parts(v: Sequence[Any], parities: Sequence[int]) -> Tuple[Vector, Vector]:
    """Split v into its even and odd components."""
    _check_same_length(v, parities)
    even = tuple(a if p == 0 else ZERO for a, p in zip(v, parities))
    odd = tuple(a if p == 1 else ZERO for a, p in zip(v, parities))
    return even, odd


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def matrix(rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> DomainMatrix:
    """
    Build a dense QQ matrix from rows.

    Args:
        rows: Row entries, anything `to_rational` accepts
        ncols: Column count, required when `rows` is empty

    Returns:
        DomainMatrix over QQ
    """
    nrows = len(rows)
    if ncols is None:
        if not nrows:
            raise DimensionMismatchError("Column count required for an empty matrix")
        ncols = len(rows[0])
    converted = []
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatchError(f"Row of length {len(row)} in a matrix with {ncols} columns")
        converted.append([to_rational(x) for x in row])
    return DomainMatrix(converted, (nrows, ncols), QQ)


def from_columns(columns: Sequence[Sequence[Any]], nrows: int) -> DomainMatrix:
    """Build the matrix whose j-th column is columns[j]."""
    rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
    return matrix(rows, len(columns))


def identity_matrix(n: int) -> DomainMatrix:
    return matrix([unit_vector(n, i) for i in range(n)], n)


def zero_matrix(nrows: int, ncols: int) -> DomainMatrix:
    return matrix([zero_vector(ncols) for _ in range(nrows)], ncols)


def diagonal_matrix(entries: Sequence[Any]) -> DomainMatrix:
    n = len(entries)
    return matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def matrix_rows(m: DomainMatrix) -> List[Vector]:
    return [tuple(row) for row in m.to_list()]


def column(m: DomainMatrix, j: int) -> Vector:
    return tuple(row[j] for row in m.to_list())


def matvec(m: DomainMatrix, v: Sequence[Any]) -> Vector:
    """Apply m to the column vector v."""
    nrows, ncols = m.shape
    if len(v) != ncols:
        raise DimensionMismatchError(f"Matrix with {ncols} columns applied to a vector of length {len(v)}")
    if nrows == 0 or ncols == 0:
        return zero_vector(nrows)
    product = m * matrix([[x] for x in v], 1)
    return tuple(row[0] for row in product.to_list())


def vecmat(v: Sequence[Any], m: DomainMatrix) -> Vector:
    """The row vector v times m."""
    nrows, ncols = m.shape
    if len(v) != nrows:
        raise DimensionMismatchError(f"Row vector of length {len(v)} times a matrix with {nrows} rows")
    if nrows == 0 or ncols == 0:
        return zero_vector(ncols)
    return tuple((matrix([v], nrows) * m).to_list()[0])


def matrices_equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and a.to_list() == b.to_list()


def is_zero_matrix(m: DomainMatrix) -> bool:
    return all(c == 0 for row in m.to_list() for c in row)


def _rref_rows(rows: Sequence[Sequence[Any]], ncols: int) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
    if not rows or ncols == 0:
        return (), ()
    reduced, pivots = matrix(rows, ncols).rref()
    kept = reduced.to_list()[:len(pivots)]
    return tuple(tuple(row) for row in kept), tuple(pivots)


def rref(m: DomainMatrix) -> DomainMatrix:
    """
    Reduced row echelon form with zero rows dropped.

    Args:
        m: Any QQ matrix

    Returns:
        The RREF of m, one row per pivot (0 rows when m has rank 0)
    """
    nrows, ncols = m.shape
    rows, _ = _rref_rows(matrix_rows(m) if nrows else [], ncols)
    return matrix(rows, ncols)


def rank(m: DomainMatrix) -> int:
    nrows, ncols = m.shape
    _, pivots = _rref_rows(matrix_rows(m) if nrows else [], ncols)
    return len(pivots)


def is_invertible(m: DomainMatrix) -> bool:
    nrows, ncols = m.shape
    return nrows == ncols and rank(m) == nrows


def inverse(m: DomainMatrix) -> DomainMatrix:
    if not is_invertible(m):
        raise ValueError(f"Matrix of shape {m.shape} is not invertible")
    if m.shape[0] == 0:
        return m
    return m.to_dense().inv()


def kernel(m: DomainMatrix) -> 'Subspace':
    """
    Null space of m.

    Args:
        m: A QQ matrix with `cols` columns

    Returns:
        Subspace of QQ^cols of dimension cols - rank(m)
    """
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return Subspace.full(ncols)
    return Subspace.span(ncols, m.nullspace().to_list())


def solve_combination(vectors: Sequence[Sequence[Any]], target: Sequence[Any]) -> Optional[Vector]:
    """
    Find coefficients c with sum(c_i * vectors[i]) = target.

    Returns:
        One solution (free variables set to zero), or None if target is not in the span
    """
    n = len(target)
    k = len(vectors)
    if k == 0:
        return () if is_zero(target) else None
    augmented = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    rows, pivots = _rref_rows(augmented, k + 1)
    if pivots and pivots[-1] == k:
        return None
    solution = [ZERO] * k
    for row, pivot in zip(rows, pivots):
        solution[pivot] = row[k]
    return tuple(solution)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """
    A linear subspace of QQ^ambient_dim in canonical form.

    `basis` holds the nonzero RREF rows and `pivots` their pivot columns.
    `even` and `odd` are present when the subspace has been split by parity;
    they do not take part in equality.
    """
    ambient_dim: int
    basis: Tuple[Vector, ...] = ()
    pivots: Tuple[int, ...] = ()
    even: Optional['Subspace'] = field(default=None, compare=False, repr=False)
    odd: Optional['Subspace'] = field(default=None, compare=False, repr=False)

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Any]]) -> 'Subspace':
        vectors = [vector(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, pivots = _rref_rows(vectors, ambient_dim)
        return cls(ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> 'Subspace':
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)),
                   tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> 'Subspace':
        """Span of the given standard basis vectors."""
        return cls.span(ambient_dim, [unit_vector(ambient_dim, i) for i in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_graded(self) -> bool:
        return self.even is not None and self.odd is not None

    def reduce(self, v: Sequence[Any]) -> Vector:
        """Residual of v after clearing this subspace's pivot columns."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        residual = list(vector(v))
        for row, pivot in zip(self.basis, self.pivots):
            c = residual[pivot]
            if c != 0:
                for i, a in enumerate(row):
                    if a != 0:
                        residual[i] -= c * a
        return tuple(residual)

    def contains(self, v: Sequence[Any]) -> bool:
        return is_zero(self.reduce(v))

    def contains_subspace(self, other: 'Subspace') -> bool:
        _check_ambient(self, other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence[Any]) -> Vector:
        """Coefficients of v on the RREF basis."""
        if not self.contains(v):
            raise ValueError("Vector does not lie in the subspace")
        return tuple(to_rational(v[p]) for p in self.pivots)

    def vector_from(self, coefficients: Sequence[Any]) -> Vector:
        return linear_combination(coefficients, self.basis, self.ambient_dim)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"Ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}")


def _with_parts(space: Subspace, even: Optional[Subspace], odd: Optional[Subspace]) -> Subspace:
    if even is None or odd is None:
        return space
    return replace(space, even=even, odd=odd)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    total = Subspace.span(a.ambient_dim, a.basis + b.basis)
    if a.is_graded and b.is_graded:
        return _with_parts(total, subspace_sum(a.even, b.even), subspace_sum(a.odd, b.odd))
    return total


def sum_of_subspaces(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    total = Subspace.zero(ambient_dim)
    total = replace(total, even=Subspace.zero(ambient_dim), odd=Subspace.zero(ambient_dim))
    for space in spaces:
        total = subspace_sum(total, space)
    return total


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """
    Intersection via the kernel of [A^T | -B^T].

    Graded inputs give a graded result, intersected part by part.
    """
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.is_zero or b.is_zero:
        result = Subspace.zero(n)
    else:
        columns = list(a.basis) + [scale_vector(-1, row) for row in b.basis]
        null = kernel(from_columns(columns, n))
        vectors = [linear_combination(x[:a.dim], a.basis, n) for x in null.basis]
        result = Subspace.span(n, vectors)
    if a.is_graded and b.is_graded:
        return _with_parts(result, subspace_intersect(a.even, b.even), subspace_intersect(a.odd, b.odd))
    return result


def contains(a: Subspace, v: Sequence[Any]) -> bool:
    return a.contains(v)


def image(m: DomainMatrix, space: Subspace) -> Subspace:
    """The subspace m(space); graded parts are mapped too when present."""
    if m.shape[1] != space.ambient_dim:
        raise DimensionMismatchError(f"Operator on dimension {m.shape[1]} applied to a subspace of {space.ambient_dim}")
    n = m.shape[0]
    result = Subspace.span(n, [matvec(m, v) for v in space.basis])
    if space.is_graded:
        return _with_parts(result, image(m, space.even), image(m, space.odd))
    return result


def parity_subspace(parities: Sequence[int], parity: int) -> Subspace:
    n = len(parities)
    return Subspace.coordinate(n, [i for i, p in enumerate(parities) if p == parity])


def split_by_parity(space: Subspace, parities: Sequence[int]) -> Optional[Subspace]:
    """
    Attach even and odd parts to a subspace.

    Returns:
        The graded subspace, or None if the subspace is not graded
    """
    if space.ambient_dim != len(parities):
        raise DimensionMismatchError(f"{len(parities)} parities for ambient dimension {space.ambient_dim}")
    even = subspace_intersect(space, parity_subspace(parities, 0))
    odd = subspace_intersect(space, parity_subspace(parities, 1))
    if even.dim + odd.dim != space.dim:
        return None
    return replace(space, even=even, odd=odd)


def graded_span(parities: Sequence[int], vectors: Iterable[Sequence[Any]]) -> Subspace:
    """Graded subspace spanned by the homogeneous components of the vectors."""
    n = len(parities)
    evens, odds = [], []
    for v in vectors:
        even, odd = homogeneous_parts(v, parities)
        if not is_zero(even):
            evens.append(even)
        if not is_zero(odd):
            odds.append(odd)
    even_space = Subspace.span(n, evens)
    odd_space = Subspace.span(n, odds)
    total = Subspace.span(n, even_space.basis + odd_space.basis)
    return replace(total, even=even_space, odd=odd_space)


def greedy_complement(inner: Subspace, candidates: Iterable[Sequence[Any]]) -> List[Vector]:
    """
    Pick candidates in order that extend `inner`, skipping those already spanned.

    Returns:
        The chosen candidates
    """
    current = inner
    chosen = []
    for candidate in candidates:
        if not current.contains(candidate):
            chosen.append(vector(candidate))
            current = Subspace.span(inner.ambient_dim, current.basis + (vector(candidate),))
    return chosen


def restrict_operator(m: DomainMatrix, space: Subspace) -> Optional[DomainMatrix]:
    """
    Matrix of m on an invariant subspace, in the subspace's RREF coordinates.

    Returns:
        The dim x dim matrix, or None when m does not preserve the subspace
    """
    columns = []
    for b in space.basis:
        w = matvec(m, b)
        if not space.contains(w):
            return None
        columns.append(space.coordinates(w))
    return from_columns(columns, space.dim)


# ---------------------------------------------------------------------------
# Simultaneous eigenspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenBlock:
    """A common eigenspace; `split` is False for residue blocks with no rational eigenbasis."""
    eigenvalues: Tuple[Rational, ...]
    space: Subspace
    split: bool = True


def _evaluate_factor(coefficients: Sequence[Any], m: DomainMatrix, k: int) -> DomainMatrix:
    """f(m) by Horner's rule, for f given by its coefficients, leading first."""
    value = identity_matrix(k) * QQ.convert(coefficients[0])
    for c in coefficients[1:]:
        value = value * m + identity_matrix(k) * QQ.convert(c)
    return value


def _lift(space: Subspace, coordinates: Sequence[Vector]) -> Subspace:
    return Subspace.span(space.ambient_dim, [space.vector_from(c) for c in coordinates])


def _rational_eigenspaces(m: DomainMatrix,
                          space: Subspace) -> Optional[Tuple[List[Tuple[Rational, Subspace]], Optional[Subspace]]]:
    """
    Rational eigenspaces of m on an invariant block, plus the leftover.

    The leftover is the sum of the primary components of irreducible
    factors of degree above 1 and of defective eigenvalues.

    Returns:
        (sorted (eigenvalue, eigenspace) pairs, leftover or None), or None when m leaves the block
    """
    restricted = restrict_operator(m, space)
    if restricted is None:
        logger.debug(f"Operator does not preserve a block of dimension {space.dim}")
        return None
    restricted = restricted.to_dense()
    k = space.dim
    pieces = []
    leftover: List[Vector] = []
    for coefficients, multiplicity in restricted.charpoly_factor_list():
        factor = _evaluate_factor(coefficients, restricted, k)
        if len(coefficients) == 2:
            value = -QQ.convert(coefficients[1]) / QQ.convert(coefficients[0])
            eigen_coordinates = kernel(factor)
            if eigen_coordinates.dim == multiplicity:
                pieces.append((value, _lift(space, eigen_coordinates.basis)))
                continue
            logger.debug(f"Eigenvalue {format_rational(value)} is defective on a block of dimension {k}")
        else:
            logger.debug(f"Irreducible factor of degree {len(coefficients) - 1} on a block of dimension {k}")
        leftover.extend(kernel(factor ** multiplicity).basis)
    residue = _lift(space, leftover) if leftover else None
    return sorted(pieces, key=lambda piece: piece[0]), residue


def simultaneous_eigenspaces(ops: Sequence[DomainMatrix], dim: Optional[int] = None,
                             space: Optional[Subspace] = None) -> List[EigenBlock]:
    """
    Common rational eigenspace refinement of a family of operators.

    Starting from `space` (default: everything), every block is split into
    the rational eigenspaces of each operator in turn. The part of a block
    where an operator has irrational or defective eigenvalues stops
    refining and is returned with ``split=False``; so is a whole block the
    operator does not preserve.

    Args:
        ops: Square operators of equal size
        dim: Ambient dimension, required when `ops` and `space` are both empty
        space: Starting subspace

    Returns:
        Split blocks sorted by eigenvalue vector, followed by residue blocks
    """
    if dim is None:
        if ops:
            dim = ops[0].shape[0]
        elif space is not None:
            dim = space.ambient_dim
        else:
            raise DimensionMismatchError("Dimension required when no operators are given")
    for op in ops:
        if op.shape != (dim, dim):
            raise DimensionMismatchError(f"Operator of shape {op.shape} in dimension {dim}")
    start = space if space is not None else Subspace.full(dim)
    if start.ambient_dim != dim:
        raise DimensionMismatchError(f"Starting space in dimension {start.ambient_dim}, operators in {dim}")
    if start.is_zero:
        return []

    blocks = [EigenBlock((), start)]
    residue: List[EigenBlock] = []
    for op in ops:
        refined = []
        for block in blocks:
            result = _rational_eigenspaces(op, block.space)
            if result is None:
                residue.append(EigenBlock(block.eigenvalues, block.space, split=False))
                continue
            pieces, leftover = result
            for value, piece in pieces:
                refined.append(EigenBlock(block.eigenvalues + (value,), piece))
            if leftover is not None:
                residue.append(EigenBlock(block.eigenvalues, leftover, split=False))
        blocks = refined
    blocks.sort(key=lambda block: block.eigenvalues)
    logger.debug(f"Eigen refinement: {len(blocks)} blocks, {len(residue)} residue blocks")
    return blocks + residue

import logging
from dataclasses import replace
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from splitsuper.exceptions import DimensionMismatchError, ValidationFailure
from splitsuper.models.superalgebra import Parity, Superalgebra, ValidationReport, Violation, super_sign
from splitsuper.utils.exactlin import (
    Subspace, Vector, add_vectors, column, from_columns, graded_span, homogeneous_parts, identity_matrix,
    image, inverse, is_invertible, is_zero, matvec, scale_vector,
    to_rational, unit_vector, zero_vector, split_by_parity
)

logger = logging.getLogger(__name__)

GRADING = 'GRADING'
SKEW_SUPERSYMMETRY = 'SKEW_SUPERSYMMETRY'
HOM_JACOBI = 'HOM_JACOBI'
TWIST_EVEN = 'TWIST_EVEN'
TWIST_HOMOMORPHISM = 'TWIST_HOMOMORPHISM'
TWIST_INVERTIBLE = 'TWIST_INVERTIBLE'


def _check_vector(alg: Superalgebra, v: Sequence) -> None:
    if len(v) != alg.dim:
        raise DimensionMismatchError(f"Vector of length {len(v)} for an algebra of dimension {alg.dim}")


def bracket_eval(alg: Superalgebra, x: Sequence, y: Sequence) -> Vector:
    """
    Bilinear extension of the structure constants.

    Args:
        alg: The algebra
        x: Left argument, coordinates on the basis
        y: Right argument

    Returns:
        Coordinates of [x, y]
    """
    _check_vector(alg, x)
    _check_vector(alg, y)
    result = [to_rational(0)] * alg.dim
    for (i, j), terms in alg.bracket.items():
        a, b = x[i], y[j]
        if a == 0 or b == 0:
            continue
        weight = to_rational(a) * to_rational(b)
        for k, c in terms.items():
            result[k] += weight * c
    return tuple(result)


def basis_bracket(alg: Superalgebra, i: int, j: int) -> Vector:
    result = [to_rational(0)] * alg.dim
    for k, c in alg.product(i, j).items():
        result[k] = c
    return tuple(result)


def twist_apply(alg: Superalgebra, v: Sequence) -> Vector:
    _check_vector(alg, v)
    return matvec(alg.twist, v)


def twist_image(alg: Superalgebra, space: Subspace) -> Subspace:
    return image(alg.twist, space)


def twist_inverse(alg: Superalgebra) -> DomainMatrix:
    if not is_invertible(alg.twist):
        raise ValidationFailure("Twist map is not invertible")
    return inverse(alg.twist)


def ad_matrix(alg: Superalgebra, v: Sequence) -> DomainMatrix:
    """Matrix of ad_v = [v, -] on the basis."""
    _check_vector(alg, v)
    columns = [bracket_eval(alg, v, unit_vector(alg.dim, j)) for j in range(alg.dim)]
    return from_columns(columns, alg.dim)


def bracket_span(alg: Superalgebra, left: Subspace, right: Subspace) -> Subspace:
    """Graded span of all [a, b] with a in `left`, b in `right`."""
    left_vectors = _homogeneous_basis(alg, left)
    right_vectors = _homogeneous_basis(alg, right)
    products = [bracket_eval(alg, a, b) for a in left_vectors for b in right_vectors]
    return graded_span(alg.parity_list, products)


def brackets_vanish(alg: Superalgebra, left: Subspace, right: Subspace) -> bool:
    for a in left.basis:
        for b in right.basis:
            if not is_zero(bracket_eval(alg, a, b)):
                return False
    return True


def _homogeneous_basis(alg: Superalgebra, space: Subspace) -> List[Vector]:
    if space.is_graded:
        return list(space.even.basis) + list(space.odd.basis)
    vectors = []
    for v in space.basis:
        even, odd = homogeneous_parts(v, alg.parity_list)
        vectors.extend(w for w in (even, odd) if not is_zero(w))
    return vectors


def grade(alg: Superalgebra, space: Subspace) -> Subspace:
    """
    Attach parity parts to a subspace of the algebra.

    Raises:
        ValidationFailure: If the subspace is not graded
    """
    graded = split_by_parity(space, alg.parity_list)
    if graded is None:
        raise ValidationFailure("Subspace is not graded", details={'dim': space.dim})
    return graded


# ---------------------------------------------------------------------------
# Axiom validation
# ---------------------------------------------------------------------------

def _grading_violations(alg: Superalgebra) -> List[Violation]:
    violations = []
    for (i, j), terms in sorted(alg.bracket.items()):
        expected = alg.parities[i] + alg.parities[j]
        for k in sorted(terms):
            if alg.parities[k] != expected:
                value = basis_bracket(alg, i, j)
                even, odd = homogeneous_parts(value, alg.parity_list)
                violations.append(Violation(GRADING, (i, j, k), value, even if expected == Parity.EVEN else odd))
    return violations


def _skew_violations(alg: Superalgebra) -> List[Violation]:
    violations = []
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            lhs = basis_bracket(alg, i, j)
            rhs = scale_vector(-super_sign(alg.parities[i], alg.parities[j]), basis_bracket(alg, j, i))
            if lhs != rhs:
                violations.append(Violation(SKEW_SUPERSYMMETRY, (i, j), lhs, rhs))
    return violations


def _hom_jacobi_violations(alg: Superalgebra, exhaustive: bool) -> List[Violation]:
    n = alg.dim
    products = {(i, j): basis_bracket(alg, i, j) for i in range(n) for j in range(n)}
    twisted = [column(alg.twist, k) for k in range(n)]
    p = alg.parities
    zero = zero_vector(n)
    if exhaustive:
        triples = cartesian(range(n), repeat=3)
    else:
        triples = ((i, j, k) for i in range(n) for j in range(i, n) for k in range(j, n))
    violations = []
    for i, j, k in triples:
        total = zero
        for sign, left, phi_arg in (
            (super_sign(p[i], p[k]), products[(i, j)], twisted[k]),
            (super_sign(p[i], p[j]), products[(j, k)], twisted[i]),
            (super_sign(p[j], p[k]), products[(k, i)], twisted[j]),
        ):
            if is_zero(left):
                continue
            total = add_vectors(total, scale_vector(sign, bracket_eval(alg, left, phi_arg)))
        if not is_zero(total):
            violations.append(Violation(HOM_JACOBI, (i, j, k), total, zero))
    return violations


def _twist_even_violations(alg: Superalgebra) -> List[Violation]:
    violations = []
    for j in range(alg.dim):
        image_j = column(alg.twist, j)
        even, odd = homogeneous_parts(image_j, alg.parity_list)
        expected = even if alg.parities[j] == Parity.EVEN else odd
        if image_j != expected:
            violations.append(Violation(TWIST_EVEN, (j,), image_j, expected))
    return violations


def _homomorphism_violations(alg: Superalgebra, exhaustive: bool) -> List[Violation]:
    n = alg.dim
    twisted = [column(alg.twist, k) for k in range(n)]
    violations = []
    for i in range(n):
        for j in range(0 if exhaustive else i, n):
            lhs = matvec(alg.twist, basis_bracket(alg, i, j))
            rhs = bracket_eval(alg, twisted[i], twisted[j])
            if lhs != rhs:
                violations.append(Violation(TWIST_HOMOMORPHISM, (i, j), lhs, rhs))
    return violations


def validate(alg: Superalgebra) -> ValidationReport:
    """
    Check every Hom-Lie superalgebra axiom on basis tuples.

    Covers bracket grading, skew-supersymmetry, the super Hom-Jacobi identity,
    evenness of the twist, the twist being a bracket homomorphism, and
    invertibility of the twist when the algebra claims to be regular.
    Jacobi and homomorphism checks run over ordered tuples only when
    skew-supersymmetry holds, and over all tuples otherwise.

    Args:
        alg: The algebra to check

    Returns:
        ValidationReport listing every failure with its witness
    """
    violations: List[Violation] = []
    violations.extend(_grading_violations(alg))
    skew = _skew_violations(alg)
    violations.extend(skew)
    exhaustive = bool(skew)
    violations.extend(_hom_jacobi_violations(alg, exhaustive))
    violations.extend(_twist_even_violations(alg))
    violations.extend(_homomorphism_violations(alg, exhaustive))
    if alg.regular and not is_invertible(alg.twist):
        violations.append(Violation(TWIST_INVERTIBLE, (), (), ()))
    report = ValidationReport(tuple(violations))
    if report.passed:
        logger.debug(f"Validated {alg!r}")
    else:
        logger.info(f"Validation of {alg!r} found {len(violations)} violations: {report.axioms_violated()}")
    return report


def require_valid(alg: Superalgebra) -> ValidationReport:
    report = validate(alg)
    if not report.passed:
        raise ValidationFailure(
            f"Not a {'regular ' if alg.regular else ''}Hom-Lie superalgebra: {', '.join(report.axioms_violated())}",
            details=report.to_dict(alg),
        )
    return report


def is_lie_superalgebra(alg: Superalgebra) -> bool:
    return validate(alg.with_twist(identity_matrix(alg.dim), regular=True)).passed


def is_even_automorphism(alg: Superalgebra, psi: DomainMatrix) -> bool:
    """psi invertible, parity preserving and compatible with the bracket."""
    if psi.shape != (alg.dim, alg.dim):
        return False
    candidate = alg.with_twist(psi, regular=True)
    if not is_invertible(psi) or _twist_even_violations(candidate):
        return False
    return not _homomorphism_violations(candidate, exhaustive=True)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def yau_twist(lie: Superalgebra, psi: DomainMatrix) -> Superalgebra:
    """
    Hom-deformation of a Lie superalgebra along an even automorphism.

    The new bracket is psi([x, y]) and the new twist is psi.

    Raises:
        ValidationFailure: `lie` is not a Lie superalgebra or psi is not an even automorphism of it
    """
    if not is_lie_superalgebra(lie):
        raise ValidationFailure("Yau twist needs a Lie superalgebra with identity twist")
    if not is_even_automorphism(lie, psi):
        raise ValidationFailure("Yau twist map is not an even automorphism")
    bracket: Dict[Tuple[int, int], Dict[int, object]] = {}
    for (i, j), terms in lie.bracket.items():
        twisted = matvec(psi, basis_bracket(lie, i, j))
        entries = {k: c for k, c in enumerate(twisted) if c != 0}
        if entries:
            bracket[(i, j)] = entries
    return Superalgebra(lie.basis_names, lie.parities, bracket, psi.to_dense(), True)


def _check_change_of_basis(alg: Superalgebra, p: DomainMatrix) -> None:
    if p.shape != (alg.dim, alg.dim):
        raise ValidationFailure(f"Change of basis of shape {p.shape} for dimension {alg.dim}")
    if not is_invertible(p):
        raise ValidationFailure("Change of basis is singular")
    for j in range(alg.dim):
        even, odd = homogeneous_parts(column(p, j), alg.parity_list)
        stray = odd if alg.parities[j] == Parity.EVEN else even
        if not is_zero(stray):
            raise ValidationFailure(
                f"Change of basis mixes parities in column {j} ({alg.basis_names[j]})",
                details={'column': j},
            )


def change_of_basis(alg: Superalgebra, p: DomainMatrix,
                    basis_names: Optional[Sequence[str]] = None) -> Superalgebra:
    """
    Rewrite the algebra on the basis given by the columns of p.

    Args:
        alg: The algebra
        p: Invertible parity-preserving matrix; column j is the new j-th basis vector in old coordinates
        basis_names: Names for the new basis (defaults to the old names)

    Returns:
        An isomorphic Superalgebra

    Raises:
        ValidationFailure: p is singular or mixes parities
    """
    _check_change_of_basis(alg, p)
    p_inverse = inverse(p)
    new_basis = [column(p, j) for j in range(alg.dim)]
    bracket = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            value = matvec(p_inverse, bracket_eval(alg, new_basis[i], new_basis[j]))
            entries = {k: c for k, c in enumerate(value) if c != 0}
            if entries:
                bracket[(i, j)] = entries
    twist = p_inverse * alg.twist.to_dense() * p.to_dense()
    names = tuple(basis_names) if basis_names is not None else alg.basis_names
    return Superalgebra(names, alg.parities, bracket, twist, alg.regular)


def transport_subspace(space: Subspace, p: DomainMatrix) -> Subspace:
    """Coordinates of `space` after the change of basis p."""
    return image(inverse(p), space)


def direct_sum(components: Sequence[Superalgebra]) -> Superalgebra:
    """
    Direct sum with block-diagonal twist.

    Basis names get a component suffix when they would collide.
    """
    names: List[str] = []
    all_names = [name for alg in components for name in alg.basis_names]
    suffix = len(set(all_names)) != len(all_names)
    parities: List[Parity] = []
    bracket = {}
    twist_columns = []
    total = sum(alg.dim for alg in components)
    offset = 0
    for position, alg in enumerate(components):
        names.extend(f"{name}_{position + 1}" if suffix else name for name in alg.basis_names)
        parities.extend(alg.parities)
        for (i, j), terms in alg.bracket.items():
            bracket[(i + offset, j + offset)] = {k + offset: c for k, c in terms.items()}
        for j in range(alg.dim):
            image_j = column(alg.twist, j)
            twist_columns.append(tuple([to_rational(0)] * offset) + image_j
                                 + tuple([to_rational(0)] * (total - offset - alg.dim)))
        offset += alg.dim
    regular = all(alg.regular for alg in components)
    return Superalgebra(tuple(names), tuple(parities), bracket, from_columns(twist_columns, total), regular)


def embed_subspace(space: Subspace, offset: int, total: int) -> Subspace:
    """Image of a subspace of a direct summand placed at `offset`."""
    def pad(v):
        return tuple([to_rational(0)] * offset) + tuple(v) + tuple([to_rational(0)] * (total - offset - len(v)))
    result = Subspace.span(total, [pad(v) for v in space.basis])
    if space.is_graded:
        return replace(result, even=embed_subspace(space.even, offset, total),
                       odd=embed_subspace(space.odd, offset, total))
    return result


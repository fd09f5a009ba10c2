import logging
from typing import List, Optional, Sequence

from splitsuper.exceptions import PreconditionUnmet, TheoremViolation
from splitsuper.models.ideals import (
    INCONCLUSIVE, NOT_SIMPLE, ORACLE_INAPPLICABLE, SIMPLE, ClassIdeal, IdealDecomposition, IdealSupport,
    SimpleComponent, SimplicityVerdict, StructureFlags
)
from splitsuper.models.roots import RootDecomposition, RootPartition
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.homsuper_service import (
    ad_matrix, bracket_span, brackets_vanish, grade, twist_image
)
from splitsuper.services.rootspace_service import project, require_split
from splitsuper.utils.exactlin import (
    Subspace, greedy_complement, kernel, matrix, matrix_rows, subspace_intersect, subspace_sum,
    sum_of_subspaces, unit_vector
)

logger = logging.getLogger(__name__)


def _negative_index(dec: RootDecomposition, index: int) -> Optional[int]:
    return dec.index_of(-dec.roots[index])


def generated_h_part(dec: RootDecomposition, roots: Sequence[int]) -> Subspace:
    """Sum of [L_b, L_-b] over the given roots whose negatives are roots."""
    alg = dec.algebra
    parts = []
    for b in roots:
        negative = _negative_index(dec, b)
        if negative is None:
            continue
        parts.append(bracket_span(alg, dec.spaces[b], dec.spaces[negative]))
    return sum_of_subspaces(parts, alg.dim)


def is_ideal(alg: Superalgebra, space: Subspace) -> bool:
    """[space, L] inside space."""
    full = Subspace.full(alg.dim)
    return space.contains_subspace(bracket_span(alg, space, full))


def build_class_ideal(dec: RootDecomposition, partition: RootPartition, class_id: int) -> ClassIdeal:
    """
    The ideal attached to one connection class.

    H_part sums [L_b, L_-b] over class roots b with -b a root, V_part is the
    sum of the class root spaces. The total is certified to be a subalgebra,
    phi-invariant and an ideal of the whole algebra.

    Args:
        dec: Split root decomposition
        partition: Connection classes of dec
        class_id: Position of the class in the partition

    Returns:
        ClassIdeal with both certification flags set

    Raises:
        TheoremViolation: A certification fails
    """
    require_split(dec)
    alg = dec.algebra
    members = partition.classes[class_id]
    H_part = generated_h_part(dec, members)
    if not dec.H.contains_subspace(H_part):
        raise TheoremViolation(f"H part of class {class_id} is not inside H", check='CLASS_IDEAL')
    V_part = sum_of_subspaces([dec.spaces[b] for b in members], alg.dim)
    total = subspace_sum(H_part, V_part)
    if total.dim != H_part.dim + V_part.dim:
        raise TheoremViolation(f"H part and V part of class {class_id} overlap", check='CLASS_IDEAL')

    subalgebra = total.contains_subspace(bracket_span(alg, total, total))
    phi_invariant = twist_image(alg, total) == total
    ideal = is_ideal(alg, total)
    if not (subalgebra and phi_invariant and ideal):
        logger.error(f"Class {class_id} certification: subalgebra={subalgebra} phi={phi_invariant} ideal={ideal}")
        raise TheoremViolation(
            f"Class ideal {class_id} fails certification",
            check='CLASS_IDEAL',
            details={'subalgebra': subalgebra, 'phi_invariant': phi_invariant, 'ideal': ideal},
        )
    return ClassIdeal(class_id, tuple(members), H_part, V_part, total,
                      certified_subalgebra=subalgebra and phi_invariant, certified_ideal=ideal)


def build_class_ideals(dec: RootDecomposition, partition: RootPartition) -> List[ClassIdeal]:
    return [build_class_ideal(dec, partition, c) for c in range(len(partition.classes))]


def check_orthogonality(alg: Superalgebra, ideals: Sequence[ClassIdeal]) -> bool:
    """Brackets between distinct class ideals vanish."""
    for a in range(len(ideals)):
        for b in range(a + 1, len(ideals)):
            if not brackets_vanish(alg, ideals[a].total, ideals[b].total):
                logger.info(f"Class ideals {a} and {b} do not commute")
                return False
    return True


def center(alg: Superalgebra) -> Subspace:
    """Graded subspace of v with [v, L] = 0."""
    rows = []
    for j in range(alg.dim):
        # [v, b_j] = -(+-)[b_j, v], so the kernel of stacked ad_{b_j} suffices
        rows.extend(matrix_rows(ad_matrix(alg, unit_vector(alg.dim, j))))
    if not rows:
        return grade(alg, Subspace.zero(alg.dim))
    return grade(alg, kernel(matrix(rows, alg.dim)))


def global_decomposition(dec: RootDecomposition, partition: RootPartition,
                         ideals: Optional[Sequence[ClassIdeal]] = None) -> IdealDecomposition:
    """
    L = U + sum of class ideals.

    U extends span{[L_a, L_-a]} to H pivot-greedily using H's canonical
    even basis, then its odd basis.

    Raises:
        TheoremViolation: The pieces do not span L, or the sum is not direct although
            the center is zero and H is generated by root brackets
    """
    require_split(dec)
    alg = dec.algebra
    if ideals is None:
        ideals = build_class_ideals(dec, partition)
    generated = generated_h_part(dec, range(len(dec.roots)))
    chosen = greedy_complement(generated, list(dec.H.even.basis) + list(dec.H.odd.basis))
    U = grade(alg, Subspace.span(alg.dim, chosen))

    total = sum_of_subspaces([U] + [ideal.total for ideal in ideals], alg.dim)
    spanning = total.dim == alg.dim
    if not spanning:
        raise TheoremViolation("U and the class ideals do not span the algebra", check='RECONSTRUCTION',
                               details={'dim': total.dim, 'expected': alg.dim})
    direct_sum = U.dim + sum(ideal.total.dim for ideal in ideals) == alg.dim
    orthogonal = check_orthogonality(alg, ideals)
    if center(alg).is_zero and generated == dec.H and not direct_sum:
        raise TheoremViolation("Sum of class ideals is not direct despite zero center and generated H",
                               check='DIRECT_SUM')
    logger.info(f"Global decomposition: dim U = {U.dim}, {len(ideals)} ideals, direct={direct_sum}")
    return IdealDecomposition(U, tuple(ideals), spanning, direct_sum, orthogonal)


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------

def symmetric_roots(dec: RootDecomposition) -> bool:
    return all(_negative_index(dec, i) is not None for i in range(len(dec.roots)))


def maximal_length(dec: RootDecomposition) -> bool:
    return all(space.even.dim <= 1 and space.odd.dim <= 1 for space in dec.spaces)


def root_multiplicative(dec: RootDecomposition) -> bool:
    """
    [L_{a,i}, L_{b,j}] != 0 whenever a phi^-1 + b phi^-1 is a root with a part of parity i + j.
    """
    alg = dec.algebra
    for a in range(len(dec.roots)):
        for b in range(len(dec.roots)):
            target = dec.roots[a].compose(dec.phi_h0_inverse) + dec.roots[b].compose(dec.phi_h0_inverse)
            if target.is_zero:
                continue
            t = dec.index_of(target)
            if t is None:
                continue
            for p in (0, 1):
                for q in (0, 1):
                    left, right = dec.part(a, p), dec.part(b, q)
                    if left.is_zero or right.is_zero or dec.part(t, (p + q) % 2).is_zero:
                        continue
                    if brackets_vanish(alg, left, right):
                        logger.debug(f"Roots {a}, {b} are not multiplicative in parities ({p},{q})")
                        return False
    return True


def h_generated(dec: RootDecomposition) -> bool:
    return generated_h_part(dec, range(len(dec.roots))) == dec.H


def structure_flags(dec: RootDecomposition, partition: RootPartition) -> StructureFlags:
    require_split(dec)
    return StructureFlags(
        symmetric_roots=symmetric_roots(dec),
        maximal_length=maximal_length(dec),
        root_multiplicative=root_multiplicative(dec),
        center_zero=center(dec.algebra).is_zero,
        h_generated=h_generated(dec),
        all_connected=len(partition.classes) <= 1,
    )


def ideal_support(dec: RootDecomposition, ideal: Subspace) -> IdealSupport:
    """
    Roots met by a graded ideal and its intersection with H.

    `reconstructs` is True when the ideal equals (I_0 & H_0) + (I_1 & H_1)
    plus the sum of its intersections with the root space parts.
    """
    alg = dec.algebra
    ideal = grade(alg, ideal)
    even_roots = tuple(i for i in range(len(dec.roots))
                       if not subspace_intersect(ideal.even, dec.part(i, 0)).is_zero)
    odd_roots = tuple(i for i in range(len(dec.roots))
                      if not subspace_intersect(ideal.odd, dec.part(i, 1)).is_zero)
    h_even = subspace_intersect(ideal.even, dec.H.even)
    h_odd = subspace_intersect(ideal.odd, dec.H.odd)
    pieces = [h_even, h_odd]
    pieces += [subspace_intersect(ideal.even, dec.part(i, 0)) for i in even_roots]
    pieces += [subspace_intersect(ideal.odd, dec.part(i, 1)) for i in odd_roots]
    rebuilt = Subspace.span(alg.dim, [v for piece in pieces for v in piece.basis])
    return IdealSupport(even_roots, odd_roots, h_even, h_odd, rebuilt == ideal)


def decomposes_along_roots(dec: RootDecomposition, ideal: Subspace) -> bool:
    """Every H and root-space component of every ideal basis vector lies in the ideal."""
    for v in ideal.basis:
        h_part, root_parts = project(dec, v)
        if not ideal.contains(h_part):
            return False
        if not all(ideal.contains(component) for component in root_parts.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# Simplicity
# ---------------------------------------------------------------------------

def _proper_class_ideal(alg: Superalgebra, ideals: Sequence[ClassIdeal]) -> Optional[ClassIdeal]:
    proper = [ideal for ideal in ideals if 0 < ideal.total.dim < alg.dim]
    if not proper:
        return None
    return min(proper, key=lambda ideal: (ideal.total.dim, ideal.class_id))


def certify_simple(alg: Superalgebra, dec: RootDecomposition, partition: RootPartition) -> SimplicityVerdict:
    """
    Decide graded simplicity where the structure theory allows it.

    Under symmetric roots, maximal length, root multiplicativity and zero
    center, the algebra is simple exactly when all roots are connected and
    H is generated by root brackets (and [L, L] != 0). Outside those
    hypotheses a proper class ideal or the brute-force oracle may still
    settle the question; otherwise the verdict is INCONCLUSIVE.

    Raises:
        TheoremViolation: The oracle and the structure theory disagree
    """
    from splitsuper.services.oracle_service import brute_simplicity

    require_split(dec)
    full = Subspace.full(alg.dim)
    if alg.dim == 0 or brackets_vanish(alg, full, full):
        return SimplicityVerdict(NOT_SIMPLE, 'abelian', ("[L,L] = 0",), witness=None)

    flags = structure_flags(dec, partition)
    oracle = brute_simplicity(alg, dec)
    if flags.hypotheses:
        simple = flags.all_connected and flags.h_generated
        verdict = SIMPLE if simple else NOT_SIMPLE
        reasons = [f"all_connected={flags.all_connected}", f"h_generated={flags.h_generated}"]
        if oracle.verdict != ORACLE_INAPPLICABLE and oracle.verdict != verdict:
            raise TheoremViolation("Oracle and connectivity criterion disagree", check='ORACLE_AGREEMENT',
                                   details={'theorem': verdict, 'oracle': oracle.verdict})
        witness = None
        if not simple:
            proper = _proper_class_ideal(alg, build_class_ideals(dec, partition))
            witness = proper.total if proper else (oracle.witness.closure if oracle.witness else None)
        return SimplicityVerdict(verdict, 'theorem', tuple(reasons), witness=witness, oracle=oracle)

    proper = _proper_class_ideal(alg, build_class_ideals(dec, partition))
    if proper is not None:
        return SimplicityVerdict(NOT_SIMPLE, 'class_ideal',
                                 (f"class ideal {proper.class_id} of dimension {proper.total.dim} is proper",),
                                 witness=proper.total, oracle=oracle)
    if oracle.verdict == SIMPLE:
        if not (flags.all_connected and flags.h_generated):
            raise TheoremViolation("Oracle found a simple algebra with disconnected roots or non-generated H",
                                   check='ORACLE_AGREEMENT')
        return SimplicityVerdict(SIMPLE, 'oracle', oracle.reasons, oracle=oracle)
    if oracle.verdict == NOT_SIMPLE:
        return SimplicityVerdict(NOT_SIMPLE, 'oracle', oracle.reasons,
                                 witness=oracle.witness.closure if oracle.witness else None, oracle=oracle)
    return SimplicityVerdict(INCONCLUSIVE, 'none', ("hypotheses fail and the oracle abstains",), oracle=oracle)


def simple_components(alg: Superalgebra, dec: RootDecomposition,
                      partition: RootPartition) -> List[SimpleComponent]:
    """
    Split the algebra into its class ideals, each certified simple on its own.

    Each class ideal is restricted to a standalone algebra with H_[a] as
    MAGSA and the whole pipeline is re-run on it.

    Raises:
        PreconditionUnmet: One of the hypotheses fails, or H is not generated by root brackets
        TheoremViolation: The sum is not direct or some component is not simple
    """
    from splitsuper.catalog import component_restriction
    from splitsuper.services.connection_service import connection_classes
    from splitsuper.services.rootspace_service import root_decomposition

    flags = structure_flags(dec, partition)
    if not flags.component_hypotheses:
        raise PreconditionUnmet("Simple component decomposition needs symmetric roots, maximal length, "
                                "root multiplicativity, zero center and generated H",
                                details=flags.to_dict())
    ideals = build_class_ideals(dec, partition)
    decomposition = global_decomposition(dec, partition, ideals)
    if not decomposition.direct_sum or decomposition.U.dim != 0:
        raise TheoremViolation("Class ideals do not form a direct sum decomposition", check='DIRECT_SUM')

    components = []
    for ideal in ideals:
        restricted, H = component_restriction(alg, ideal)
        sub_dec = root_decomposition(restricted, H)
        sub_partition = connection_classes(sub_dec)
        verdict = certify_simple(restricted, sub_dec, sub_partition)
        if verdict.verdict != SIMPLE:
            logger.error(f"Component {ideal.class_id} certified {verdict.verdict}")
            raise TheoremViolation(f"Component {ideal.class_id} is not simple", check='COMPONENT_NOT_SIMPLE',
                                   details={'verdict': verdict.verdict, 'reasons': list(verdict.reasons)})
        components.append(SimpleComponent(ideal, restricted, H, verdict))
    return components

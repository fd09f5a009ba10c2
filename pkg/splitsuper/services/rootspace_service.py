import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from splitsuper.exceptions import NotSplitError, TheoremViolation, ValidationFailure
from splitsuper.models.roots import (
    MAXIMAL_CONFIRMED, MAXIMAL_REFUTED, MAXIMALITY_UNKNOWN, MagsaReport, RootDecomposition,
    RootFunctional, TransportIssue, TransportReport
)
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.homsuper_service import (
    ad_matrix, bracket_span, brackets_vanish, grade, twist_image
)
from splitsuper.utils.exactlin import (
    Subspace, Vector, greedy_complement, image, inverse, is_invertible, kernel,
    matrix, matrix_rows, restrict_operator, simultaneous_eigenspaces, solve_combination,
    split_by_parity, subspace_sum, sum_of_subspaces, to_rational
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# MAGSA checks
# ---------------------------------------------------------------------------

def _phi_on_h0(alg: Superalgebra, H: Subspace) -> Optional[DomainMatrix]:
    """phi restricted to H_0 in the RREF coordinates of H_0, or None when H_0 is not stable."""
    return restrict_operator(alg.twist, H.even)


def centralizer(alg: Superalgebra, space: Subspace) -> Subspace:
    """Graded subspace of vectors bracketing to zero with all of `space`."""
    if space.is_zero:
        return grade(alg, Subspace.full(alg.dim))
    rows = []
    for h in space.basis:
        rows.extend(matrix_rows(ad_matrix(alg, h)))
    return grade(alg, kernel(matrix(rows, alg.dim)))


def phi_closure(alg: Superalgebra, space: Subspace) -> Subspace:
    """Smallest phi-stable subspace containing `space`."""
    current = space
    while True:
        grown = subspace_sum(current, twist_image(alg, current))
        if grown == current:
            return current
        current = grown


def extend_to_magsa(alg: Superalgebra, start: Optional[Subspace] = None) -> Subspace:
    """
    Greedily grow an abelian graded phi-stable subspace.

    Homogeneous centralizer vectors are tried in basis order; each is
    adjoined together with its phi-closure whenever the result stays abelian.

    Args:
        alg: The algebra
        start: Abelian graded phi-stable subspace to extend (zero by default)

    Returns:
        A graded subspace no single homogeneous centralizer vector can extend
    """
    current = grade(alg, start if start is not None else Subspace.zero(alg.dim))
    changed = True
    while changed:
        changed = False
        centre = centralizer(alg, current)
        for candidate in list(centre.even.basis) + list(centre.odd.basis):
            if current.contains(candidate):
                continue
            trial = phi_closure(alg, grade(alg, Subspace.span(alg.dim, current.basis + (candidate,))))
            if brackets_vanish(alg, trial, trial):
                current = trial
                changed = True
                break
    logger.debug(f"Greedy MAGSA of dimension {current.dim}")
    return current


def verify_magsa(alg: Superalgebra, H: Subspace) -> MagsaReport:
    """
    Check that H can serve as the MAGSA of a root decomposition.

    Checks H abelian, phi(H) inside H (equal to H in regular mode) and phi
    bijective on H_0. Injectivity of phi on all of H is reported but only
    logged as a warning in non-regular mode. Maximality is confirmed when
    the algebra splits with respect to H, refuted when a strictly larger
    abelian graded phi-stable subspace is found, and unknown otherwise.

    Raises:
        ValidationFailure: If H is not a graded subspace
    """
    graded = split_by_parity(H, alg.parity_list)
    if graded is None:
        raise ValidationFailure("MAGSA candidate is not a graded subspace", details={'dim': H.dim})
    H = graded
    diagnostics: List[str] = []

    abelian = brackets_vanish(alg, H, H)
    if not abelian:
        diagnostics.append("[H,H] != 0")
    phi_h = twist_image(alg, H)
    phi_stable = H.contains_subspace(phi_h)
    phi_onto = phi_stable and phi_h == H
    if not phi_stable:
        diagnostics.append("phi(H) is not contained in H")
    elif not phi_onto:
        diagnostics.append("phi(H) is a proper subspace of H")
    phi_h0 = _phi_on_h0(alg, H)
    phi_h0_bijective = phi_h0 is not None and is_invertible(phi_h0)
    if not phi_h0_bijective:
        diagnostics.append("phi is not a bijection of H_0")
    phi_h_injective = phi_h.dim == H.dim
    if not phi_h_injective:
        diagnostics.append("phi is not injective on H")
        if not alg.regular:
            logger.warning("phi restricted to H is not injective; continuing with phi on H_0 only")

    report = MagsaReport(
        graded=True, abelian=abelian, phi_stable=phi_stable, phi_onto=phi_onto,
        phi_h0_bijective=phi_h0_bijective, phi_h_injective=phi_h_injective,
        regular=alg.regular, diagnostics=tuple(diagnostics),
    )
    if not report.conditions_hold:
        return report

    try:
        root_decomposition(alg, H)
        return replace(report, maximality=MAXIMAL_CONFIRMED)
    except NotSplitError as e:
        logger.info(f"MAGSA candidate does not split the algebra: {e.message}")

    extension = extend_to_magsa(alg, H)
    if extension.dim > H.dim:
        diagnostics.append(f"abelian graded phi-stable extension of dimension {extension.dim} exists")
        return replace(report, maximality=MAXIMAL_REFUTED, extension=extension, diagnostics=tuple(diagnostics))
    return replace(report, maximality=MAXIMALITY_UNKNOWN)


# ---------------------------------------------------------------------------
# Root decomposition
# ---------------------------------------------------------------------------

def _fitting_parts(alg: Superalgebra) -> Tuple[Subspace, Subspace]:
    """Stable image and stable kernel of phi (L = inv + nil)."""
    n = alg.dim
    if alg.regular and is_invertible(alg.twist):
        return grade(alg, Subspace.full(n)), grade(alg, Subspace.zero(n))
    power = alg.twist.to_dense() ** n if n else alg.twist
    inv = grade(alg, image(power, Subspace.full(n)))
    nil = grade(alg, kernel(power))
    return inv, nil


def _twisted_operators(alg: Superalgebra, h_basis: Sequence[Vector], inv: Subspace) -> List[DomainMatrix]:
    """T_h = (phi on inv)^-1 o ad_h on inv, in the RREF coordinates of inv."""
    phi_inv = restrict_operator(alg.twist, inv)
    if phi_inv is None or not is_invertible(phi_inv):
        raise NotSplitError("phi is not bijective on its stable image")
    phi_inv_inverse = inverse(phi_inv)
    operators = []
    for h in h_basis:
        ad_on_inv = restrict_operator(ad_matrix(alg, h), inv)
        if ad_on_inv is None:
            raise NotSplitError(
                "ad_h leaves the image of phi",
                details={'h': alg.describe_vector(h)},
            )
        operators.append(phi_inv_inverse * ad_on_inv)
    return operators


def root_decomposition(alg: Superalgebra, H: Subspace, strict: bool = True) -> RootDecomposition:
    """
    Decompose L = H + sum of root spaces with respect to the MAGSA H.

    Root vectors solve [h, v] = alpha(h) phi(v) for h in H_0, i.e. they are
    joint eigenvectors of T_h = phi^-1 o ad_h. phi is inverted on its stable
    image; its nilpotent part must lie inside H.

    Args:
        alg: A validated algebra
        H: The MAGSA (conditions of verify_magsa hold)
        strict: Raise instead of returning a nonzero residue

    Returns:
        RootDecomposition with roots sorted lexicographically

    Raises:
        ValidationFailure: H is not graded, abelian, phi-stable or phi is singular on H_0
        NotSplitError: The algebra is not split with respect to H
    """
    H = grade(alg, H)
    if not brackets_vanish(alg, H, H):
        raise ValidationFailure("MAGSA candidate is not abelian")
    phi_h0 = _phi_on_h0(alg, H)
    if phi_h0 is None or not H.contains_subspace(twist_image(alg, H)):
        raise ValidationFailure("MAGSA candidate is not phi-stable")
    if not is_invertible(phi_h0):
        raise ValidationFailure("phi is not a bijection of H_0")
    phi_h0_inverse = inverse(phi_h0)
    h_basis = H.even.basis

    inv, nil = _fitting_parts(alg)
    if not H.contains_subspace(nil):
        raise NotSplitError("phi has a nilpotent part outside H", details={'dim_nil': nil.dim})
    operators = _twisted_operators(alg, h_basis, inv)
    blocks = simultaneous_eigenspaces(operators, dim=inv.dim) if inv.dim else []

    residue_vectors: List[Vector] = []
    zero_part = nil
    roots: List[RootFunctional] = []
    spaces: List[Subspace] = []
    for block in blocks:
        ambient = Subspace.span(alg.dim, [inv.vector_from(c) for c in block.space.basis])
        if not block.split:
            if strict:
                raise NotSplitError("Twisted adjoint action has no rational eigenbasis",
                                    reason=NotSplitError.NON_RATIONAL_SPECTRUM,
                                    details={'dim': ambient.dim})
            residue_vectors.extend(ambient.basis)
            continue
        functional = RootFunctional(block.eigenvalues)
        if functional.is_zero:
            zero_part = subspace_sum(zero_part, grade(alg, ambient))
            continue
        roots.append(functional)
        spaces.append(grade(alg, ambient))

    if zero_part != H:
        excess = greedy_complement(H, zero_part.basis)
        logger.info(f"Zero root space exceeds H by {len(excess)} dimensions")
        if strict:
            raise NotSplitError("Zero root space differs from H", details={'excess': len(excess)})
        residue_vectors.extend(excess)

    phi_perm = tuple(_index_or_none(roots, root.compose(phi_h0_inverse)) for root in roots)
    residue = Subspace.span(alg.dim, residue_vectors)
    logger.info(f"Root decomposition: dim H = {H.dim}, {len(roots)} roots, residue {residue.dim}")
    return RootDecomposition(
        algebra=alg, H=H, h_basis=h_basis, roots=tuple(roots), spaces=tuple(spaces),
        phi_perm=phi_perm, residue=residue, phi_h0=phi_h0, phi_h0_inverse=phi_h0_inverse,
    )


def _index_or_none(roots: Sequence[RootFunctional], functional: RootFunctional) -> Optional[int]:
    try:
        return list(roots).index(functional)
    except ValueError:
        return None


def require_split(dec: RootDecomposition) -> None:
    if not dec.is_split:
        raise NotSplitError("Decomposition has a nonzero residue", details={'residue': dec.residue.dim})


def project(dec: RootDecomposition, v: Sequence) -> Tuple[Vector, Dict[int, Vector]]:
    """
    Split v = h + sum of root components.

    Returns:
        (component in H, {root index: nonzero component in that root space})
    """
    require_split(dec)
    n = dec.algebra.dim
    pieces = [dec.H] + list(dec.spaces)
    vectors = [b for space in pieces for b in space.basis]
    coefficients = solve_combination(vectors, v)
    if coefficients is None:
        raise TheoremViolation("Root spaces and H do not span the algebra", check='RECONSTRUCTION')
    components = []
    offset = 0
    for space in pieces:
        chunk = coefficients[offset:offset + space.dim]
        components.append(space.vector_from(chunk) if space.dim else tuple([to_rational(0)] * n))
        offset += space.dim
    root_parts = {i: c for i, c in enumerate(components[1:]) if any(x != 0 for x in c)}
    return components[0], root_parts


def reconstruction_holds(dec: RootDecomposition) -> bool:
    """dim H + sum of root space dims + residue = dim L, and the pieces span L."""
    n = dec.algebra.dim
    total = dec.H.dim + sum(space.dim for space in dec.spaces) + dec.residue.dim
    spanned = sum_of_subspaces([dec.H, dec.residue] + list(dec.spaces), n)
    return total == n and spanned.dim == n


def parity_split_holds(dec: RootDecomposition) -> bool:
    return all(space.even.dim + space.odd.dim == space.dim for space in dec.spaces)


# ---------------------------------------------------------------------------
# Root transport
# ---------------------------------------------------------------------------

def _space_for(dec: RootDecomposition, functional: RootFunctional, parity: int) -> Subspace:
    space = dec.space_of(functional)
    return space.even if parity == 0 else space.odd


def check_transport(dec: RootDecomposition) -> TransportReport:
    """
    Verify how phi and the bracket move root spaces.

    For every root and parity: phi maps the part onto the part of
    alpha phi^-1, phi^-1 onto the part of alpha phi (regular algebras only).
    For every pair among H and the root spaces, the bracket of the parts
    lands in the space of alpha phi^-1 + beta phi^-1 of the summed parity.
    Finally phi_perm must be a permutation of the roots.
    """
    require_split(dec)
    alg = dec.algebra
    issues: List[TransportIssue] = []
    checked = 0

    perm = dec.phi_perm
    if any(t is None for t in perm) or len(set(perm)) != len(perm):
        issues.append(TransportIssue('ORBIT_CLOSURE', tuple(i for i, t in enumerate(perm) if t is None), None,
                                     "alpha phi^-1 leaves the root set or phi_perm is not injective"))

    phi_inverse = inverse(alg.twist) if alg.regular and is_invertible(alg.twist) else None
    for i, root in enumerate(dec.roots):
        forward = root.compose(dec.phi_h0_inverse)
        backward = root.compose(dec.phi_h0)
        for parity in (0, 1):
            part = dec.part(i, parity)
            checked += 1
            if image(alg.twist, part) != _space_for(dec, forward, parity):
                issues.append(TransportIssue('PHI_TRANSPORT', (i,), parity,
                                             f"phi(L_{i}) differs from the space of {forward}"))
            if phi_inverse is not None:
                checked += 1
                if image(phi_inverse, part) != _space_for(dec, backward, parity):
                    issues.append(TransportIssue('PHI_INVERSE_TRANSPORT', (i,), parity,
                                                 f"phi^-1(L_{i}) differs from the space of {backward}"))

    zero = RootFunctional(tuple(to_rational(0) for _ in range(dec.rank)))
    labelled = [(-1, zero, dec.H)] + [(i, root, dec.spaces[i]) for i, root in enumerate(dec.roots)]
    for a_index, a, a_space in labelled:
        for b_index, b, b_space in labelled:
            target = a.compose(dec.phi_h0_inverse) + b.compose(dec.phi_h0_inverse)
            for p in (0, 1):
                for q in (0, 1):
                    left = a_space.even if p == 0 else a_space.odd
                    right = b_space.even if q == 0 else b_space.odd
                    if left.is_zero or right.is_zero:
                        continue
                    checked += 1
                    products = bracket_span(alg, left, right)
                    allowed = _space_for(dec, target, (p + q) % 2)
                    if not allowed.contains_subspace(products):
                        issues.append(TransportIssue(
                            'BRACKET_CONTAINMENT', (a_index, b_index), (p + q) % 2,
                            f"bracket of parts ({p},{q}) escapes the space of {target}",
                        ))
    if issues:
        logger.error(f"Root transport failed {len(issues)} of {checked} checks")
    return TransportReport(tuple(issues), checked)


def magsa_from_indices(alg: Superalgebra, indices: Sequence[int]) -> Subspace:
    """Graded span of the listed basis vectors."""
    for i in indices:
        if not 0 <= i < alg.dim:
            raise ValidationFailure(f"MAGSA index {i} out of range for dimension {alg.dim}")
    return grade(alg, Subspace.coordinate(alg.dim, indices))

import logging
import random
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from splitsuper.exceptions import TheoremViolation
from splitsuper.models.ideals import NOT_SIMPLE, ORACLE_INAPPLICABLE, SIMPLE, GeneratedIdeal, OracleVerdict
from splitsuper.models.roots import RootDecomposition
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.decomposition_service import center, maximal_length
from splitsuper.services.homsuper_service import (
    bracket_span, brackets_vanish, change_of_basis, direct_sum, embed_subspace, grade, transport_subspace,
    yau_twist
)
from splitsuper.utils.exactlin import (
    Subspace, Vector, diagonal_matrix, graded_span, image, inverse, is_invertible, matrix,
    format_rational, subspace_sum, to_rational
)

logger = logging.getLogger(__name__)

TWIST_PARAMETERS = (QQ(2), QQ(3), QQ(-1), QQ(-2), QQ(1, 2), QQ(-1, 3), QQ(2, 3), QQ(1))
BASIS_SCALES = (QQ(1), QQ(1), QQ(2), QQ(-1), QQ(1, 2), QQ(-3))


def generate_ideal(alg: Superalgebra, seed: Sequence) -> GeneratedIdeal:
    """
    Smallest graded ideal containing `seed`.

    Iterates I <- I + [I, L] + phi(I) (+ phi^-1(I) for regular algebras)
    from the span of the homogeneous components of the seed.

    Args:
        alg: The algebra
        seed: Coordinates of the generating vector

    Returns:
        GeneratedIdeal with the number of rounds run until the span stopped growing

    Raises:
        TheoremViolation: The fixpoint fails the ideal checks
    """
    seed = tuple(to_rational(c) for c in seed)
    current = graded_span(alg.parity_list, [seed])
    if current.is_zero:
        return GeneratedIdeal(seed, current, 0)
    full = Subspace.full(alg.dim)
    phi_inverse = inverse(alg.twist) if alg.regular and is_invertible(alg.twist) else None

    rounds = 0
    while True:
        rounds += 1
        grown = subspace_sum(current, bracket_span(alg, current, full))
        grown = subspace_sum(grown, image(alg.twist, current))
        if phi_inverse is not None:
            grown = subspace_sum(grown, image(phi_inverse, current))
        if grown == current:
            break
        current = grown

    checks = {
        'contains_seed': current.contains(seed),
        'ideal': current.contains_subspace(bracket_span(alg, current, full)),
        'phi_stable': current.contains_subspace(image(alg.twist, current)),
    }
    if phi_inverse is not None:
        checks['phi_inverse_stable'] = current.contains_subspace(image(phi_inverse, current))
    if not all(checks.values()):
        raise TheoremViolation("Generated ideal fails the ideal checks", check='GENERATED_IDEAL', details=checks)
    logger.debug(f"Ideal of dimension {current.dim} generated after {rounds} rounds")
    return GeneratedIdeal(seed, current, rounds)


def brute_simplicity(alg: Superalgebra, dec: RootDecomposition) -> OracleVerdict:
    """
    Exact graded simplicity test for maximal-length algebras with zero center.

    Every nonzero ideal of such an algebra contains a whole one-dimensional
    root space part, so the algebra is simple iff [L, L] != 0 and each
    root vector generates all of L.

    Returns:
        OracleVerdict; the first proper generated ideal is the NOT_SIMPLE witness
    """
    reasons = []
    if not maximal_length(dec):
        reasons.append("some root space part has dimension above 1")
    if not center(alg).is_zero:
        reasons.append("center is nonzero")
    if reasons:
        return OracleVerdict(ORACLE_INAPPLICABLE, reasons=tuple(reasons))

    full = Subspace.full(alg.dim)
    if alg.dim == 0 or brackets_vanish(alg, full, full):
        return OracleVerdict(NOT_SIMPLE, reasons=("[L,L] = 0",))
    for i in range(len(dec.roots)):
        for parity in (0, 1):
            part = dec.part(i, parity)
            if part.is_zero:
                continue
            generated = generate_ideal(alg, part.basis[0])
            if generated.closure.dim < alg.dim:
                return OracleVerdict(NOT_SIMPLE, witness=generated,
                                     reasons=(f"root {i} ({'even' if parity == 0 else 'odd'}) generates "
                                              f"an ideal of dimension {generated.closure.dim}",))
    return OracleVerdict(SIMPLE, reasons=("every root vector generates the whole algebra",))


def separating_element(dec: RootDecomposition, alpha: int, beta: int) -> Optional[Vector]:
    """
    Find h0 in H_0 with alpha(h0) != 0 and alpha(h0) != beta(h0).

    Probes basis vectors of H_0, then sums of up to |Lambda| + 1 distinct
    basis vectors with coefficients 1, 2, 3, ...

    Returns:
        Coordinates of h0 on h_basis, or None if no probe works
    """
    a, b = dec.roots[alpha], dec.roots[beta]
    m = dec.rank
    for size in range(1, min(m, len(dec.roots) + 1) + 1):
        for indices in combinations(range(m), size):
            probe = [QQ(0)] * m
            for coefficient, index in enumerate(indices, start=1):
                probe[index] = QQ(coefficient)
            value = a(probe)
            if value != 0 and value != b(probe):
                return tuple(probe)
    return None


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

def sl2() -> Superalgebra:
    """sl(2) on h, e, f with identity twist."""
    return Superalgebra.from_products(
        ('h', 'e', 'f'), (0, 0, 0),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
    )


def osp12() -> Superalgebra:
    """osp(1|2) on h, x, y (even) and f, g (odd) with identity twist."""
    return Superalgebra.from_products(
        ('h', 'x', 'y', 'f', 'g'), (0, 0, 0, 1, 1),
        {
            (0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1},
            (2, 4): {3: 1}, (1, 3): {4: 1},
            (0, 3): {3: -1}, (0, 4): {4: 1},
            (4, 3): {0: 1}, (4, 4): {1: -2}, (3, 3): {2: 2},
        },
    )


def sl2_twist(t) -> DomainMatrix:
    t = to_rational(t)
    return diagonal_matrix([1, t, QQ(1) / t])


def osp12_twist(s) -> DomainMatrix:
    s = to_rational(s)
    return diagonal_matrix([1, s * s, QQ(1) / (s * s), QQ(1) / s, s])


def _template(rng: random.Random, name: str) -> Tuple[Superalgebra, Subspace, str]:
    if name == 'sl2':
        t = rng.choice(TWIST_PARAMETERS)
        alg = yau_twist(sl2(), sl2_twist(t))
        return alg, grade(alg, Subspace.coordinate(3, [0])), f"sl2(t={format_rational(t)})"
    if name == 'osp12':
        s = rng.choice(TWIST_PARAMETERS)
        alg = yau_twist(osp12(), osp12_twist(s))
        return alg, grade(alg, Subspace.coordinate(5, [0])), f"osp12(s={format_rational(s)})"
    if name == 'sl2_pair':
        t = rng.choice(TWIST_PARAMETERS)
        lie = direct_sum([sl2(), sl2()])
        diag = sl2_twist(t)
        swap_rows = [[0] * 6 for _ in range(6)]
        for i in range(3):
            swap_rows[i + 3][i] = 1
            swap_rows[i][i + 3] = 1
        block = [[0] * 6 for _ in range(6)]
        diag_rows = diag.to_list()
        for i in range(3):
            for j in range(3):
                block[i][j] = diag_rows[i][j]
                block[i + 3][j + 3] = diag_rows[i][j]
        psi = matrix(swap_rows) * matrix(block)
        alg = yau_twist(lie, psi)
        return alg, grade(alg, Subspace.coordinate(6, [0, 3])), f"sl2_pair(t={format_rational(t)})"
    parity = rng.choice((0, 1))
    c = rng.choice(TWIST_PARAMETERS)
    alg = Superalgebra.from_products(('a',), (parity,), {}, diagonal_matrix([c]))
    return alg, grade(alg, Subspace.full(1)), f"abelian(parity={parity}, c={format_rational(c)})"


_TEMPLATE_DIMS = {'sl2': 3, 'osp12': 5, 'sl2_pair': 6, 'abelian': 1}


def _random_change_of_basis(rng: random.Random, alg: Superalgebra):
    """Upper triangular with nonzero diagonal, parity-preserving."""
    n = alg.dim
    rows = [[rng.choice(BASIS_SCALES) if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if alg.parities[i] == alg.parities[j] and rng.random() < 0.3:
                rows[i][j] = rng.choice((-2, -1, 1, 2, 3))
    return matrix(rows, n)


def fuzz_instance(seed: int, max_dim: int) -> Tuple[Superalgebra, Subspace]:
    """
    Deterministic random split regular Hom-Lie superalgebra with its MAGSA.

    A direct sum of Yau-twisted sl(2), osp(1|2), swapped sl(2) pairs and
    one-dimensional abelian summands, optionally rewritten in a random
    parity-preserving basis.

    Args:
        seed: Random seed
        max_dim: Upper bound on the dimension (at least 3)

    Returns:
        (algebra, H)
    """
    if max_dim < 3:
        raise ValueError(f"max_dim must be at least 3, got {max_dim}")
    rng = random.Random(seed)
    remaining = max_dim
    parts: List[Tuple[Superalgebra, Subspace, str]] = []
    while True:
        options = [name for name, dim in sorted(_TEMPLATE_DIMS.items()) if dim <= remaining]
        if not options or (parts and rng.random() < 0.35):
            break
        name = rng.choice(options)
        parts.append(_template(rng, name))
        remaining -= _TEMPLATE_DIMS[name]

    alg = direct_sum([part[0] for part in parts])
    spaces = []
    offset = 0
    for part_alg, part_h, _ in parts:
        spaces.append(embed_subspace(part_h, offset, alg.dim))
        offset += part_alg.dim
    H = Subspace.span(alg.dim, [v for space in spaces for v in space.basis])
    H = grade(alg, H)

    description = ' + '.join(part[2] for part in parts)
    if rng.random() < 0.5:
        p = _random_change_of_basis(rng, alg)
        alg = change_of_basis(alg, p)
        H = grade(alg, transport_subspace(H, p))
        description += ' (rebased)'
    logger.debug(f"Fuzz seed {seed}: {description}, dim {alg.dim}")
    return alg, H

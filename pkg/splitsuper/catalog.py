"""
Built-in fixtures: the Example-1 family at finite truncation and the
classical templates it is assembled from.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from sympy import QQ

from splitsuper.exceptions import ValidationFailure
from splitsuper.models.ideals import ClassIdeal
from splitsuper.models.superalgebra import Parity, Superalgebra
from splitsuper.services.homsuper_service import bracket_eval, grade, twist_apply, yau_twist
from splitsuper.services.oracle_service import osp12, osp12_twist, sl2, sl2_twist
from splitsuper.utils.exactlin import Subspace, diagonal_matrix, matrix, solve_combination

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parameter: str
    default: int
    builder: Callable[[int], Tuple[Superalgebra, Subspace]] = field(repr=False)
    expected: Callable[[int], Dict[str, Any]] = field(repr=False)
    notes: str = ''

    def build(self, value: int = None) -> Tuple[Superalgebra, Subspace]:
        return self.builder(self.default if value is None else value)


def _example1_layout(N: int) -> Tuple[List[str], List[int], Dict[str, int]]:
    names = ['e1', 'e2']
    for n in range(2, N + 1):
        names += [f'h{n}', f'x{n}', f'y{n}']
    names.append('e3')
    for n in range(2, N + 1):
        names += [f'f{n}', f'g{n}']
    even_count = 2 + 3 * (N - 1)
    parities = [0] * even_count + [1] * (len(names) - even_count)
    return names, parities, {name: i for i, name in enumerate(names)}


def _example1_products(N: int, index: Dict[str, int]) -> Dict[Tuple[int, int], Dict[int, Any]]:
    products = {(index['e2'], index['e1']): {index['e1']: 1}}
    for n in range(2, N + 1):
        q = QQ(n)
        h, x, y, f, g = (index[f'{s}{n}'] for s in 'hxyfg')
        products.update({
            (h, x): {x: 2 * q * q},
            (h, y): {y: QQ(-2) / (q * q)},
            (x, y): {h: 1},
            (y, g): {f: QQ(1) / q},
            (x, f): {g: q},
            (h, f): {f: QQ(-1) / q},
            (h, g): {g: q},
            (g, f): {h: 1},
            (g, g): {x: -2 * q * q},
            (f, f): {y: QQ(2) / (q * q)},
        })
    return products


def _example1_twist_diagonal(N: int, kill_e3: bool) -> List[Any]:
    diagonal = [QQ(1), QQ(1)]
    for n in range(2, N + 1):
        q = QQ(n)
        diagonal += [QQ(1), q * q, QQ(1) / (q * q)]
    diagonal.append(QQ(0) if kill_e3 else QQ(1))
    for n in range(2, N + 1):
        q = QQ(n)
        diagonal += [QQ(1) / q, q]
    return diagonal


def _example1_magsa(alg: Superalgebra, N: int, index: Dict[str, int]) -> Subspace:
    members = [index['e2'], index['e3']] + [index[f'h{n}'] for n in range(2, N + 1)]
    return grade(alg, Subspace.coordinate(alg.dim, members))


def example1(N: int) -> Tuple[Superalgebra, Subspace]:
    """
    The split regular Hom-Lie superalgebra on e1, e2, h_n, x_n, y_n | e3, f_n, g_n for 2 <= n <= N.

    Args:
        N: Truncation, at least 2

    Returns:
        (algebra, H) with H = <e2, h_2..h_N> + <e3>
    """
    if N < 2:
        raise ValueError(f"example1 needs N >= 2, got {N}")
    names, parities, index = _example1_layout(N)
    alg = Superalgebra.from_products(names, parities, _example1_products(N, index),
                                     diagonal_matrix(_example1_twist_diagonal(N, kill_e3=False)), regular=True)
    return alg, _example1_magsa(alg, N, index)


def example1_nonregular(N: int) -> Tuple[Superalgebra, Subspace]:
    """Same bracket as example1(N); the twist also kills e3, so it is not invertible."""
    if N < 2:
        raise ValueError(f"example1_nonregular needs N >= 2, got {N}")
    names, parities, index = _example1_layout(N)
    alg = Superalgebra.from_products(names, parities, _example1_products(N, index),
                                     diagonal_matrix(_example1_twist_diagonal(N, kill_e3=True)), regular=False)
    return alg, _example1_magsa(alg, N, index)


def twisted_sl2(t: int) -> Tuple[Superalgebra, Subspace]:
    alg = yau_twist(sl2(), sl2_twist(t))
    return alg, grade(alg, Subspace.coordinate(3, [0]))


def twisted_osp12(n: int) -> Tuple[Superalgebra, Subspace]:
    """Yau twist of osp(1|2) by diag(1, n^2, n^-2, n^-1, n): the n-th block of example1."""
    alg = yau_twist(osp12(), osp12_twist(n))
    return alg, grade(alg, Subspace.coordinate(5, [0]))


def _example1_expected(N: int) -> Dict[str, Any]:
    return {
        'dim': 3 + 5 * (N - 1),
        'dim_even': 2 + 3 * (N - 1),
        'dim_odd': 1 + 2 * (N - 1),
        'roots': 4 * (N - 1) + 1,
        'classes': N,
        'dim_U': 2,
        'ideal_dims': [1] + [5] * (N - 1),
        'dim_center': 1,
        'flags': {
            'symmetric_roots': False, 'maximal_length': True, 'center_zero': False,
            'h_generated': False, 'all_connected': False,
        },
        'simplicity': 'NOT_SIMPLE',
    }


def _simple_expected(dim: int, roots: int) -> Callable[[int], Dict[str, Any]]:
    def expected(_: int) -> Dict[str, Any]:
        return {
            'dim': dim, 'roots': roots, 'classes': 1, 'dim_U': 0, 'ideal_dims': [dim], 'dim_center': 0,
            'flags': {
                'symmetric_roots': True, 'maximal_length': True, 'root_multiplicative': True,
                'center_zero': True, 'h_generated': True, 'all_connected': True,
            },
            'simplicity': 'SIMPLE',
        }
    return expected


CATALOG: Dict[str, CatalogEntry] = {
    'example1': CatalogEntry('example1', 'N', 2, example1, _example1_expected),
    'example1_nonregular': CatalogEntry(
        'example1_nonregular', 'N', 2, example1_nonregular, _example1_expected,
        notes=("The twist kills e3, which lies in H, so phi restricted to H is not a bijection even though "
               "the non-regular theory asks for one. The decomposition into ideals is still claimed for this "
               "algebra; the pipeline runs using phi on H_0 only, where it is bijective."),
    ),
    'sl2': CatalogEntry('sl2', 't', 2, twisted_sl2, _simple_expected(3, 2),
                        notes="Yau twist of sl(2) by diag(1, t, 1/t); the root takes the value 2 on h."),
    'osp12': CatalogEntry('osp12', 'n', 2, twisted_osp12, _simple_expected(5, 4),
                          notes="Yau twist of osp(1|2); equals the n-th block of example1."),
}


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"Unknown catalog entry {name!r}; choose from {', '.join(sorted(CATALOG))}") from None


def restrict_to_subspace(alg: Superalgebra, space: Subspace, H: Subspace) -> Tuple[Superalgebra, Subspace]:
    """
    The algebra structure on a graded subalgebra, re-based on its homogeneous basis.

    The new basis is the even part's RREF basis followed by the odd part's.

    Raises:
        ValidationFailure: The subspace is not closed under the bracket or not phi-stable
    """
    space = grade(alg, space)
    basis = list(space.even.basis) + list(space.odd.basis)
    parities = [0] * space.even.dim + [1] * space.odd.dim

    def coordinates(v, what):
        solution = solve_combination(basis, v)
        if solution is None:
            raise ValidationFailure(f"Subspace is not closed under {what}")
        return solution

    products = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            value = coordinates(bracket_eval(alg, a, b), 'the bracket')
            terms = {k: c for k, c in enumerate(value) if c != 0}
            if terms:
                products[(i, j)] = terms
    twist_columns = [coordinates(twist_apply(alg, b), 'the twist') for b in basis]
    k = len(basis)
    twist = matrix([[twist_columns[j][i] for j in range(k)] for i in range(k)], k)
    names = [alg.describe_vector(b) for b in basis]
    restricted = Superalgebra(tuple(names), tuple(Parity(p) for p in parities), products, twist, alg.regular)
    H_restricted = grade(restricted, Subspace.span(k, [coordinates(h, 'H') for h in H.basis]))
    return restricted, H_restricted


def component_restriction(alg: Superalgebra, ideal: ClassIdeal) -> Tuple[Superalgebra, Subspace]:
    """Standalone algebra on a certified class ideal, with H restricted to its H part."""
    logger.debug(f"Restricting to class ideal {ideal.class_id} of dimension {ideal.total.dim}")
    return restrict_to_subspace(alg, ideal.total, ideal.H_part)

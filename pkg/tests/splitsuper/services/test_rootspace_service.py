import unittest
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

from sympy import QQ

from splitsuper.catalog import example1, example1_nonregular, twisted_sl2
from splitsuper.exceptions import NotSplitError, ValidationFailure
from splitsuper.models.roots import MAXIMAL_CONFIRMED, MAXIMAL_REFUTED, RootFunctional
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.homsuper_service import change_of_basis
from splitsuper.services.rootspace_service import (
    centralizer, check_transport, extend_to_magsa, magsa_from_indices, parity_split_holds, project,
    reconstruction_holds, root_decomposition, verify_magsa
)
from splitsuper.services.oracle_service import sl2
from splitsuper.utils.exactlin import Subspace, matrix, unit_vector


class TestExampleRoots(unittest.TestCase):
    def setUp(self):
        self.alg, self.H = example1(2)
        self.dec = root_decomposition(self.alg, self.H)

    def _basis_space(self, *names):
        return Subspace.coordinate(self.alg.dim, [self.alg.index_of(n) for n in names])

    def test_roots_in_lexicographic_order(self):
        expected = [RootFunctional.of(c) for c in ((0, -2), (0, -1), (0, 1), (0, 2), (1, 0))]
        self.assertEqual(list(self.dec.roots), expected)
        self.assertEqual(self.dec.rank, 2)

    def test_root_spaces(self):
        names = ['y2', 'f2', 'g2', 'x2', 'e1']
        for space, name in zip(self.dec.spaces, names):
            self.assertEqual(space, self._basis_space(name))
        self.assertEqual(self.dec.even_roots(), (0, 3, 4))
        self.assertEqual(self.dec.odd_roots(), (1, 2))

    def test_phi_permutation_is_identity(self):
        self.assertEqual(self.dec.phi_perm, (0, 1, 2, 3, 4))
        self.assertEqual(self.dec.perm_cycles(), [[0], [1], [2], [3], [4]])

    def test_reconstruction(self):
        self.assertTrue(self.dec.is_split)
        self.assertTrue(reconstruction_holds(self.dec))
        self.assertTrue(parity_split_holds(self.dec))

    def test_transport(self):
        report = check_transport(self.dec)
        self.assertTrue(report.passed, [issue.detail for issue in report.issues])
        self.assertGreater(report.checked, 0)

    def test_project(self):
        v = tuple(QQ(i + 1) for i in range(self.alg.dim))
        h_part, root_parts = project(self.dec, v)
        self.assertEqual(h_part[self.alg.index_of('e2')], QQ(2))
        self.assertEqual(h_part[self.alg.index_of('e1')], QQ(0))
        self.assertEqual(sorted(root_parts), [0, 1, 2, 3, 4])
        total = list(h_part)
        for part in root_parts.values():
            total = [a + b for a, b in zip(total, part)]
        self.assertEqual(tuple(total), v)


class TestMagsa(unittest.TestCase):
    def setUp(self):
        self.alg, self.H = example1(2)

    def test_given_magsa_is_confirmed(self):
        report = verify_magsa(self.alg, self.H)
        self.assertTrue(report.passed)
        self.assertEqual(report.maximality, MAXIMAL_CONFIRMED)

    def test_smaller_candidate_is_refuted(self):
        candidate = magsa_from_indices(self.alg, [self.alg.index_of('h2')])
        report = verify_magsa(self.alg, candidate)
        self.assertEqual(report.maximality, MAXIMAL_REFUTED)
        self.assertFalse(report.passed)
        names = [self.alg.index_of(n) for n in ('e1', 'h2', 'e3')]
        self.assertEqual(report.extension, Subspace.coordinate(self.alg.dim, names))

    def test_smaller_candidate_does_not_split(self):
        candidate = magsa_from_indices(self.alg, [self.alg.index_of('h2')])
        with self.assertRaises(NotSplitError):
            root_decomposition(self.alg, candidate)

    def test_non_abelian_candidate(self):
        candidate = magsa_from_indices(self.alg, [self.alg.index_of('e1'), self.alg.index_of('e2')])
        report = verify_magsa(self.alg, candidate)
        self.assertFalse(report.abelian)
        self.assertFalse(report.passed)
        with self.assertRaises(ValidationFailure):
            root_decomposition(self.alg, candidate)

    def test_ungraded_candidate(self):
        mixed = Subspace.span(self.alg.dim, [tuple(a + b for a, b in zip(
            unit_vector(self.alg.dim, self.alg.index_of('e2')), unit_vector(self.alg.dim, self.alg.index_of('e3'))))])
        with self.assertRaises(ValidationFailure):
            verify_magsa(self.alg, mixed)

    def test_index_out_of_range(self):
        with self.assertRaises(ValidationFailure):
            magsa_from_indices(self.alg, [99])

    def test_centralizer_of_h2(self):
        space = centralizer(self.alg, magsa_from_indices(self.alg, [self.alg.index_of('h2')]))
        names = [self.alg.index_of(n) for n in ('e1', 'e2', 'h2', 'e3')]
        self.assertEqual(space, Subspace.coordinate(self.alg.dim, names))

    def test_greedy_extension_from_zero(self):
        H = extend_to_magsa(self.alg)
        self.assertTrue(verify_magsa(self.alg, H).conditions_hold)


class TestOtherAlgebras(unittest.TestCase):
    def test_root_functional_composition(self):
        alpha = RootFunctional.of([1, 2])
        self.assertEqual(alpha.compose(matrix([[1, 1], [0, 3]])), RootFunctional.of([1, 7]))
        self.assertEqual(alpha.compose(matrix([[1, 0], [0, 1]])), alpha)

    def test_twisted_sl2_root_value(self):
        alg, H = twisted_sl2(5)
        dec = root_decomposition(alg, H)
        self.assertEqual(list(dec.roots), [RootFunctional.of([-2]), RootFunctional.of([2])])

    def test_roots_survive_change_of_basis(self):
        # new basis h, e - f, e + f; ad_h swaps the last two up to a factor 2
        rotated = change_of_basis(sl2(), matrix([[1, 0, 0], [0, 1, 1], [0, -1, 1]]))
        H = magsa_from_indices(rotated, [0])
        dec = root_decomposition(rotated, H)
        self.assertTrue(dec.is_split)
        self.assertEqual(len(dec.roots), 2)

    def test_irrational_spectrum(self):
        so3 = Superalgebra.from_products(('a', 'b', 'c'), (0, 0, 0), {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
        H = magsa_from_indices(so3, [0])
        with self.assertRaises(NotSplitError) as caught:
            root_decomposition(so3, H)
        self.assertEqual(caught.exception.reason, NotSplitError.NON_RATIONAL_SPECTRUM)
        dec = root_decomposition(so3, H, strict=False)
        self.assertFalse(dec.is_split)
        self.assertEqual(dec.residue.dim, 2)
        self.assertEqual(dec.roots, ())

    def test_nonregular_uses_phi_on_h0(self):
        alg, H = example1_nonregular(2)
        report = verify_magsa(alg, H)
        self.assertFalse(report.phi_h_injective)
        self.assertTrue(report.phi_h0_bijective)
        with self.assertLogs('splitsuper.services.rootspace_service', level='WARNING'):
            verify_magsa(alg, H)
        dec = root_decomposition(alg, H)
        self.assertEqual(len(dec.roots), 5)


if __name__ == '__main__':
    unittest.main()

import unittest
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

from sympy import QQ

from splitsuper.catalog import example1, twisted_sl2
from splitsuper.exceptions import ValidationFailure
from splitsuper.models.superalgebra import Superalgebra
from splitsuper.services.homsuper_service import (
    HOM_JACOBI, SKEW_SUPERSYMMETRY, TWIST_EVEN, TWIST_HOMOMORPHISM, TWIST_INVERTIBLE, bracket_eval,
    bracket_span, change_of_basis, direct_sum, require_valid, validate, yau_twist
)
from splitsuper.services.oracle_service import osp12, sl2, sl2_twist
from splitsuper.utils.exactlin import Subspace, diagonal_matrix, identity_matrix, matrix, unit_vector


class TestBracket(unittest.TestCase):
    def setUp(self):
        self.alg, self.H = example1(2)
        self.e = {name: unit_vector(self.alg.dim, i) for i, name in enumerate(self.alg.basis_names)}

    def test_basis_products(self):
        self.assertEqual(bracket_eval(self.alg, self.e['e2'], self.e['e1']), self.e['e1'])
        self.assertEqual(bracket_eval(self.alg, self.e['e1'], self.e['e2']), tuple(-c for c in self.e['e1']))
        self.assertEqual(bracket_eval(self.alg, self.e['h2'], self.e['x2']), tuple(8 * c for c in self.e['x2']))

    def test_odd_products_are_symmetric(self):
        left = bracket_eval(self.alg, self.e['g2'], self.e['f2'])
        right = bracket_eval(self.alg, self.e['f2'], self.e['g2'])
        self.assertEqual(left, right)
        self.assertEqual(left, self.e['h2'])

    def test_bilinearity(self):
        x = tuple(a + 2 * b for a, b in zip(self.e['x2'], self.e['e2']))
        expected = tuple(a + 2 * b for a, b in zip(
            bracket_eval(self.alg, self.e['x2'], self.e['y2']),
            bracket_eval(self.alg, self.e['e2'], self.e['y2'])))
        self.assertEqual(bracket_eval(self.alg, x, self.e['y2']), expected)

    def test_e3_is_central(self):
        full = Subspace.full(self.alg.dim)
        self.assertTrue(bracket_span(self.alg, Subspace.span(self.alg.dim, [self.e['e3']]), full).is_zero)


class TestValidate(unittest.TestCase):
    def test_example_family_is_valid(self):
        for N in (2, 3):
            alg, _ = example1(N)
            report = validate(alg)
            self.assertTrue(report.passed, report.axioms_violated())

    def test_broken_skew_supersymmetry(self):
        alg, _ = example1(2)
        broken = alg.with_product(0, 1, {0: 1})
        report = validate(broken)
        self.assertFalse(report.passed)
        skew = [v for v in report.violations if v.axiom == SKEW_SUPERSYMMETRY]
        self.assertEqual(skew[0].witness, (0, 1))

    def test_twist_that_is_not_a_homomorphism(self):
        alg, _ = example1(2)
        diagonal = [QQ(1), QQ(1), QQ(1), QQ(1), QQ(1, 4), QQ(1), QQ(1, 2), QQ(2)]
        broken = alg.with_twist(diagonal_matrix(diagonal))
        report = validate(broken)
        homomorphism = [v for v in report.violations if v.axiom == TWIST_HOMOMORPHISM]
        self.assertEqual(homomorphism[0].witness, (3, 4))
        with self.assertRaises(ValidationFailure):
            require_valid(broken)

    def test_odd_twist_and_singular_twist(self):
        alg = osp12()
        swap = matrix([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]])
        self.assertIn(TWIST_EVEN, validate(alg.with_twist(swap)).axioms_violated())
        singular = diagonal_matrix([1, 0, 0, 0, 0])
        self.assertIn(TWIST_INVERTIBLE, validate(alg.with_twist(singular, regular=True)).axioms_violated())
        self.assertNotIn(TWIST_INVERTIBLE, validate(alg.with_twist(singular, regular=False)).axioms_violated())

    def test_hom_jacobi_failure(self):
        alg = _non_jacobi_algebra()
        self.assertIn(HOM_JACOBI, validate(alg).axioms_violated())


def _non_jacobi_algebra():
    return Superalgebra.from_products(('a', 'b', 'c'), (0, 0, 0), {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {2: 1}})


class TestConstructions(unittest.TestCase):
    def test_yau_twist_by_identity_keeps_the_bracket(self):
        lie = osp12()
        twisted = yau_twist(lie, identity_matrix(5))
        self.assertEqual(twisted.bracket, lie.bracket)

    def test_yau_twisted_sl2(self):
        alg, _ = twisted_sl2(3)
        self.assertTrue(validate(alg).passed)
        self.assertEqual(alg.product(0, 1), {1: QQ(6)})
        self.assertEqual(alg.product(0, 2), {2: QQ(-2, 3)})

    def test_yau_twist_rejects_non_automorphisms(self):
        with self.assertRaises(ValidationFailure):
            yau_twist(sl2(), diagonal_matrix([2, 1, 1]))

    def test_change_of_basis_preserves_validity(self):
        alg, _ = twisted_sl2(2)
        p = matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
        rebased = change_of_basis(alg, p)
        self.assertTrue(validate(rebased).passed)
        self.assertNotEqual(rebased, alg)

    def test_change_of_basis_rejects_parity_mixing(self):
        p = matrix([[1, 0, 0, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        with self.assertRaises(ValidationFailure):
            change_of_basis(osp12(), p)

    def test_direct_sum_renames_colliding_names(self):
        total = direct_sum([yau_twist(sl2(), sl2_twist(2)), yau_twist(sl2(), sl2_twist(3))])
        self.assertEqual(total.basis_names, ('h_1', 'e_1', 'f_1', 'h_2', 'e_2', 'f_2'))
        self.assertTrue(validate(total).passed)
        self.assertEqual(total.product(3, 4), {4: QQ(6)})


if __name__ == '__main__':
    unittest.main()

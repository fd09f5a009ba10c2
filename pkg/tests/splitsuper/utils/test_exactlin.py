import unittest
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../../')))

from sympy import QQ

from splitsuper.exceptions import DimensionMismatchError, ParseError
from splitsuper.utils.exactlin import (
    Subspace, diagonal_matrix, format_rational, graded_span, identity_matrix, inverse, is_invertible, kernel,
    matrix, matrix_rows, matvec, parse_rational, rank, restrict_operator, rref, simultaneous_eigenspaces,
    solve_combination, split_by_parity, subspace_intersect, subspace_sum, vecmat, zero_matrix
)


class TestRationals(unittest.TestCase):
    def test_parse_rational_reduces(self):
        self.assertEqual(parse_rational("6/4"), QQ(3, 2))
        self.assertEqual(parse_rational("-8"), QQ(-8))
        self.assertEqual(parse_rational(" 0/5 "), QQ(0))

    def test_parse_rational_rejects_garbage(self):
        for text in ("1.5", "x", "1/0", "", "2/-3"):
            with self.assertRaises(ParseError):
                parse_rational(text)

    def test_format_rational(self):
        self.assertEqual(format_rational(QQ(-1, 4)), "-1/4")
        self.assertEqual(format_rational(QQ(6, 3)), "2")
        self.assertEqual(format_rational(0), "0")


class TestMatrices(unittest.TestCase):
    def test_rref_of_identity_is_identity(self):
        self.assertEqual(matrix_rows(rref(identity_matrix(3))), matrix_rows(identity_matrix(3)))

    def test_rref_drops_zero_rows(self):
        self.assertEqual(matrix_rows(rref(matrix([[2, 4], [1, 2]]))), [(QQ(1), QQ(2))])

    def test_rref_is_idempotent(self):
        m = matrix([[1, 2, 3, 0, 1], [QQ(1, 2), 0, 1, 1, 0], [2, 4, 6, 0, 2], [0, 0, 0, 0, 0], [3, 1, 0, 2, -1]])
        once = rref(m)
        self.assertEqual(matrix_rows(rref(once)), matrix_rows(once))

    def test_kernel_of_zero_matrix_is_everything(self):
        self.assertEqual(kernel(zero_matrix(2, 3)), Subspace.full(3))

    def test_kernel_of_identity_is_zero(self):
        self.assertTrue(kernel(identity_matrix(4)).is_zero)

    def test_kernel_vectors_are_annihilated(self):
        m = matrix([[1, 1, 0]])
        null = kernel(m)
        self.assertEqual(null.dim, 2)
        for v in null.basis:
            self.assertEqual(matvec(m, v), (QQ(0),))
        self.assertEqual(rank(m) + null.dim, 3)

    def test_kernel_of_rank_one_matrix(self):
        self.assertEqual(kernel(matrix([[1, 1, 0], [2, 2, 0]])), Subspace.span(3, [(1, -1, 0), (0, 0, 1)]))

    def test_matvec_and_vecmat(self):
        m = matrix([[1, 2, 0], [0, QQ(1, 2), -1]])
        self.assertEqual(matvec(m, (1, 2, 3)), (QQ(5), QQ(-2)))
        self.assertEqual(vecmat((2, -4), m), (QQ(2), QQ(2), QQ(4)))
        self.assertEqual(matvec(zero_matrix(2, 0), ()), (QQ(0), QQ(0)))
        with self.assertRaises(DimensionMismatchError):
            matvec(m, (1, 2))
        with self.assertRaises(DimensionMismatchError):
            vecmat((1, 2, 3), m)

    def test_inverse(self):
        m = matrix([[2, 1], [1, 1]])
        self.assertTrue(is_invertible(m))
        self.assertEqual(matrix_rows(inverse(m) * m), matrix_rows(identity_matrix(2)))
        with self.assertRaises(ValueError):
            inverse(matrix([[1, 2], [2, 4]]))

    def test_solve_combination(self):
        vectors = [(1, 0, 1), (0, 1, 1)]
        self.assertEqual(solve_combination(vectors, (2, 3, 5)), (QQ(2), QQ(3)))
        self.assertIsNone(solve_combination(vectors, (1, 1, 1)))

    def test_row_length_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            matrix([[1, 2], [3]])


class TestSubspaces(unittest.TestCase):
    def setUp(self):
        self.a = Subspace.span(3, [(1, 0, 0), (0, 1, 0)])
        self.b = Subspace.span(3, [(0, 1, 0), (0, 0, 1)])

    def test_span_is_canonical(self):
        self.assertEqual(Subspace.span(3, [(2, 2, 0), (1, -1, 0)]), self.a)

    def test_sum_and_intersection_with_trivial_spaces(self):
        self.assertEqual(subspace_sum(self.a, Subspace.zero(3)), self.a)
        self.assertEqual(subspace_intersect(self.a, Subspace.full(3)), self.a)
        self.assertEqual(subspace_intersect(self.a, self.a), self.a)

    def test_grassmann_identity(self):
        total = subspace_sum(self.a, self.b)
        meet = subspace_intersect(self.a, self.b)
        self.assertEqual(meet, Subspace.span(3, [(0, 1, 0)]))
        self.assertEqual(total.dim + meet.dim, self.a.dim + self.b.dim)

    def test_contains_and_coordinates(self):
        self.assertTrue(self.a.contains((3, -2, 0)))
        self.assertFalse(self.a.contains((0, 0, 1)))
        self.assertEqual(self.a.coordinates((3, -2, 0)), (QQ(3), QQ(-2)))

    def test_ambient_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            subspace_sum(self.a, Subspace.zero(4))

    def test_split_by_parity(self):
        parities = (0, 0, 1)
        graded = split_by_parity(self.b, parities)
        self.assertEqual(graded.even.dim, 1)
        self.assertEqual(graded.odd.dim, 1)
        self.assertIsNone(split_by_parity(Subspace.span(3, [(1, 0, 1)]), parities))

    def test_graded_span_uses_homogeneous_parts(self):
        space = graded_span((0, 0, 1), [(1, 0, 1)])
        self.assertEqual(space, Subspace.coordinate(3, [0, 2]))
        self.assertEqual(space.even, Subspace.coordinate(3, [0]))

    def test_restrict_operator(self):
        m = diagonal_matrix([2, 3, 5])
        self.assertEqual(matrix_rows(restrict_operator(m, self.a)), [(QQ(2), QQ(0)), (QQ(0), QQ(3))])
        swap = matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        self.assertIsNone(restrict_operator(swap, self.a))


class TestSimultaneousEigenspaces(unittest.TestCase):
    def test_single_diagonal_operator(self):
        blocks = simultaneous_eigenspaces([diagonal_matrix([1, 1, 2])])
        self.assertEqual([b.eigenvalues for b in blocks], [(QQ(1),), (QQ(2),)])
        self.assertEqual(blocks[0].space, Subspace.coordinate(3, [0, 1]))
        self.assertEqual(blocks[1].space, Subspace.coordinate(3, [2]))

    def test_no_operators_gives_one_block(self):
        blocks = simultaneous_eigenspaces([], dim=3)
        self.assertEqual(len(blocks), 1)
        self.assertEqual(blocks[0].eigenvalues, ())
        self.assertEqual(blocks[0].space, Subspace.full(3))

    def test_commuting_operators_refine(self):
        p = matrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
        first = p * diagonal_matrix([1, 1, 2, 2]) * inverse(p)
        second = p * diagonal_matrix([3, 4, 3, 4]) * inverse(p)
        blocks = simultaneous_eigenspaces([first, second])
        self.assertEqual(len(blocks), 4)
        self.assertTrue(all(b.split and b.space.dim == 1 for b in blocks))
        columns = [tuple(row[j] for row in matrix_rows(p)) for j in range(4)]
        expected = {(QQ(1), QQ(3)): columns[0], (QQ(1), QQ(4)): columns[1],
                    (QQ(2), QQ(3)): columns[2], (QQ(2), QQ(4)): columns[3]}
        for block in blocks:
            self.assertEqual(block.space, Subspace.span(4, [expected[block.eigenvalues]]))

    def test_irrational_spectrum_is_residue(self):
        rotation = matrix([[0, -1], [1, 0]])
        blocks = simultaneous_eigenspaces([rotation])
        self.assertEqual(len(blocks), 1)
        self.assertFalse(blocks[0].split)
        self.assertEqual(blocks[0].space.dim, 2)

    def test_mixed_spectrum_keeps_rational_part(self):
        m = matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
        blocks = simultaneous_eigenspaces([m])
        self.assertEqual(len(blocks), 2)
        self.assertTrue(blocks[0].split)
        self.assertEqual(blocks[0].eigenvalues, (QQ(0),))
        self.assertEqual(blocks[0].space, Subspace.coordinate(3, [0]))
        self.assertFalse(blocks[1].split)
        self.assertEqual(blocks[1].space, Subspace.coordinate(3, [1, 2]))

    def test_defective_operator_is_residue(self):
        jordan = matrix([[1, 1], [0, 1]])
        blocks = simultaneous_eigenspaces([jordan])
        self.assertFalse(blocks[0].split)


if __name__ == '__main__':
    unittest.main()

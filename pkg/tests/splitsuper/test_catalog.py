import unittest
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from splitsuper.catalog import CATALOG, example1, example1_nonregular, get_entry, restrict_to_subspace
from splitsuper.exceptions import ValidationFailure
from splitsuper.services.connection_service import connection_classes
from splitsuper.services.decomposition_service import (
    build_class_ideals, center, certify_simple, global_decomposition, structure_flags
)
from splitsuper.services.homsuper_service import validate
from splitsuper.services.rootspace_service import root_decomposition
from splitsuper.utils.exactlin import Subspace


def _measure(alg, H):
    dec = root_decomposition(alg, H)
    partition = connection_classes(dec)
    decomposition = global_decomposition(dec, partition)
    flags = structure_flags(dec, partition).to_dict()
    return {
        'dim': alg.dim,
        'dim_even': len(alg.even_indices),
        'dim_odd': len(alg.odd_indices),
        'roots': len(dec.roots),
        'classes': len(partition),
        'dim_U': decomposition.U.dim,
        'ideal_dims': sorted(ideal.total.dim for ideal in decomposition.ideals),
        'dim_center': center(alg).dim,
        'flags': flags,
        'simplicity': certify_simple(alg, dec, partition).verdict,
    }


def _decomposed(alg, H):
    dec = root_decomposition(alg, H)
    return dec, connection_classes(dec)


class TestCatalog(unittest.TestCase):
    def test_entries_match_their_expectations(self):
        for name, entry in sorted(CATALOG.items()):
            values = (2, 3, 4) if name.startswith('example1') else (2, 3)
            for value in values:
                with self.subTest(name=name, value=value):
                    alg, H = entry.build(value)
                    self.assertTrue(validate(alg).passed)
                    measured = _measure(alg, H)
                    expected = entry.expected(value)
                    for key, wanted in expected.items():
                        if key == 'flags':
                            for flag, flag_value in wanted.items():
                                self.assertEqual(measured['flags'][flag], flag_value, f"{name} {flag}")
                        else:
                            self.assertEqual(measured[key], wanted, f"{name} {key}")

    def test_example_dimensions(self):
        self.assertEqual(example1(2)[0].dim, 8)
        self.assertEqual(example1(4)[0].dim, 18)
        self.assertEqual(len(example1(4)[1].basis), 5)

    def test_example_with_four_blocks(self):
        alg, H = example1(4)
        measured = _measure(alg, H)
        self.assertEqual(measured['dim'], 18)
        self.assertEqual(measured['roots'], 13)
        self.assertEqual(measured['classes'], 4)
        self.assertEqual(measured['ideal_dims'], [1, 5, 5, 5])
        self.assertEqual(measured['dim_U'], 2)
        U = global_decomposition(*_decomposed(alg, H)).U
        self.assertEqual(U, Subspace.coordinate(alg.dim, [alg.index_of('e2'), alg.index_of('e3')]))

    def test_nonregular_twist_keeps_the_structure(self):
        regular_dec, regular_partition = _decomposed(*example1(3))
        dec, partition = _decomposed(*example1_nonregular(3))
        self.assertEqual(dec.roots, regular_dec.roots)
        self.assertEqual(partition.classes, regular_partition.classes)
        self.assertEqual(
            sorted(ideal.total.dim for ideal in build_class_ideals(dec, partition)),
            sorted(ideal.total.dim for ideal in build_class_ideals(regular_dec, regular_partition)),
        )

    def test_truncation_must_be_at_least_two(self):
        with self.assertRaises(ValueError):
            example1(1)
        with self.assertRaises(ValueError):
            example1_nonregular(0)

    def test_nonregular_twist_kills_e3(self):
        alg, _ = example1_nonregular(2)
        self.assertFalse(alg.regular)
        e3 = alg.index_of('e3')
        self.assertTrue(all(c == 0 for c in alg.twist_rows[e3]))

    def test_unknown_entry(self):
        with self.assertRaises(KeyError):
            get_entry('g2')

    def test_restriction_needs_a_subalgebra(self):
        alg, H = example1(2)
        x2 = alg.index_of('x2')
        with self.assertRaises(ValidationFailure):
            restrict_to_subspace(alg, Subspace.coordinate(alg.dim, [x2, alg.index_of('y2')]), Subspace.zero(alg.dim))

    def test_class_ideal_restriction_keeps_dimensions(self):
        alg, H = example1(3)
        dec = root_decomposition(alg, H)
        for ideal in build_class_ideals(dec, connection_classes(dec)):
            restricted, restricted_H = restrict_to_subspace(alg, ideal.total, ideal.H_part)
            self.assertEqual(restricted.dim, ideal.total.dim)
            self.assertEqual(restricted_H.dim, ideal.H_part.dim)
            self.assertTrue(validate(restricted).passed)


if __name__ == '__main__':
    unittest.main()

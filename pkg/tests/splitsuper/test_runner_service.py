import unittest
import sys
import os
from unittest.mock import patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from splitsuper import runner_service
from splitsuper.catalog import example1, twisted_osp12
from splitsuper.exceptions import TheoremViolation
from splitsuper.models.ideals import SIMPLE, SimplicityVerdict
from splitsuper.runner_service import CHECKS, SuiteReport, run_property_suite
from splitsuper.services.connection_service import connection_classes
from splitsuper.services.homsuper_service import direct_sum, grade, yau_twist
from splitsuper.services.oracle_service import sl2, sl2_twist
from splitsuper.services.rootspace_service import root_decomposition
from splitsuper.utils.exactlin import Subspace


def _instance(alg, H):
    dec = root_decomposition(alg, H)
    return runner_service._Instance(0, alg, H, dec=dec, partition=connection_classes(dec))


def _sl2_pair():
    alg = direct_sum([yau_twist(sl2(), sl2_twist(2)), yau_twist(sl2(), sl2_twist(3))])
    return alg, grade(alg, Subspace.coordinate(6, [0, 3]))


class TestPropertySuite(unittest.TestCase):
    def test_small_run_passes(self):
        report = run_property_suite(seeds=5, max_dim=7)
        self.assertTrue(report.passed, [v.to_dict() for v in report.violations])
        self.assertEqual(report.instances, 5)
        self.assertEqual(report.checks['AXIOMS'], 5)
        self.assertEqual(set(report.checks), {name for name, _ in CHECKS})

    def test_hundred_seeds_up_to_dimension_ten(self):
        report = run_property_suite(seeds=100, max_dim=10)
        self.assertTrue(report.passed, [v.to_dict() for v in report.violations])
        self.assertEqual(report.instances, 100)
        self.assertEqual(report.checks['SIMPLICITY'], 100)

    def test_offset_seeds(self):
        report = run_property_suite(seeds=2, max_dim=5, first_seed=40)
        self.assertEqual(report.instances, 2)
        self.assertEqual(report.to_dict()['max_dim'], 5)

    def test_violation_is_recorded_and_later_checks_skipped(self):
        def explode(instance):
            raise TheoremViolation("forced", check='ROOT_DECOMPOSITION')

        checks = [(name, explode if name == 'ROOT_DECOMPOSITION' else check) for name, check in CHECKS]
        with patch.object(runner_service, 'CHECKS', checks):
            report = run_property_suite(seeds=1, max_dim=4)
        self.assertFalse(report.passed)
        self.assertEqual(report.violations[0].check, 'ROOT_DECOMPOSITION')
        self.assertNotIn('CONNECTIONS', report.checks)

    def test_report_dict(self):
        report = SuiteReport(seeds=0, max_dim=3)
        report.record(7, 'AXIOMS', ["broken"])
        data = report.to_dict()
        self.assertFalse(data['passed'])
        self.assertEqual(data['violations'], [{'seed': 7, 'check': 'AXIOMS', 'message': 'broken'}])
        self.assertEqual(data['checks'], {'AXIOMS': 1})


class TestSimplicityCheck(unittest.TestCase):
    def _forged(self):
        return patch.object(runner_service, 'certify_simple',
                            return_value=SimplicityVerdict(SIMPLE, 'theorem', ("forged",)))

    def test_genuine_verdicts_pass(self):
        self.assertEqual(runner_service._check_simplicity(_instance(*example1(2))), [])
        self.assertEqual(runner_service._check_simplicity(_instance(*twisted_osp12(3))), [])
        self.assertEqual(runner_service._check_simplicity(_instance(*_sl2_pair())), [])

    def test_forged_simple_verdict_with_a_proper_class_ideal(self):
        with self._forged():
            problems = runner_service._check_simplicity(_instance(*example1(2)))
        self.assertTrue(any("is proper" in p for p in problems), problems)

    def test_forged_simple_verdict_against_the_oracle(self):
        with self._forged():
            problems = runner_service._check_simplicity(_instance(*_sl2_pair()))
        self.assertTrue(any("oracle says NOT_SIMPLE" in p for p in problems), problems)
        self.assertTrue(any("with 2 classes" in p for p in problems), problems)


if __name__ == '__main__':
    unittest.main()

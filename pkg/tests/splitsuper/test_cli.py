import json
import os
import sys
import unittest
from unittest.mock import patch

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))

from click.testing import CliRunner

from splitsuper import config
from splitsuper.catalog import example1
from splitsuper.cli import cli
from splitsuper.utils.document_parser import dump_document, save_document


def _save_example(path='example1.json'):
    alg, H = example1(2)
    save_document(alg, path, H)


class TestCli(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def _invoke(self, *args):
        return self.runner.invoke(cli, ['--json', *args])

    def _report(self, *args):
        result = self._invoke(*args)
        self.assertEqual(result.exit_code, 0, result.output)
        return json.loads(result.output)

    def test_catalog_emits_a_document(self):
        with self.runner.isolated_filesystem():
            result = self._invoke('catalog', 'example1', '--param', '2', '--emit', 'example1.json')
            self.assertEqual(result.exit_code, 0, result.output)
            with open('example1.json') as f:
                data = json.load(f)
            self.assertEqual(len(data['basis']), 8)
            self.assertEqual(data['magsa'], [1, 2, 5])

    def test_catalog_inline_document(self):
        report = self._report('catalog', 'sl2', '--param', '3')
        self.assertEqual(report['command'], 'catalog')
        self.assertEqual(report['expected']['roots'], 2)
        self.assertEqual(len(report['document']['basis']), 3)

    def test_catalog_defaults_per_entry(self):
        with patch.object(config, 'CATALOG_DEFAULT_N', 4):
            report = self._report('catalog', 'example1')
            self.assertEqual(report['parameter'], {'N': 4})
            self.assertEqual(report['algebra']['dim'], 18)
            report = self._report('catalog', 'osp12')
            self.assertEqual(report['parameter'], {'n': 2})

    def test_validate_roots_and_connections(self):
        with self.runner.isolated_filesystem():
            _save_example()
            report = self._report('validate', 'example1.json')
            self.assertTrue(report['passed'])
            self.assertEqual(report['algebra']['dim'], 8)

            report = self._report('roots', 'example1.json')
            self.assertEqual([r['coordinates'] for r in report['roots']],
                             [['0', '-2'], ['0', '-1'], ['0', '1'], ['0', '2'], ['1', '0']])
            self.assertEqual(report['magsa']['maximality'], 'MAXIMAL_CONFIRMED')
            self.assertEqual(report['odd_roots'], [1, 2])

            report = self._report('connections', 'example1.json', '--pair', '3', '1', '--witness')
            self.assertTrue(report['pair']['connected'])
            self.assertEqual(report['class_count'], 2)
            self.assertEqual(report['witnesses'][0]['partial_sums'], [['0', '2'], ['0', '1']])

    def test_decompose_and_simplicity(self):
        with self.runner.isolated_filesystem():
            _save_example()
            report = self._report('decompose', 'example1.json')
            self.assertEqual(report['dim_U'], 2)
            self.assertEqual([ideal['dim'] for ideal in report['ideals']], [5, 1])
            self.assertEqual(report['U'], ['e2', 'e3'])

            report = self._report('simplicity', 'example1.json')
            self.assertEqual(report['verdict'], 'NOT_SIMPLE')
            self.assertEqual(report['method'], 'class_ideal')
            self.assertEqual(report['witness'], ['e1'])

    def test_components_of_a_simple_algebra(self):
        with self.runner.isolated_filesystem():
            self._invoke('catalog', 'osp12', '--emit', 'osp.json')
            report = self._report('components', 'osp.json')
            self.assertEqual(report['component_count'], 1)
            self.assertEqual(report['components'][0]['verdict'], 'SIMPLE')

    def test_components_refused_without_hypotheses(self):
        with self.runner.isolated_filesystem():
            _save_example()
            result = self._invoke('components', 'example1.json')
            self.assertEqual(result.exit_code, 4)

    def test_invalid_algebra_exits_3(self):
        alg, H = example1(2)
        data = dump_document(alg, H)
        data['phi'] = [entry for entry in data['phi'] if entry[0] != 3] + [[3, 3, "1"]]
        with self.runner.isolated_filesystem():
            with open('broken.json', 'w') as f:
                json.dump(data, f)
            self.assertEqual(self._invoke('validate', 'broken.json').exit_code, 3)
            self.assertEqual(self._invoke('roots', 'broken.json').exit_code, 3)

    def test_parse_errors_exit_2(self):
        with self.runner.isolated_filesystem():
            with open('bad.json', 'w') as f:
                f.write('{"basis": [')
            self.assertEqual(self._invoke('validate', 'bad.json').exit_code, 2)
            self.assertEqual(self._invoke('validate', 'missing.json').exit_code, 2)

    def test_not_split_exits_4(self):
        with self.runner.isolated_filesystem():
            _save_example()
            result = self._invoke('roots', 'example1.json', '--magsa', '2')
            self.assertEqual(result.exit_code, 4)

    def test_usage_errors_exit_1(self):
        with self.runner.isolated_filesystem():
            _save_example()
            self.assertEqual(self._invoke('roots', 'example1.json', '--magsa', 'a,b').exit_code, 1)
            self.assertEqual(self._invoke('connections', 'example1.json', '--pair', '0', '9').exit_code, 1)
        self.assertEqual(self._invoke('catalog', 'example1', '--param', '1').exit_code, 1)
        self.assertEqual(self._invoke('catalog', 'e8').exit_code, 1)
        self.assertEqual(self._invoke('no-such-command').exit_code, 1)

    def test_fuzz(self):
        report = self._report('fuzz', '--seeds', '3', '--max-dim', '6')
        self.assertTrue(report['passed'])
        self.assertEqual(report['instances'], 3)

    def test_text_output(self):
        result = self.runner.invoke(cli, ['catalog', 'sl2'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn('command: catalog', result.output)


if __name__ == '__main__':
    unittest.main()

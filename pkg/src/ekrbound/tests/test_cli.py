# -*- coding: utf-8 -*-
import shutil
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path
from unittest import mock

import pandas as pd
import pytest

from ekrbound.cli import RunConfig, create_parser, main, parse_weights
from ekrbound.errors import ParameterDomainError
from ekrbound.report import BOUND_CSV_COLUMNS, parse_record
from ekrbound.utils.rich_help import format_examples


class ParseWeightsTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_weights("5=1, 3=-8/5"), {5: 1, 3: Fraction(-8, 5)})

    def test_bad_entries(self):
        for text in ("", "3", "x=1", "3=1/0"):
            with self.assertRaises(ParameterDomainError):
                parse_weights(text)


class HelpTest(unittest.TestCase):

    def test_format_examples(self):
        text = format_examples([('ekrb verify', '全网格'), ('ekrb bound --d 5 --q 2', '')], notes='默认网格')
        self.assertTrue(text.startswith('[bold]说明:[/bold]'))
        self.assertIn('  ' + 'ekrb verify'.ljust(24) + '[dim]# 全网格[/dim]', text)
        self.assertIn('  ekrb bound --d 5 --q 2\n', text)

    def test_help_lists_grouped_commands(self):
        text = create_parser().format_help()
        for name in ('bound', 'spectrum', 'lp', 'oracle', 'equality', 'sweep', 'verify'):
            self.assertIn(name, text)


class RunConfigTest(unittest.TestCase):

    def config(self, argv):
        return RunConfig.from_namespace(create_parser().parse_args(argv))

    def test_even_d_rejected(self):
        with self.assertRaisesRegex(ParameterDomainError, r"d must be odd \(got d=4\)"):
            self.config(['bound', '--d', '4', '--q', '2']).validate()

    def test_even_d_allowed_for_spectrum_and_weights(self):
        self.config(['spectrum', '--d', '4', '--q', '2']).validate()
        self.config(['bound', '--d', '4', '--q', '2', '--weights', '4=1']).validate()

    def test_verify_default_grid(self):
        config = self.config(['verify'])
        self.assertEqual(len(config.grid), 12 * 10)
        self.assertEqual(config.command, "verify")


class MainTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.output_dir = Path(tempfile.mkdtemp(prefix="ekrbound_cli_"))

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.output_dir, ignore_errors=True)

    def records(self, name, argv):
        out = self.output_dir / name
        code = main(argv + ['--format', 'records', '-o', str(out)])
        lines = out.read_text(encoding='utf-8').splitlines()
        return code, [parse_record(line) for line in lines]

    def test_version(self):
        self.assertEqual(main(['--version']), 0)

    def test_usage_error(self):
        self.assertEqual(main(['bound', '--d', '4', '--q', '2']), 2)
        self.assertEqual(main(['bound', '--d', '5']), 2)
        self.assertEqual(main(['bound', '--d', '5', '--q', '1']), 2)

    def test_bound_records(self):
        code, records = self.records('bound.jsonl', ['bound', '--d', '5', '--q', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0]['ratio_bound'], 347139)
        self.assertEqual(records[0]['f'], Fraction(20480, 8517))

    def test_bound_records_beyond_float_range(self):
        code, records = self.records('bound_17_16.jsonl', ['bound', '--d', '17', '25', '--q', '16', '--quiet'])
        self.assertEqual(code, 0)
        self.assertEqual(len(records), 2)
        for record in records:
            self.assertTrue(record['bounds_match'])
            self.assertIsNone(record['ratio_bound_approx'])

    def test_unexpected_error_exit_code(self):
        with mock.patch('ekrbound.cli.emit', side_effect=RuntimeError('boom')):
            self.assertEqual(main(['bound', '--d', '5', '--q', '2', '--quiet']), 1)

    def test_spectrum_csv(self):
        out = self.output_dir / 'P.csv'
        self.assertEqual(main(['spectrum', '--d', '3', '--q', '2', '--format', 'csv', '-o', str(out)]), 0)
        frame = pd.read_csv(out, dtype=str)
        self.assertEqual(frame.loc[0, 'P_0_3'], '512/1')
        self.assertEqual(frame.loc[0, 'theta_1'], '9/1')

    def test_bound_grid_text(self):
        out = self.output_dir / 'bound.txt'
        self.assertEqual(main(['bound', '--d', '3', '5', '--q', '2', '3', '-o', str(out)]), 0)
        text = out.read_text(encoding='utf-8')
        self.assertIn('347139', text)
        self.assertIn('(3, 2)', text)

    def test_bound_csv(self):
        out = self.output_dir / 'bound.csv'
        self.assertEqual(main(['bound', '--d', '3', '5', '--q', '2', '--format', 'csv', '-o', str(out)]), 0)
        frame = pd.read_csv(out, dtype=str)
        self.assertEqual(list(frame.columns), BOUND_CSV_COLUMNS)
        self.assertEqual(list(frame['ratio_bound']), ['57/1', '347139/1'])

    def test_weights(self):
        code, records = self.records('weights.jsonl', ['bound', '--d', '3', '--q', '2', '--weights', '3=1'])
        self.assertEqual(code, 0)
        self.assertEqual(records[0]['ratio_bound'], 99)
        code, records = self.records('weights_f.jsonl', ['bound', '--d', '3', '--q', '2', '--weights', '3=1,1=-8/5'])
        self.assertEqual(records[0]['ratio_bound'], 57)
        self.assertEqual(main(['bound', '--d', '3', '--q', '2', '--weights', '1=1,3=1']), 2)

    def test_spectrum_text(self):
        out = self.output_dir / 'P.txt'
        self.assertEqual(main(['spectrum', '--d', '3', '--q', '2', '-o', str(out)]), 0)
        text = out.read_text(encoding='utf-8')
        self.assertIn('theta 42 9 -3 -21', text)
        self.assertIn('P[0] 1 42 336 512', text)

    def test_lp(self):
        code, records = self.records('lp.jsonl', ['lp', '--d', '5', '--q', '2', '3'])
        self.assertEqual(code, 0)
        self.assertTrue(all(r['equal'] for r in records))

    def test_oracle(self):
        code, records = self.records('oracle.jsonl', ['oracle', '--d', '1', '2', '--q', '2'])
        self.assertEqual(code, 0)
        self.assertEqual([r['N'] for r in records], [3, 27])
        self.assertEqual(main(['oracle', '--d', '4', '--q', '2']), 3)
        self.assertEqual(main(['oracle', '--d', '2', '--q', '3', '--max-vertices', '50']), 3)

    @pytest.mark.slow
    def test_oracle_h54(self):
        code, records = self.records('oracle_h54.jsonl', ['oracle', '--d', '3', '--q', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(records[0]['N'], 891)

    def test_equality(self):
        code, records = self.records('equality.jsonl', ['equality', '--d', '5', '--q', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(records[0]['verdict'], 'contradiction-found')

    def test_sweep(self):
        code, records = self.records('sweep.jsonl', ['sweep', '--d', '3', '5', '--q', '2', '--grid-size', '50'])
        self.assertEqual(code, 0)
        self.assertTrue(all(r['optimal_wins'] for r in records))

    def test_verify_small_grid(self):
        code, records = self.records('verify.jsonl', ['verify', '--d', '3', '5', '7', '--q', '2', '3'])
        self.assertEqual(code, 0)
        self.assertEqual(len(records), 6)
        self.assertTrue(all(r['ok'] for r in records))


if __name__ == '__main__':
    unittest.main()

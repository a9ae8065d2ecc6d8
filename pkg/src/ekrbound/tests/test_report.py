# -*- coding: utf-8 -*-
import io
import json
import unittest
from fractions import Fraction

import pandas as pd

from ekrbound.equality import intersection_distribution
from ekrbound.hoffman import WeightVector, bound_report, f_sweep, generic_ratio_bound
from ekrbound.lp import lp_vs_ratio
from ekrbound.report import (
    BOUND_CSV_COLUMNS,
    bound_frame,
    parse_record,
    to_frame,
    to_record,
    to_record_line,
    to_tables,
    write_csv,
)
from ekrbound.scheme import SchemeParams, eigenmatrix
from ekrbound.verify import check_params


class RecordTest(unittest.TestCase):

    def test_bound_record_is_exact(self):
        line = to_record_line(bound_report(SchemeParams(3, 2)))
        raw = json.loads(line)
        self.assertEqual(raw['kind'], 'bound')
        self.assertEqual(raw['K'], '2224/5')
        self.assertEqual(raw['ratio_bound'], '57/1')
        record = parse_record(line)
        self.assertEqual(record['K'], Fraction(2224, 5))
        self.assertEqual(record['lambda'], Fraction(-152, 5))
        self.assertEqual(record['f'], Fraction(8, 5))
        self.assertEqual(record['spectrum'][2], Fraction(64, 5))
        self.assertEqual(record['pure_hoffman_bound'], 99)
        self.assertIsInstance(record['K_approx'], float)
        self.assertAlmostEqual(record['K_approx'], 444.8)

    def test_large_values_survive(self):
        record = parse_record(to_record_line(bound_report(SchemeParams(25, 16))))
        self.assertEqual(record['ratio_bound'], record['closed_form_bound'])
        self.assertIsInstance(record['ratio_bound'], Fraction)
        self.assertTrue(record['bounds_match'])
        self.assertIsNone(record['ratio_bound_approx'])
        self.assertIsNone(record['K_approx'])
        self.assertIsInstance(record['f_approx'], float)

    def test_generic_bound_record(self):
        rep = generic_ratio_bound(SchemeParams(3, 2), WeightVector.from_mapping(3, {3: 1}))
        record = to_record(rep)
        self.assertEqual(record['ratio_bound'], '99/1')
        self.assertNotIn('f', record)

    def test_other_kinds(self):
        params = SchemeParams(5, 2)
        self.assertEqual(to_record(eigenmatrix(params))['kind'], 'eigenmatrix')
        lp = parse_record(to_record_line(lp_vs_ratio(params)))
        self.assertEqual(lp['optimum'], 347139)
        self.assertTrue(lp['equal'])
        eq = parse_record(to_record_line(intersection_distribution(params)))
        self.assertEqual(eq['verdict'], 'contradiction-found')
        self.assertEqual(eq['n'][0], 1)
        sweep = to_record(f_sweep(SchemeParams(3, 2), 20))
        self.assertEqual(sweep['grid_size'], 20)
        self.assertEqual(len(sweep['samples']), 20)
        suite = to_record(check_params(SchemeParams(5, 2)))
        self.assertEqual(suite['kind'], 'verify')
        self.assertTrue(suite['ok'])

    def test_unknown_type(self):
        with self.assertRaises(TypeError):
            to_record(object())


class FrameTest(unittest.TestCase):

    def test_bound_columns(self):
        reports = [bound_report(SchemeParams(d, 2)) for d in (3, 5)]
        frame = bound_frame(reports)
        self.assertEqual(list(frame.columns), BOUND_CSV_COLUMNS)
        self.assertEqual(frame.loc[0, 'ratio_bound'], '57/1')
        self.assertEqual(frame.loc[1, 'closed_form_bound'], '347139')
        self.assertEqual(frame.loc[0, 'f_num'], '8')

    def test_csv_round_trip(self):
        buffer = io.StringIO()
        write_csv([bound_report(SchemeParams(5, 3))], buffer)
        buffer.seek(0)
        frame = pd.read_csv(buffer, dtype=str)
        self.assertEqual(list(frame.columns), BOUND_CSV_COLUMNS)
        self.assertEqual(int(frame.loc[0, 'closed_form_bound']), 28432 * 4 * 2188)
        self.assertEqual(frame.loc[0, 'match'], 'True')

    def test_flattened_frame(self):
        frame = to_frame([intersection_distribution(SchemeParams(5, 2))])
        self.assertIn('n_0', frame.columns)
        self.assertIn('verdict', frame.columns)

    def test_eigenmatrix_frame_keeps_P(self):
        frame = to_frame([eigenmatrix(SchemeParams(3, 2))])
        self.assertIn('theta_0', frame.columns)
        self.assertEqual([frame.loc[0, f'P_0_{j}'] for j in range(4)], ['1/1', '42/1', '336/1', '512/1'])
        self.assertNotIn('P_4_0', frame.columns)
        self.assertIn('P_3_3', frame.columns)


class TableTest(unittest.TestCase):

    def test_one_table_per_kind(self):
        tables = to_tables([bound_report(SchemeParams(3, 2)), bound_report(SchemeParams(5, 2))])
        self.assertEqual(len(tables), 1)
        self.assertEqual(tables[0].row_count, 2)
        self.assertEqual(to_tables([]), [])

    def test_eigenmatrix_tables(self):
        tables = to_tables([eigenmatrix(SchemeParams(3, 2)), eigenmatrix(SchemeParams(5, 2))])
        self.assertEqual(len(tables), 2)
        self.assertEqual(tables[1].row_count, 6)


if __name__ == '__main__':
    unittest.main()

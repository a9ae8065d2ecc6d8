# -*- coding: utf-8 -*-
import unittest
from fractions import Fraction

from ekrbound.equality import (
    CONTRADICTION,
    NO_CONTRADICTION,
    EqualityReport,
    equality_sweep,
    intersection_distribution,
    solve_coeffs,
)
from ekrbound.errors import ParameterDomainError
from ekrbound.hoffman import closed_form_bound
from ekrbound.scheme import SchemeParams, eigenmatrix

ODD_D_FROM_5 = [SchemeParams(d, q) for d, q in ((5, 2), (5, 3), (7, 2), (7, 3))]


class SolveCoeffsTest(unittest.TestCase):

    def test_substitution(self):
        for params in ODD_D_FROM_5:
            em = eigenmatrix(params)
            d = params.d
            s = Fraction(closed_form_bound(params), em.N)
            a1, ad = solve_coeffs(params)
            self.assertEqual(s * em.k[d] + a1 * em.P[1][d] + ad * em.P[d][d], 0)
            self.assertEqual(s + a1 + ad, 1)

    def test_rejects_even_d(self):
        with self.assertRaisesRegex(ParameterDomainError, "d must be odd"):
            solve_coeffs(SchemeParams(4, 2))


class IntersectionDistributionTest(unittest.TestCase):

    def test_contradiction_in_proven_range(self):
        for params in ODD_D_FROM_5:
            rep = intersection_distribution(params)
            self.assertEqual(rep.verdict, CONTRADICTION, str(params))
            self.assertTrue(rep.witnesses)
            self.assertFalse(all(rep.integral_flags))

    def test_boundary_values(self):
        for params in ODD_D_FROM_5:
            rep = intersection_distribution(params)
            self.assertEqual(rep.n[0], 1)
            self.assertEqual(rep.n[-1], 0)
            self.assertEqual(sum(rep.n), rep.size)
            self.assertEqual(len(rep.n), params.d + 1)
            self.assertNotIn(0, rep.witnesses)

    def test_explicit_size(self):
        params = SchemeParams(5, 2)
        rep = intersection_distribution(params, size=1000)
        self.assertEqual(rep.size, 1000)
        self.assertEqual(sum(rep.n), 1000)

    def test_verdict_from_witnesses(self):
        params = SchemeParams(5, 2)
        clean = EqualityReport(params=params, size=3, a1=Fraction(0), ad=Fraction(0),
                               n=(Fraction(1), Fraction(2), Fraction(0)))
        self.assertEqual(clean.verdict, NO_CONTRADICTION)
        negative = EqualityReport(params=params, size=3, a1=Fraction(0), ad=Fraction(0),
                                  n=(Fraction(1), Fraction(3), Fraction(-1)))
        self.assertEqual(negative.witnesses, [2])
        self.assertEqual(negative.integral_flags, [True, True, True])

    def test_sweep(self):
        reports = equality_sweep(ODD_D_FROM_5[:2])
        self.assertEqual([r.params for r in reports], ODD_D_FROM_5[:2])


if __name__ == '__main__':
    unittest.main()

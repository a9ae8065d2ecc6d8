# -*- coding: utf-8 -*-
import random
import unittest
from fractions import Fraction

from ekrbound.errors import ParameterDomainError
from ekrbound.exactnum import (
    as_fraction_str,
    gaussian_binomial,
    is_integral,
    parse_fraction_str,
    q_power,
    verify_polynomial_identity,
)
from ekrbound.scheme import SchemeParams, valencies


class GaussianBinomialTest(unittest.TestCase):

    def test_known_values(self):
        self.assertEqual(gaussian_binomial(7, 0, 4), 1)
        self.assertEqual(gaussian_binomial(3, 1, 4), 21)
        self.assertEqual(gaussian_binomial(5, 2, 4), 5797)
        self.assertEqual(gaussian_binomial(2, 3, 4), 0)

    def test_symmetry(self):
        for b in (2, 4, 9):
            for n in range(9):
                for k in range(n + 1):
                    self.assertEqual(gaussian_binomial(n, k, b), gaussian_binomial(n, n - k, b))

    def test_pascal_rule(self):
        for b in (4, 9, 16):
            for n in range(1, 10):
                for k in range(1, n + 1):
                    self.assertEqual(
                        gaussian_binomial(n, k, b),
                        gaussian_binomial(n - 1, k - 1, b) + b ** k * gaussian_binomial(n - 1, k, b),
                    )

    def test_large_values_stay_exact(self):
        value = gaussian_binomial(25, 12, 256)
        self.assertIsInstance(value, int)
        self.assertEqual(len(str(value)), 376)
        # d = 25, q = 16: k_d = q^(d^2)，约 10^752
        k = valencies(SchemeParams(25, 16))
        self.assertEqual(k[-1], 16 ** 625)
        self.assertGreater(len(str(k[-1])), 750)

    def test_rejects_bad_domain(self):
        with self.assertRaises(ParameterDomainError):
            gaussian_binomial(-1, 0, 4)
        with self.assertRaises(ParameterDomainError):
            gaussian_binomial(3, 1, 1)
        with self.assertRaises(ParameterDomainError):
            q_power(2, -1)


class RationalTest(unittest.TestCase):

    def test_fraction_text_codec(self):
        for x in (Fraction(20480, 8517), Fraction(-152, 5), Fraction(57), Fraction(0)):
            self.assertEqual(parse_fraction_str(as_fraction_str(x)), x)
        self.assertEqual(as_fraction_str(57), "57/1")
        self.assertEqual(parse_fraction_str(" 12 "), 12)
        self.assertTrue(is_integral(Fraction(10, 5)))
        self.assertFalse(is_integral(Fraction(8, 5)))

    def test_field_axioms_spot_checks(self):
        rng = random.Random(20240611)
        for _ in range(200):
            a, b, c = (Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6)) for _ in range(3))
            self.assertEqual((a + b) + c, a + (b + c))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            if a:
                self.assertEqual(a * (1 / a), 1)
            self.assertGreater(a.denominator, 0)


class PolynomialIdentityTest(unittest.TestCase):

    def test_constant(self):
        self.assertTrue(verify_polynomial_identity(lambda q: 1, lambda q: 1, [2, 3, 5]))

    def test_factorisation(self):
        check = verify_polynomial_identity(lambda q: q * q - 1, lambda q: (q - 1) * (q + 1), [2, 3, 7])
        self.assertTrue(check.ok)
        self.assertEqual(len(check.points), 3)

    def test_mismatch_is_reported(self):
        check = verify_polynomial_identity(lambda q: q * q, lambda q: 2 * q, [2, 3])
        self.assertFalse(check)
        self.assertEqual([p.point for p in check.failures], [3])

    def test_division_by_zero_per_point(self):
        check = verify_polynomial_identity(lambda q: 1 / (q - 3), lambda q: 1 / (q - 3), [2, 3, 4])
        self.assertFalse(check)
        self.assertEqual(len(check.failures), 1)
        self.assertIn('division by zero', check.failures[0].error)
        self.assertTrue(check.points[0].ok and check.points[2].ok)

    def test_empty_point_list_is_not_a_certificate(self):
        self.assertFalse(verify_polynomial_identity(lambda q: 1, lambda q: 2, []))


if __name__ == '__main__':
    unittest.main()

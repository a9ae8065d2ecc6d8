# -*- coding: utf-8 -*-
import shutil
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ekrbound.errors import ParameterDomainError, ResourceGuardError
from ekrbound.oracle import (
    build_field,
    check_resource_guard,
    distance_distribution,
    dump_polar_space,
    enumerate_generators,
    gram_codim,
    hermitian_form,
    isotropic_points,
    load_polar_space_dump,
    normalize,
    pencil_counts,
    point_pencil,
    rank,
    rref,
    run_oracle,
    span_points,
    verify_scheme_matrices,
)
from ekrbound.scheme import SchemeParams, eigenmatrix, valencies


class GaloisFieldTest(unittest.TestCase):

    def test_gf4(self):
        F = build_field(2)
        self.assertEqual(F.size, 4)
        self.assertEqual(F.conj, (0, 1, 3, 2))
        self.assertEqual(F.subfield, (0, 1))
        self.assertTrue(F.is_cyclic)
        for x in range(4):
            self.assertIn(F.mul[x][F.conj[x]], (0, 1))

    def test_gf9(self):
        F = build_field(3)
        self.assertTrue(F.is_cyclic)
        self.assertEqual(F.order(4), 8)
        self.assertEqual(F.subfield, (0, 1, 2))
        self.assertEqual(F.mul[3][3], F.neg[1])
        for x in range(1, 9):
            self.assertEqual(F.mul[x][F.inv[x]], 1)
            self.assertIn(F.mul[x][F.conj[x]], F.subfield)

    def test_unsupported(self):
        with self.assertRaises(ParameterDomainError):
            build_field(4)
        with self.assertRaises(ParameterDomainError):
            build_field(2).order(0)


class LinearAlgebraTest(unittest.TestCase):

    def setUp(self):
        self.F = build_field(2)

    def test_normalize(self):
        self.assertEqual(normalize(self.F, (0, 2, 3)), (0, 1, self.F.mul[self.F.inv[2]][3]))
        with self.assertRaises(ParameterDomainError):
            normalize(self.F, (0, 0))

    def test_rref_is_canonical(self):
        a = rref(self.F, [(1, 1, 0), (0, 1, 1)])
        b = rref(self.F, [(1, 0, 1), (0, 2, 2)])
        self.assertEqual(a, b)
        self.assertEqual(rank(self.F, [(1, 1, 0), (1, 1, 0)]), 1)
        self.assertEqual(rref(self.F, []), ())

    def test_span_points(self):
        basis = rref(self.F, [(1, 0, 0), (0, 1, 0)])
        points = span_points(self.F, basis)
        self.assertEqual(len(points), 5)
        self.assertEqual(len(set(points)), 5)

    def test_hermitian_form_is_sesquilinear(self):
        F = self.F
        u, v = (1, 2, 3, 0), (3, 3, 1, 2)
        self.assertEqual(hermitian_form(F, v, u), F.conj[hermitian_form(F, u, v)])
        scaled = tuple(F.mul[2][x] for x in u)
        self.assertEqual(hermitian_form(F, scaled, v), F.mul[2][hermitian_form(F, u, v)])


class EnumerationTest(unittest.TestCase):

    def test_h1(self):
        ps = enumerate_generators(SchemeParams(1, 2))
        self.assertEqual(ps.N, 3)
        self.assertEqual(len(ps.points), 3)
        self.assertEqual(distance_distribution(ps).valencies, (1, 2))

    def test_h3_q2(self):
        params = SchemeParams(2, 2)
        ps = enumerate_generators(params)
        self.assertEqual(ps.N, 27)
        self.assertEqual(len(isotropic_points(ps)), 45)
        self.assertTrue(all(hermitian_form(ps.field, p, p) == 0 for p in isotropic_points(ps)))
        dist = distance_distribution(ps)
        self.assertEqual(dist.valencies, (1, 10, 16))
        self.assertEqual(list(dist.valencies), valencies(params))
        self.assertTrue((pencil_counts(ps) == 3).all())
        self.assertTrue((ps.incidence.sum(axis=1) == 5).all())

    def test_h3_q3(self):
        ps = enumerate_generators(SchemeParams(2, 3))
        self.assertEqual(ps.N, 112)
        self.assertEqual(len(ps.points), 280)

    def test_gram_codim_agrees(self):
        ps = enumerate_generators(SchemeParams(2, 2))
        for s in range(ps.N):
            self.assertEqual(gram_codim(ps.field, ps.generators[0], ps.generators[s]), ps.codim[0, s])

    def test_seed_does_not_change_result(self):
        params = SchemeParams(2, 2)
        plain = enumerate_generators(params)
        shuffled = enumerate_generators(params, seed=7)
        self.assertEqual(plain.generators, shuffled.generators)
        np.testing.assert_array_equal(plain.codim, shuffled.codim)

    def test_resource_guard(self):
        with self.assertRaisesRegex(ResourceGuardError, "max_vertices"):
            check_resource_guard(SchemeParams(4, 2))
        with self.assertRaises(ResourceGuardError):
            enumerate_generators(SchemeParams(3, 2), max_vertices=100)
        with self.assertRaises(ResourceGuardError):
            check_resource_guard(SchemeParams(1, 5))
        self.assertEqual(check_resource_guard(SchemeParams(2, 3)), 112)


class MatrixIdentityTest(unittest.TestCase):

    def test_small_cases(self):
        for d, q in ((1, 2), (2, 2), (2, 3)):
            params = SchemeParams(d, q)
            ps = enumerate_generators(params)
            rep = verify_scheme_matrices(ps, eigenmatrix(params))
            self.assertTrue(rep.annihilated)
            self.assertEqual(rep.recurrence_relations, max(d - 1, 0))
            self.assertIsNone(rep.row_sum)

    def test_wrong_eigenmatrix(self):
        ps = enumerate_generators(SchemeParams(2, 2))
        with self.assertRaises(ParameterDomainError):
            verify_scheme_matrices(ps, eigenmatrix(SchemeParams(2, 3)))


class PencilTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.ps = enumerate_generators(SchemeParams(2, 2))

    def test_pencil(self):
        rep = point_pencil(self.ps, self.ps.points[5])
        self.assertEqual(rep.size, 3)
        self.assertTrue(rep.pairwise_intersecting)
        self.assertIsNone(rep.within_ratio_bound)

    def test_scaled_point(self):
        F = self.ps.field
        point = tuple(F.mul[2][x] for x in self.ps.points[5])
        self.assertEqual(point_pencil(self.ps, point).point, self.ps.points[5])

    def test_rejects_bad_points(self):
        with self.assertRaisesRegex(ParameterDomainError, "not isotropic"):
            point_pencil(self.ps, (1, 0, 0, 0))
        with self.assertRaises(ParameterDomainError):
            point_pencil(self.ps, (1, 0, 0))


class DumpTest(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.output_dir = tempfile.mkdtemp(prefix="ekrbound_test_")

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.output_dir, ignore_errors=True)

    def test_round_trip(self):
        ps = enumerate_generators(SchemeParams(2, 2))
        path = dump_polar_space(ps, Path(self.output_dir) / "h3.txt")
        generators, codim = load_polar_space_dump(path)
        self.assertEqual(tuple(generators), ps.generators)
        np.testing.assert_array_equal(codim, ps.codim)

    def test_run_oracle_dump(self):
        rep = run_oracle(SchemeParams(2, 2), dump_dir=self.output_dir)
        self.assertEqual(rep.N, 27)
        self.assertEqual(rep.pencil.size, 3)
        self.assertTrue((Path(self.output_dir) / "H3_q2.txt").exists())


@pytest.mark.slow
class H54Test(unittest.TestCase):
    """H(5,4)：891 个生成元"""

    @classmethod
    def setUpClass(cls):
        cls.params = SchemeParams(3, 2)
        cls.ps = enumerate_generators(cls.params)

    def test_counts(self):
        self.assertEqual(self.ps.N, 891)
        self.assertEqual(len(self.ps.points), 693)
        self.assertEqual(distance_distribution(self.ps).valencies, (1, 42, 336, 512))
        self.assertTrue((pencil_counts(self.ps) == 27).all())

    def test_matrix_identities(self):
        rep = verify_scheme_matrices(self.ps, eigenmatrix(self.params))
        self.assertEqual(rep.theta, (42, 9, -3, -21))
        self.assertEqual(rep.row_sum, Fraction(2224, 5))

    def test_pencil_within_ratio_bound(self):
        rep = point_pencil(self.ps, self.ps.points[0])
        self.assertEqual(rep.size, 27)
        self.assertEqual(rep.ratio_bound, 57)
        self.assertTrue(rep.within_ratio_bound)


if __name__ == '__main__':
    unittest.main()

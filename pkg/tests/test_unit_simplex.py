import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import unittest
from fractions import Fraction

from src.services.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, ExactSimplex, maximize, maximize_by_dual


class TestExactSimplex(unittest.TestCase):

    def assertFeasible(self, A, b, x):
        for row, bound in zip(A, b):
            self.assertLessEqual(sum(Fraction(a) * v for a, v in zip(row, x)), bound)
        for v in x:
            self.assertGreaterEqual(v, 0)

    def test_small_optimum_with_duals(self):
        A = [[1, 0], [0, 1], [1, 1]]
        b = [2, 3, 4]
        c = [1, 1]
        result = maximize(A, b, c)
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, 4)
        self.assertFeasible(A, b, result.x)
        self.assertEqual(sum(ci * xi for ci, xi in zip(c, result.x)), 4)
        # weak duality holds with equality at the optimum
        y = result.duals
        self.assertTrue(all(v >= 0 for v in y))
        for j in range(2):
            self.assertGreaterEqual(sum(A[i][j] * y[i] for i in range(3)), c[j])
        self.assertEqual(sum(bi * yi for bi, yi in zip(b, y)), 4)

    def test_fractional_optimum_is_exact(self):
        result = maximize([[3]], [1], [1])
        self.assertEqual(result.value, Fraction(1, 3))
        self.assertIsInstance(result.x[0], Fraction)

    def test_phase_one_moves_off_the_origin(self):
        # x >= 2 written as -x <= -2
        result = maximize([[-1], [1]], [-2, 5], [-1])
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, -2)
        self.assertEqual(result.x, [Fraction(2)])

    def test_infeasible(self):
        result = maximize([[1]], [-1], [0])
        self.assertEqual(result.status, INFEASIBLE)
        self.assertIsNone(result.value)

    def test_contradictory_rows(self):
        # x + y <= 1 and x + y >= 3
        result = maximize([[1, 1], [-1, -1]], [1, -3], [0, 0])
        self.assertEqual(result.status, INFEASIBLE)

    def test_unbounded(self):
        result = maximize([[-1]], [0], [1])
        self.assertEqual(result.status, UNBOUNDED)

    def test_degenerate_rows_terminate(self):
        A = [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
        result = maximize(A, [0, 0, 0, 0], [1, 1, 1])
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, 0)

    def test_fractional_rows_keep_their_duals(self):
        A = [[Fraction(1, 2), 0], [0, Fraction(2, 3)], [1, 1]]
        b = [1, 2, Fraction(7, 2)]
        c = [Fraction(1, 3), Fraction(1, 4)]
        result = maximize(A, b, c)
        self.assertEqual(result.status, OPTIMAL)
        self.assertFeasible(A, b, result.x)
        self.assertEqual(sum(ci * xi for ci, xi in zip(c, result.x)), result.value)
        self.assertEqual(sum(bi * yi for bi, yi in zip(b, result.duals)), result.value)
        for j in range(2):
            self.assertGreaterEqual(sum(A[i][j] * result.duals[i] for i in range(3)), c[j])

    def test_auxiliary_variable_leaves_the_basis(self):
        # x >= 1 and x <= 1: phase one ends degenerate
        solver = ExactSimplex([[-1], [1]], [-1, 1], [1])
        result = solver.solve()
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.x, [Fraction(1)])
        aux = solver.n + solver.m
        self.assertNotIn(aux, solver.basic)
        self.assertNotIn(aux, solver.nonbasic)

    def test_denominator_stays_positive(self):
        A = [[-2, 1], [1, -3], [1, 1]]
        b = [-1, -1, 6]
        solver = ExactSimplex(A, b, [1, 2])
        result = solver.solve()
        self.assertEqual(result.status, OPTIMAL)
        self.assertGreater(solver.d, 0)
        self.assertEqual(result.value, Fraction(29, 3))
        self.assertEqual(result.x, [Fraction(7, 3), Fraction(11, 3)])
        self.assertFeasible(A, b, result.x)


class TestDualSolve(unittest.TestCase):

    def test_matches_the_direct_solve(self):
        A = [[1, 0], [0, 1], [1, 1], [-1, 0], [1, 2]]
        b = [2, 3, 4, 0, 7]
        c = [1, 1]
        direct, dual = maximize(A, b, c), maximize_by_dual(A, b, c)
        self.assertEqual(dual.status, OPTIMAL)
        self.assertEqual(dual.value, direct.value)
        self.assertEqual(sum(ci * xi for ci, xi in zip(c, dual.x)), dual.value)
        for row, bound in zip(A, b):
            self.assertLessEqual(sum(a * v for a, v in zip(row, dual.x)), bound)
        self.assertEqual(len(dual.duals), len(A))
        self.assertEqual(sum(bi * yi for bi, yi in zip(b, dual.duals)), dual.value)

    def test_lower_bounds(self):
        # max -x - y with x >= 1, y >= 2
        result = maximize_by_dual([[-1, 0], [0, -1]], [-1, -2], [-1, -1])
        self.assertEqual(result.status, OPTIMAL)
        self.assertEqual(result.value, -3)
        self.assertEqual(result.x, [Fraction(1), Fraction(2)])

    def test_infeasible_primal(self):
        result = maximize_by_dual([[1, 1], [-1, -1]], [1, -3], [1, 0])
        self.assertEqual(result.status, INFEASIBLE)

    def test_unbounded_primal(self):
        result = maximize_by_dual([[-1]], [0], [1])
        self.assertEqual(result.status, UNBOUNDED)


if __name__ == '__main__':
    unittest.main()

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import unittest
from fractions import Fraction

from src.operations.submodularity import (
    corner_closure_violations,
    function_violations,
    is_corner_closed,
    is_submodular,
    is_submodular_function,
    is_submodular_in,
)
from src.services.fixtures import diamond_universe, six_point_fixture
from src.structures.poset import FinitePoset
from src.structures.separations import Subsystem


class TestStructuralSubmodularity(unittest.TestCase):

    def test_vee_is_submodular(self):
        vee = FinitePoset.from_pairs(["a", "b", "c"], [("a", "c"), ("b", "c")])
        self.assertTrue(is_submodular(vee).holds)

    def test_fence_is_not_submodular(self):
        # a < c, b < c, b < d: a and d have neither bound
        fence = FinitePoset.from_pairs(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")])
        report = is_submodular(fence)
        self.assertFalse(report.holds)
        self.assertEqual(report.violations, [(0, 3)])

    def test_antichain_is_not_submodular(self):
        report = is_submodular(FinitePoset.antichain(2))
        self.assertEqual(report.violations, [(0, 1)])

    def test_subset_of_a_host(self):
        diamond = diamond_universe().poset
        self.assertFalse(is_submodular_in(0b0110, diamond).holds)
        self.assertTrue(is_submodular_in(0b0111, diamond).holds)
        self.assertTrue(is_submodular_in(0b1001, diamond).holds)
        self.assertTrue(is_submodular_in(0, diamond).holds)

    def test_six_point_fixture_is_submodular_in_its_host(self):
        universe, sub = six_point_fixture()
        self.assertEqual(len(sub), 20)
        self.assertTrue(is_submodular_in(sub.members, universe.poset).holds)


class TestCornerClosure(unittest.TestCase):

    def setUp(self):
        self.diamond = diamond_universe()
        self.whole = Subsystem(self.diamond, 0b1111)

    def test_pair_missing_its_corners(self):
        part = Subsystem(self.diamond, 0b0110)
        self.assertEqual(corner_closure_violations(part, self.whole, self.diamond), [(1, 2, 3), (1, 2, 0)])
        self.assertFalse(is_corner_closed(part, self.whole, self.diamond))

    def test_corners_outside_the_whole_do_not_count(self):
        part = Subsystem(self.diamond, 0b0110)
        self.assertTrue(is_corner_closed(part, part, self.diamond))
        self.assertTrue(is_corner_closed(self.whole, self.whole, self.diamond))


class TestSubmodularFunctions(unittest.TestCase):

    def setUp(self):
        self.diamond = diamond_universe()

    def test_indicator_of_the_middle(self):
        values = [Fraction(0), Fraction(1), Fraction(1), Fraction(0)]
        self.assertTrue(is_submodular_function(self.diamond, values))
        self.assertTrue(is_submodular_function(self.diamond.poset, values))

    def test_supermodular_valuation(self):
        values = [Fraction(1), Fraction(0), Fraction(0), Fraction(1)]
        self.assertFalse(is_submodular_function(self.diamond, values))
        join, meet = self.diamond.poset.bound_tables
        self.assertEqual(function_violations(join, meet, values), [(1, 2)])

    def test_fractions_are_compared_exactly(self):
        values = [Fraction(1, 3), Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)]
        self.assertTrue(is_submodular_function(self.diamond, values))
        values[3] = Fraction(1, 3) + Fraction(1, 10 ** 12)
        self.assertFalse(is_submodular_function(self.diamond, values))


if __name__ == '__main__':
    unittest.main()

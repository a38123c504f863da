import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import unittest

import numpy as np

from src.operations.order import (
    bound_detail,
    distributivity_violation,
    infimum,
    interval,
    is_distributive,
    is_lattice,
    join_irreducibles,
    require_lattice,
    supremum,
)
from src.structures.poset import FinitePoset
from src.utils.errors import NotALattice

B2 = (["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
M3 = (["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
N5 = (["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")])


class TestLatticeCheck(unittest.TestCase):

    def setUp(self):
        self.b2 = FinitePoset.from_pairs(*B2)
        self.m3 = FinitePoset.from_pairs(*M3)
        self.n5 = FinitePoset.from_pairs(*N5)

    def test_square_is_a_lattice(self):
        check = is_lattice(self.b2)
        self.assertTrue(check.holds)
        self.assertEqual(check.join[1, 2], 3)
        self.assertEqual(check.meet[1, 2], 0)
        self.assertEqual(check.defects, [])

    def test_antichain_is_not_a_lattice(self):
        check = is_lattice(FinitePoset.antichain(2))
        self.assertFalse(check.holds)
        self.assertIsNone(check.join)
        self.assertTrue(any("no common upper bound" in d for d in check.defects))
        with self.assertRaises(NotALattice):
            require_lattice(FinitePoset.antichain(2))

    def test_empty_poset_is_not_a_lattice(self):
        check = is_lattice(FinitePoset(np.zeros((0, 0), dtype=bool)))
        self.assertFalse(check.holds)
        self.assertEqual(check.defects, ["a lattice must be non-empty"])

    def test_two_minimal_upper_bounds(self):
        # a, b both below c and d
        bowtie = FinitePoset.from_pairs(
            ["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]
        )
        found, reason = bound_detail(bowtie, 0, 1, upper=True)
        self.assertIsNone(found)
        self.assertIn("several minimal upper bounds", reason)
        self.assertIn("c, d", reason)
        found, reason = bound_detail(bowtie, 2, 3, upper=False)
        self.assertIsNone(found)
        self.assertIn("several maximal lower bounds", reason)

    def test_pairwise_bounds(self):
        self.assertEqual(supremum(self.n5, 1, 3), 4)
        self.assertEqual(infimum(self.n5, 2, 3), 0)
        self.assertEqual(supremum(self.n5, 1, 2), 2)
        self.assertIsNone(supremum(FinitePoset.antichain(2), 0, 1))
        self.assertEqual(bound_detail(self.n5, 1, 2), (2, ""))


class TestDistributivity(unittest.TestCase):

    def test_square_and_chains_are_distributive(self):
        self.assertTrue(is_distributive(FinitePoset.from_pairs(*B2)))
        self.assertTrue(is_distributive(FinitePoset.chain(4)))

    def test_pentagon_and_diamond_are_not(self):
        for pairs in (M3, N5):
            lattice = FinitePoset.from_pairs(*pairs)
            self.assertFalse(is_distributive(lattice))
            a, b, c = distributivity_violation(lattice)
            join, meet = lattice.bound_tables
            left = (join[a, meet[b, c]], meet[a, join[b, c]])
            right = (meet[join[a, b], join[a, c]], join[meet[a, b], meet[a, c]])
            self.assertNotEqual(left, right)

    def test_non_lattice_is_rejected(self):
        with self.assertRaises(NotALattice):
            is_distributive(FinitePoset.antichain(3))


class TestJoinIrreducibles(unittest.TestCase):

    def test_square(self):
        poset, index = join_irreducibles(FinitePoset.from_pairs(*B2))
        self.assertEqual(index, (1, 2))
        self.assertEqual(poset.labels, ("a", "b"))
        self.assertFalse(poset.comparable(0, 1))

    def test_chain(self):
        poset, index = join_irreducibles(FinitePoset.chain(3))
        self.assertEqual(index, (1, 2))
        self.assertTrue(poset.le(0, 1))

    def test_pentagon(self):
        _, index = join_irreducibles(FinitePoset.from_pairs(*N5))
        self.assertEqual(index, (1, 2, 3))


class TestInterval(unittest.TestCase):

    def test_interval_members(self):
        b2 = FinitePoset.from_pairs(*B2)
        self.assertEqual(interval(b2, 0, 3), [0, 1, 2, 3])
        self.assertEqual(interval(b2, 1, 3), [1, 3])
        self.assertEqual(interval(b2, 1, 2), [])


if __name__ == '__main__':
    unittest.main()

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import unittest

import numpy as np

from src.operations.order import downset_lattice
from src.structures.poset import DownSet, FinitePoset, transitive_closure
from src.utils.bits import full_mask, mask_of, members
from src.utils.errors import InvalidStructure


class TestFinitePoset(unittest.TestCase):

    def setUp(self):
        # a < c, b < c
        self.vee = FinitePoset.from_pairs(["a", "b", "c"], [("a", "c"), ("b", "c")])

    def test_covers_and_pairs_give_the_same_order(self):
        covers = FinitePoset.from_pairs(["x", "y", "z"], [("x", "y"), ("y", "z")])
        pairs = FinitePoset.from_pairs(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])
        np.testing.assert_array_equal(covers.leq, pairs.leq)
        self.assertTrue(covers.le(0, 2))

    def test_cycle_is_rejected(self):
        with self.assertRaises(InvalidStructure):
            FinitePoset.from_pairs(["x", "y"], [("x", "y"), ("y", "x")])

    def test_unknown_label_is_rejected(self):
        with self.assertRaises(InvalidStructure):
            FinitePoset.from_pairs(["x"], [("x", "w")])

    def test_bad_shapes_and_labels(self):
        with self.assertRaises(InvalidStructure):
            FinitePoset([[True, False]])
        with self.assertRaises(InvalidStructure):
            FinitePoset(np.eye(2, dtype=bool), ["a", "a"])
        with self.assertRaises(InvalidStructure):
            FinitePoset(np.eye(2, dtype=bool), ["a"])

    def test_defects_of_handmade_tables(self):
        self.assertEqual(self.vee.defects(), [])
        both_ways = FinitePoset([[True, True], [True, True]])
        self.assertTrue(any("antisymmetric" in d for d in both_ways.defects()))
        self.assertTrue(any("reflexive" in d for d in FinitePoset([[False]]).defects()))
        gap = np.eye(3, dtype=bool)
        gap[0, 1] = gap[1, 2] = True
        self.assertTrue(any("transitive" in d for d in FinitePoset(gap).defects()))

    def test_bound_tables(self):
        join, meet = self.vee.bound_tables
        self.assertEqual(join[0, 1], 2)
        self.assertEqual(meet[0, 1], -1)
        self.assertEqual(meet[0, 2], 0)
        self.assertFalse(join.flags.writeable)

    def test_covers(self):
        self.assertEqual(self.vee.lower_covers(2), [0, 1])
        self.assertEqual(self.vee.upper_covers(0), [2])
        self.assertEqual(self.vee.cover_pairs(), [(0, 2), (1, 2)])
        chain = FinitePoset.chain(4)
        self.assertEqual(chain.cover_pairs(), [(0, 1), (1, 2), (2, 3)])

    def test_bounds_of_subsets(self):
        self.assertEqual(self.vee.upper_bounds(0b011), 0b100)
        self.assertEqual(self.vee.lower_bounds(0b011), 0)
        self.assertEqual(self.vee.lower_bounds(0), 0b111)

    def test_downsets_and_extremes(self):
        self.assertTrue(self.vee.is_downset(0b001))
        self.assertTrue(self.vee.is_downset(0b111))
        self.assertFalse(self.vee.is_downset(0b100))
        self.assertEqual(self.vee.minimal(0b111), [0, 1])
        self.assertEqual(self.vee.maximal(0b111), [2])

    def test_restrict_and_dual(self):
        sub = self.vee.restrict([0, 2])
        self.assertEqual(sub.labels, ("a", "c"))
        self.assertTrue(sub.le(0, 1))
        dual = self.vee.dual()
        self.assertTrue(dual.le(2, 0))
        self.assertFalse(dual.le(0, 2))

    def test_labels(self):
        self.assertEqual(self.vee.set_label(0b101), "{a,c}")
        self.assertEqual(self.vee.index("b"), 1)
        with self.assertRaises(InvalidStructure):
            self.vee.index("z")

    def test_transitive_closure_is_reflexive(self):
        closure = transitive_closure(np.zeros((3, 3), dtype=bool))
        np.testing.assert_array_equal(closure, np.eye(3, dtype=bool))


class TestDownSets(unittest.TestCase):

    def setUp(self):
        self.vee = FinitePoset.from_pairs(["a", "b", "c"], [("a", "c"), ("b", "c")])

    def test_downset_requires_closure(self):
        self.assertEqual(DownSet(self.vee, 0b011).label, "{a,b}")
        with self.assertRaises(InvalidStructure):
            DownSet(self.vee, 0b100)

    def test_downset_lattice_of_vee(self):
        o = downset_lattice(self.vee)
        self.assertEqual(o.downsets, (0, 1, 2, 3, 7))
        self.assertEqual(o.index_of(7), 4)
        with self.assertRaises(InvalidStructure):
            o.index_of(4)
        self.assertTrue(o.lattice.le(o.index_of(1), o.index_of(3)))

    def test_antichain_indices_are_masks(self):
        o = downset_lattice(FinitePoset.antichain(3))
        self.assertEqual(o.downsets, tuple(range(8)))
        self.assertEqual(o.downset(5).members, 5)


class TestBits(unittest.TestCase):

    def test_round_trip(self):
        self.assertEqual(mask_of([0, 3]), 9)
        self.assertEqual(list(members(9)), [0, 3])
        self.assertEqual(full_mask(4), 15)


if __name__ == '__main__':
    unittest.main()

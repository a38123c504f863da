import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import unittest

import numpy as np

from src.operations.completion import (
    DMCompletion,
    cut_lattice,
    cuts_by_definition,
    dm_complete,
    lower_bounds,
    upper_bounds,
    verify_dm,
)
from src.operations.separations import validate
from src.services.fixtures import diamond_universe, two_antichain_system
from src.structures.poset import FinitePoset
from src.structures.separations import SeparationSystem
from src.utils.errors import InvalidStructure


class TestCutLattice(unittest.TestCase):

    def test_chain_is_its_own_completion(self):
        completed = cut_lattice(FinitePoset.chain(3))
        self.assertEqual(completed.cuts, (1, 3, 7))
        self.assertEqual(completed.embedding, (0, 1, 2))
        self.assertEqual(cuts_by_definition(FinitePoset.chain(3)), [1, 3, 7])

    def test_antichain_gains_a_bottom_and_a_top(self):
        antichain = FinitePoset.antichain(2)
        completed = cut_lattice(antichain)
        self.assertEqual(completed.cuts, (0, 1, 2, 3))
        self.assertEqual(list(completed.cuts), cuts_by_definition(antichain))
        self.assertEqual(completed.lattice.labels, ("{}", "{0}", "{1}", "{0,1}"))
        self.assertEqual(completed.embedding, (1, 2))

    def test_empty_poset_completes_to_one_element(self):
        completed = cut_lattice(FinitePoset(np.zeros((0, 0), dtype=bool)))
        self.assertEqual(completed.cuts, (0,))
        self.assertEqual(completed.lattice.n, 1)

    def test_index_of(self):
        completed = cut_lattice(FinitePoset.chain(3))
        self.assertEqual(completed.index_of(3), 1)
        with self.assertRaises(InvalidStructure):
            completed.index_of(2)

    def test_bounds_accept_systems(self):
        system = two_antichain_system()
        self.assertEqual(upper_bounds(system, 0), 0b11)
        self.assertEqual(upper_bounds(system, 0b11), 0)
        self.assertEqual(lower_bounds(system.poset, 0b01), 0b01)


class TestDMComplete(unittest.TestCase):

    def test_two_antichain(self):
        completion = dm_complete(two_antichain_system())
        self.assertIsInstance(completion, DMCompletion)
        self.assertEqual(completion.universe.n, 4)
        self.assertEqual(completion.universe.inv, (3, 2, 1, 0))
        self.assertEqual(completion.embedding, (1, 2))
        self.assertEqual(completion.cut(3), 0b11)
        self.assertEqual(verify_dm(completion), [])
        self.assertTrue(validate(completion.universe).is_universe)

    def test_universe_completes_to_a_copy_of_itself(self):
        diamond = diamond_universe()
        completion = dm_complete(diamond)
        self.assertEqual(completion.universe.n, diamond.n)
        self.assertEqual(verify_dm(completion), [])
        phi = completion.embedding
        for s in range(diamond.n):
            self.assertEqual(completion.universe.star(phi[s]), phi[diamond.star(s)])

    def test_chain_with_a_fixed_point(self):
        system = SeparationSystem(FinitePoset.chain(3), (2, 1, 0))
        completion = dm_complete(system)
        self.assertEqual(completion.universe.n, 3)
        self.assertEqual(verify_dm(completion), [])

    def test_invalid_system_is_rejected(self):
        with self.assertRaises(InvalidStructure):
            dm_complete(SeparationSystem(FinitePoset.chain(2), (0, 1)))

    def test_empty_system_is_rejected(self):
        with self.assertRaises(InvalidStructure):
            dm_complete(SeparationSystem(FinitePoset(np.zeros((0, 0), dtype=bool)), ()))

    def test_verify_reports_a_tampered_embedding(self):
        completion = dm_complete(two_antichain_system())
        tampered = DMCompletion(completion.source, completion.cuts, completion.universe, (2, 1))
        self.assertTrue(verify_dm(tampered))


if __name__ == '__main__':
    unittest.main()

import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import time
import unittest
from fractions import Fraction

from src.operations.induced import (
    InducedWitness,
    NotOrderInduced,
    find_inducing_function,
    inducing_system,
    lift_witness_to_universe,
    restrict_witness_to_lattice,
    symmetrize_mean,
    symmetrize_sum,
    verify_certificate,
    verify_witness,
)
from src.operations.separations import double, lift_subset_to_double
from src.services.fixtures import diamond_universe, six_point_fixture
from src.structures.poset import FinitePoset
from src.utils.errors import InputNotSubmodular, InvalidStructure, InvolutionRequired, NotALattice

F = Fraction


class TestFindInducingFunction(unittest.TestCase):

    def setUp(self):
        self.universe = diamond_universe()
        self.lattice = self.universe.poset

    def test_bottom_and_top_are_induced(self):
        witness = find_inducing_function(self.lattice, 0b1001)
        self.assertIsInstance(witness, InducedWitness)
        self.assertEqual(witness.members(), 0b1001)
        self.assertEqual(witness.threshold, 1)
        self.assertEqual(verify_witness(self.lattice, 0b1001, witness), [])

    def test_symmetric_witness(self):
        witness = find_inducing_function(self.lattice, 0b1001, symmetric=True, inv=self.universe.inv)
        self.assertTrue(witness.symmetric)
        self.assertEqual(witness.values[1], witness.values[2])
        self.assertEqual(witness.values[0], witness.values[3])
        self.assertEqual(verify_witness(self.lattice, 0b1001, witness, self.universe.inv), [])

    def test_middle_pair_is_not_induced(self):
        result = find_inducing_function(self.lattice, 0b0110)
        self.assertIsInstance(result, NotOrderInduced)
        self.assertLessEqual(result.optimum, 0)
        self.assertEqual(verify_certificate(result.certificate), [])

    def test_trivial_subsets(self):
        empty = find_inducing_function(self.lattice, 0)
        self.assertEqual(empty.values, (F(1),) * 4)
        full = find_inducing_function(self.lattice, 0b1111)
        self.assertEqual(full.values, (F(0),) * 4)
        self.assertEqual(full.members(), 0b1111)

    def test_symmetric_needs_an_involution(self):
        with self.assertRaises(InvolutionRequired):
            find_inducing_function(self.lattice, 0b1001, symmetric=True)
        with self.assertRaises(InvalidStructure):
            find_inducing_function(self.lattice, 0b1001, symmetric=True, inv=(0, 1, 2, 3))

    def test_requires_a_lattice(self):
        with self.assertRaises(NotALattice):
            find_inducing_function(FinitePoset.antichain(2), 0b01)

    def test_chain_downsets_are_induced(self):
        chain = FinitePoset.chain(4)
        for subset in (0b0001, 0b0011, 0b0111, 0b1000, 0b0110):
            witness = find_inducing_function(chain, subset)
            self.assertIsInstance(witness, InducedWitness)
            self.assertEqual(witness.members(), subset)

    def test_system_ties_orbits_together(self):
        system = inducing_system(self.lattice, 0b1001, self.universe.inv)
        self.assertEqual(system.classes, [(0, 3), (1, 2)])
        self.assertEqual(system.delta_column, 2)
        self.assertEqual(len(system.rows), len(set(system.rows)))


class TestSixPointFixture(unittest.TestCase):

    def test_no_order_function_induces_it(self):
        universe, sub = six_point_fixture()
        result = find_inducing_function(universe.poset, sub.members, symmetric=True, inv=universe.inv)
        self.assertIsInstance(result, NotOrderInduced)
        self.assertEqual(verify_certificate(result.certificate), [])

    def test_symmetric_decision_is_fast(self):
        universe, sub = six_point_fixture()
        start = time.perf_counter()
        result = find_inducing_function(universe.poset, sub.members, symmetric=True, inv=universe.inv)
        self.assertLess(time.perf_counter() - start, 30)
        self.assertIsInstance(result, NotOrderInduced)
        self.assertLessEqual(result.optimum, 0)

    def test_no_submodular_function_induces_it(self):
        universe, sub = six_point_fixture()
        start = time.perf_counter()
        result = find_inducing_function(universe.poset, sub.members)
        self.assertLess(time.perf_counter() - start, 120)
        self.assertIsInstance(result, NotOrderInduced)
        self.assertEqual(verify_certificate(result.certificate), [])

    def test_rows_are_distinct_per_orbit(self):
        universe, sub = six_point_fixture()
        system = inducing_system(universe.poset, sub.members, universe.inv)
        self.assertEqual(len(system.rows), len(set(system.rows)))
        self.assertEqual(system.delta_column, universe.n // 2)


class TestVerification(unittest.TestCase):

    def setUp(self):
        self.universe = diamond_universe()
        self.lattice = self.universe.poset

    def test_wrong_witness_is_reported(self):
        witness = InducedWitness((F(0),) * 4, F(1))
        problems = verify_witness(self.lattice, 0b1001, witness)
        self.assertEqual(len(problems), 2)
        self.assertIn("a is not a member", problems[0])

    def test_asymmetric_witness_is_reported(self):
        witness = InducedWitness((F(0), F(1), F(2), F(0)), F(1), symmetric=True)
        problems = verify_witness(self.lattice, 0b1001, witness, self.universe.inv)
        self.assertTrue(any("differs" in p for p in problems))
        self.assertTrue(any("without the involution" in p for p in verify_witness(self.lattice, 0b1001, witness)))

    def test_negative_values_and_bad_lengths(self):
        witness = InducedWitness((F(-1), F(1), F(1), F(0)), F(1))
        self.assertTrue(any("negative" in p for p in verify_witness(self.lattice, 0b1001, witness)))
        short = InducedWitness((F(0),), F(1))
        self.assertEqual(len(verify_witness(self.lattice, 0b1001, short)), 1)

    def test_tampered_certificate(self):
        result = find_inducing_function(self.lattice, 0b0110)
        certificate = result.certificate
        tampered = type(certificate)(certificate.rows, certificate.rhs, (F(0),) * len(certificate.rows), certificate.delta_column)
        self.assertTrue(verify_certificate(tampered))


class TestSymmetrization(unittest.TestCase):

    def setUp(self):
        self.universe = diamond_universe()

    def test_sum_and_mean(self):
        values = (F(0), F(1), F(2), F(3))
        self.assertEqual(symmetrize_sum(self.universe, values), (F(3),) * 4)
        self.assertEqual(symmetrize_mean(self.universe, values), (F(3, 2),) * 4)

    def test_supermodular_input_is_rejected(self):
        with self.assertRaises(InputNotSubmodular):
            symmetrize_sum(self.universe, (F(1), F(0), F(0), F(1)))

    def test_lift_to_universe(self):
        witness = InducedWitness((F(0), F(1), F(1), F(0)), F(1))
        lifted = lift_witness_to_universe(self.universe, witness)
        self.assertEqual(lifted.values, (F(0), F(2), F(2), F(0)))
        self.assertEqual(lifted.threshold, 2)
        self.assertTrue(lifted.symmetric)
        self.assertEqual(lifted.members(), witness.members())

    def test_restrict_from_double(self):
        chain = FinitePoset.chain(2)
        doubled = double(chain)
        sub = lift_subset_to_double(doubled, 0b01)
        witness = find_inducing_function(doubled.poset, sub.members, symmetric=True, inv=doubled.inv)
        self.assertIsInstance(witness, InducedWitness)
        restricted = restrict_witness_to_lattice(witness, chain.n)
        self.assertEqual(restricted.members(), 0b01)
        self.assertEqual(verify_witness(chain, 0b01, restricted), [])

    def test_scaled(self):
        witness = InducedWitness((F(0), F(1)), F(1)).scaled(3)
        self.assertEqual(witness.values, (F(0), F(3)))
        self.assertEqual(witness.threshold, 3)


if __name__ == '__main__':
    unittest.main()

import os, sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from fractions import Fraction

from src.operations.functions import (
    PAIR_CASES,
    classify_pair,
    extend_from_interval,
    extend_order_function_from_symmetric_interval,
    levelled_partition,
    sublattice_function,
    subuniverse_order_function,
)
from src.operations.order import downset_lattice, interval
from src.operations.representation import universe_from_involution_poset
from src.operations.submodularity import is_submodular_function
from src.structures.poset import FinitePoset
from tests.generators import (
    random_closed_subset,
    random_distributive_lattice,
    random_interval_function,
    random_involution_poset,
    random_lattice,
)

pytestmark = pytest.mark.budget(180)


def low_set(values, k):
    return sum(1 << z for z, v in enumerate(values) if v <= k)


def test_extensions_are_submodular_and_exceed_the_interval(rng):
    cases = set()
    cube = downset_lattice(FinitePoset.antichain(4)).lattice
    partition = levelled_partition(cube, 0b0001, 0b0111, Fraction(1))
    for a in range(cube.n):
        for b in range(a + 1, cube.n):
            if not cube.comparable(a, b):
                cases.add(classify_pair(partition, a, b))
    for _ in range(300):
        lattice = random_lattice(rng)
        x = rng.randrange(lattice.n)
        y = rng.choice([z for z in range(lattice.n) if lattice.le(x, z)])
        span = interval(lattice, x, y)
        f = random_interval_function(rng, lattice, span)
        g = extend_from_interval(lattice, x, y, f)
        assert is_submodular_function(lattice, g)
        k = max(f.values())
        for z in range(lattice.n):
            if z in f:
                assert g[z] == f[z]
            else:
                assert g[z] > k
    assert cases == set(PAIR_CASES)


def test_sublattice_functions_cut_out_the_sublattice(rng):
    for _ in range(200):
        lattice = random_distributive_lattice(rng)
        sub = random_closed_subset(rng, lattice)
        values, k = sublattice_function(lattice, sub)
        assert k == Fraction(1, 2)
        assert low_set(values, k) == sub
        assert all(v >= 0 for v in values)
        assert is_submodular_function(lattice, values)


def test_subuniverse_order_functions(rng):
    for _ in range(100):
        poset, prime = random_involution_poset(rng, rng.randint(1, 3), fixed=rng.randint(0, 1))
        universe = universe_from_involution_poset(poset, prime)
        sub = random_closed_subset(rng, universe.poset, universe.inv)
        values, k = subuniverse_order_function(universe, sub)
        assert low_set(values, k) == sub
        assert all(values[s] == values[universe.star(s)] for s in range(universe.n))
        assert is_submodular_function(universe, values)


def test_symmetric_interval_extensions(rng):
    for _ in range(100):
        poset, prime = random_involution_poset(rng, rng.randint(1, 3), fixed=rng.randint(0, 1))
        universe = universe_from_involution_poset(poset, prime)
        lattice = universe.poset
        x = rng.choice([s for s in range(universe.n) if lattice.le(s, universe.star(s))])
        span = interval(lattice, x, universe.star(x))
        half = random_interval_function(rng, lattice, span)
        f = {z: half[z] + half[universe.star(z)] for z in span}
        g = extend_order_function_from_symmetric_interval(universe, x, f)
        assert is_submodular_function(universe, g)
        k = max(f.values())
        for s in range(universe.n):
            assert g[s] == g[universe.star(s)]
            if s in f:
                assert g[s] == f[s]
            else:
                assert g[s] > k

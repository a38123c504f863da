import os, sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from src.operations.completion import cut_lattice, cuts_by_definition, dm_complete, verify_dm
from src.operations.order import is_lattice
from src.operations.separations import validate
from src.operations.submodularity import is_submodular_in
from tests.generators import random_poset, random_separation_system, small_lattices

pytestmark = pytest.mark.budget(60)


def test_cuts_match_the_definition(rng):
    for _ in range(150):
        poset = random_poset(rng, rng.randint(1, 5))
        completed = cut_lattice(poset)
        assert list(completed.cuts) == cuts_by_definition(poset)
        assert is_lattice(completed.lattice).holds


def test_completion_is_an_order_embedding(rng):
    for _ in range(150):
        poset = random_poset(rng, rng.randint(1, 6))
        completed = cut_lattice(poset)
        phi = completed.embedding
        for a in range(poset.n):
            for b in range(poset.n):
                assert completed.lattice.le(phi[a], phi[b]) == poset.le(a, b)


def test_a_lattice_is_its_own_completion():
    for lattice in small_lattices():
        completed = cut_lattice(lattice)
        assert completed.lattice.n == lattice.n
        assert sorted(completed.embedding) == list(range(lattice.n))


def test_random_systems_complete_to_universes(rng):
    for _ in range(200):
        system = random_separation_system(rng)
        completion = dm_complete(system)
        assert verify_dm(completion) == []
        assert validate(completion.universe, require_universe=True).is_universe
        phi = completion.embedding
        for s in range(system.n):
            assert completion.universe.star(phi[s]) == phi[system.star(s)]


def test_image_of_a_submodular_system_stays_submodular(rng):
    checked = 0
    for _ in range(200):
        system = random_separation_system(rng)
        if not is_submodular_in((1 << system.n) - 1, system.poset).holds:
            continue
        completion = dm_complete(system)
        image = sum(1 << c for c in set(completion.embedding))
        assert is_submodular_in(image, completion.universe.poset).holds
        checked += 1
    assert checked > 0

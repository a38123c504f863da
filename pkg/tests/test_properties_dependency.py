import os, sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import pytest

from src.operations.dependency import (
    CROSSING,
    dependency_digraph,
    find_cycle,
    inner_digraph,
    is_cycle,
    outer_digraph,
    verify_edge,
)
from src.operations.induced import InducedWitness, NotOrderInduced, find_inducing_function
from tests.generators import random_lattice, random_submodular_subset

pytestmark = pytest.mark.budget(120)


def instances(rng, count=500):
    for _ in range(count):
        lattice = random_lattice(rng)
        yield lattice, random_submodular_subset(rng, lattice)


def test_no_two_cycles(rng):
    for lattice, subset in instances(rng):
        digraph = dependency_digraph(lattice, subset)
        for a, b in digraph.edges():
            assert not digraph.graph.has_edge(b, a), (lattice.labels, subset, a, b)
        cycle = find_cycle(digraph)
        assert cycle is None or len(cycle) > 2


def test_edges_verify_and_cycles_stay_on_one_side(rng):
    for lattice, subset in instances(rng, 200):
        digraph = dependency_digraph(lattice, subset)
        assert all(verify_edge(digraph, a, b) for a, b in digraph.edges())
        for a, b in digraph.edges(CROSSING):
            assert a not in digraph and b in digraph
        inner, outer = inner_digraph(digraph), outer_digraph(digraph)
        assert inner.number_of_edges() + outer.number_of_edges() + len(digraph.edges(CROSSING)) == len(digraph.edges())
        cycle = find_cycle(digraph)
        if cycle is not None:
            assert is_cycle(digraph, cycle)
            assert len({x in digraph for x in cycle}) == 1


def test_edges_force_strict_inequalities(rng):
    witnessed = 0
    for lattice, subset in instances(rng):
        digraph = dependency_digraph(lattice, subset)
        cycle = find_cycle(digraph)
        result = find_inducing_function(lattice, subset)
        if isinstance(result, InducedWitness):
            witnessed += 1
            assert cycle is None
            for a, b in digraph.edges():
                assert result.values[a] > result.values[b]
        else:
            assert isinstance(result, NotOrderInduced)
    assert witnessed > 0

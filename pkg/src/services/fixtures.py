"""
Fixtures Service Module

Ready-made structures used by the demo command, the API and the tests.

Functions:
    - six_point_fixture: B(V) on V = {a, ..., f} with ten unoriented separations that are
      submodular in B(V) but not induced by any submodular order function
    - six_point_document: the same fixture as a document
    - diamond_universe: the 4-element Boolean lattice with a* = b
    - two_antichain_system: two incomparable separations, inverse to each other
    - chain_lattice: the chain 0 < 1 < ... < n-1

"""
from typing import Optional

from src.operations.separations import bipartition_subsystem, bipartition_universe
from src.schemas import Document
from src.services.documents import bipartition_document, system_document
from src.structures.poset import FinitePoset
from src.structures.separations import BipartitionUniverse, SeparationSystem, Subsystem, Universe

SIX_POINT_GROUND = ("a", "b", "c", "d", "e", "f")

SIX_POINT_SIDES = (
    (),
    ("b",), ("d",), ("f",),
    ("a", "b"), ("c", "d"), ("e", "f"),
    ("a", "b", "c"), ("a", "b", "f"), ("a", "e", "f"),
)

# First sides of the directed 6-cycle in the dependency digraph of the fixture
SIX_POINT_CYCLE = (
    ("a", "b", "c", "d"),
    ("a", "b"),
    ("a", "b", "e", "f"),
    ("e", "f"),
    ("c", "d", "e", "f"),
    ("c", "d"),
)

# (tail, head, witness) of the first cycle edge; the witness meets the tail in the head
SIX_POINT_EDGE = (("a", "b", "c", "d"), ("a", "b"), ("a", "b", "f"))


def six_point_fixture() -> tuple[BipartitionUniverse, Subsystem]:
    universe = bipartition_universe(SIX_POINT_GROUND)
    return universe, bipartition_subsystem(universe, SIX_POINT_SIDES)


def six_point_cycle(universe: BipartitionUniverse) -> list[int]:
    return [universe.element(side) for side in SIX_POINT_CYCLE]


def six_point_document() -> Document:
    universe, _ = six_point_fixture()
    return bipartition_document(universe, SIX_POINT_SIDES)


def diamond_universe() -> Universe:
    """``bot < a, b < top`` with ``a* = b`` and ``bot* = top``."""
    poset = FinitePoset.from_pairs(
        ["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")]
    )
    return Universe.from_system(SeparationSystem(poset, (3, 2, 1, 0)))


def diamond_document(subset: Optional[int] = None) -> Document:
    return system_document(diamond_universe(), "universe", subset=subset)


def two_antichain_system() -> SeparationSystem:
    return SeparationSystem(FinitePoset.antichain(2), (1, 0))


def chain_lattice(n: int) -> FinitePoset:
    return FinitePoset.chain(n)

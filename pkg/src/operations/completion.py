"""
Completion Operations Module

Dedekind-MacNeille completion of posets and of separation systems.

Dependencies:
    - src.structures.poset: bound masks of the source poset
    - src.structures.separations: the completed universe

Functions:
    - upper_bounds, lower_bounds: X^u and X^l inside the source
    - cut_lattice: the completion of a plain poset, with its embedding
    - cuts_by_definition: every X with X^{ul} = X, by scanning all subsets
    - dm_complete: the completion of a separation system with the involution X -> (X^u)*
    - verify_dm: audit a completion

Cuts are computed as the intersection-closure of the principal ideals together with
the whole ground set, since ``X^{ul}`` is the intersection of the principal ideals of
the members of ``X^u``.

"""
import logging
from dataclasses import dataclass
from typing import Union

from src.conf import config
from src.operations.order import is_lattice
from src.operations.submodularity import is_submodular, is_submodular_in
from src.structures.poset import FinitePoset
from src.structures.separations import SeparationSystem, Universe
from src.utils.bits import full_mask, mask_of
from src.utils.errors import InvalidStructure, ProofPreconditionUnmet, check_size

logger = logging.getLogger(__name__)


def _poset(source: Union[FinitePoset, SeparationSystem]) -> FinitePoset:
    return source.poset if isinstance(source, SeparationSystem) else source


def upper_bounds(source: Union[FinitePoset, SeparationSystem], subset: int) -> int:
    """``X^u``; the empty set is bounded by everything."""
    return _poset(source).upper_bounds(subset)


def lower_bounds(source: Union[FinitePoset, SeparationSystem], subset: int) -> int:
    return _poset(source).lower_bounds(subset)


@dataclass(frozen=True, eq=False)
class CutLattice:
    source: FinitePoset
    cuts: tuple[int, ...]
    lattice: FinitePoset
    embedding: tuple[int, ...]

    def index_of(self, cut: int) -> int:
        try:
            return self.cuts.index(cut)
        except ValueError:
            raise InvalidStructure(f"{self.source.set_label(cut)} is not a cut") from None


def cut_lattice(poset: FinitePoset) -> CutLattice:
    """
    The Dedekind-MacNeille completion of ``poset``.

    :param poset: Any finite poset (the empty poset completes to a single element).
    :type poset: FinitePoset
    :return: The cuts sorted by mask (a linear extension of inclusion), the lattice they
        form, and the index of ``{p}^l`` for every ``p``.
    :rtype: CutLattice
    :raises SizeLimitExceeded: If the number of cuts passes the configured bound.
    """
    ideals = sorted(set(poset.down_masks))
    found = {full_mask(poset.n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for cut in frontier:
            for ideal in ideals:
                meet = cut & ideal
                if meet not in found:
                    found.add(meet)
                    nxt.append(meet)
        check_size(len(found), config.MAX_LATTICE_ELEMENTS, "Dedekind-MacNeille completion")
        frontier = nxt
    cuts = tuple(sorted(found))
    leq = [[a & ~b == 0 for b in cuts] for a in cuts]
    lattice = FinitePoset(leq, [poset.set_label(c) for c in cuts])
    position = {c: i for i, c in enumerate(cuts)}
    embedding = tuple(position[poset.down_masks[p]] for p in range(poset.n))
    logger.debug(f"Completion of a {poset.n}-element poset has {len(cuts)} cuts")
    return CutLattice(poset, cuts, lattice, embedding)


def cuts_by_definition(poset: FinitePoset) -> list[int]:
    """Every subset ``X`` with ``X^{ul} = X``, in ascending mask order."""
    return [x for x in range(1 << poset.n) if poset.lower_bounds(poset.upper_bounds(x)) == x]


@dataclass(frozen=True, eq=False)
class DMCompletion:
    source: SeparationSystem
    cuts: tuple[int, ...]
    universe: Universe
    embedding: tuple[int, ...]

    def cut(self, i: int) -> int:
        return self.cuts[i]


def dm_complete(system: SeparationSystem) -> DMCompletion:
    """
    Complete a separation system into a universe.

    The involution of the completion is ``X -> (X^u)*`` and ``s`` embeds as ``{s}^l``.

    :param system: A valid separation system.
    :type system: SeparationSystem
    :return: The completion, its cuts and the embedding.
    :rtype: DMCompletion
    :raises InvalidStructure: If ``system`` violates a separation system law.
    :raises SizeLimitExceeded: If the completion grows past the configured bound.
    """
    defects = system.defects()
    if defects:
        logger.error(f"Cannot complete an invalid separation system: {defects[0]}")
        raise InvalidStructure(defects[0])
    if system.n == 0:
        raise InvalidStructure("a separation system to complete must be non-empty")
    completed = cut_lattice(system.poset)
    position = {c: i for i, c in enumerate(completed.cuts)}
    inv = []
    for cut in completed.cuts:
        image = system.star_mask(system.poset.upper_bounds(cut))
        if image not in position:
            raise ProofPreconditionUnmet(
                f"(X^u)* = {system.poset.set_label(image)} is not a cut for X = {system.poset.set_label(cut)}"
            )
        inv.append(position[image])
    universe = Universe.from_system(SeparationSystem(completed.lattice, tuple(inv)))
    logger.info(f"Completed {system.n} separations into a universe of {universe.n} cuts")
    return DMCompletion(system, completed.cuts, universe, completed.embedding)


def verify_dm(completion: DMCompletion) -> list[str]:
    """
    Re-check a completion.

    Covers: every element is a cut, the involution is ``X -> (X^u)*`` and lands on cuts,
    the universe laws, the embedding commutes with the involutions, and ``phi(t)`` is
    the join (meet) of ``phi(r)`` and ``phi(s)`` exactly when ``t`` is the supremum
    (infimum) of ``r`` and ``s`` in the source. For a submodular source the image must
    be submodular in the completion.

    :return: One line per failed check.
    :rtype: list[str]
    """
    source = completion.source
    poset = source.poset
    universe = completion.universe
    cuts = completion.cuts
    labels = poset.labels
    problems = []
    position = {c: i for i, c in enumerate(cuts)}
    if len(position) != len(cuts) or universe.n != len(cuts):
        return ["cut list and universe disagree"]
    for i, cut in enumerate(cuts):
        if poset.lower_bounds(poset.upper_bounds(cut)) != cut:
            problems.append(f"{poset.set_label(cut)} is not closed")
        image = source.star_mask(poset.upper_bounds(cut))
        if image not in position:
            problems.append(f"(X^u)* of {poset.set_label(cut)} is not a cut")
        elif universe.inv[i] != position[image]:
            problems.append(f"involution of {poset.set_label(cut)} is not (X^u)*")
    for i in range(len(cuts)):
        for j in range(len(cuts)):
            if universe.poset.le(i, j) != (cuts[i] & ~cuts[j] == 0):
                problems.append(f"order of {poset.set_label(cuts[i])} and {poset.set_label(cuts[j])} is not inclusion")
    lattice = is_lattice(universe.poset)
    if not lattice.holds:
        problems.extend(lattice.defects)
        return problems
    problems.extend(universe.defects())
    phi = completion.embedding
    for s in range(source.n):
        if cuts[phi[s]] != poset.down_masks[s]:
            problems.append(f"phi({labels[s]}) is not its principal ideal")
        if universe.inv[phi[s]] != phi[source.star(s)]:
            problems.append(f"phi does not commute with the involution at {labels[s]}")
    preimage = {c: s for s, c in enumerate(phi)}
    join, meet = poset.bound_tables
    for r in range(source.n):
        for s in range(source.n):
            for kind, table, combine in (("supremum", join, universe.join), ("infimum", meet, universe.meet)):
                t = int(table[r, s])
                image = combine(phi[r], phi[s])
                if t >= 0 and image != phi[t]:
                    problems.append(f"{kind} of {labels[r]}, {labels[s]} is not preserved")
                if image in preimage and preimage[image] != t:
                    problems.append(
                        f"phi({labels[preimage[image]]}) is the {kind} of phi({labels[r]}), phi({labels[s]}) "
                        f"but not in the source"
                    )
    if is_submodular(poset).holds:
        image = mask_of(phi)
        if not is_submodular_in(image, universe.poset).holds:
            problems.append("image of a submodular system is not submodular in the completion")
    return problems

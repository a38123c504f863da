"""
Representation Operations Module

Birkhoff representation of distributive lattices and of distributive universes.

Dependencies:
    - src.operations.order: join-irreducibles, down-set lattices, distributivity
    - src.structures.separations: universes built on down-set lattices

Functions:
    - birkhoff: the isomorphism ``a -> {x in J(L) : x <= a}``
    - universe_from_involution_poset: ``(O(P), X -> P - X')``
    - birkhoff_universe: recover the involution ``'`` on ``J(U)`` of a distributive universe
    - round_trip: rebuild a universe from its representation and map it back

"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from src.operations.order import distributivity_violation, downset_lattice, join_irreducibles
from src.structures.poset import FinitePoset
from src.structures.separations import SeparationSystem, Universe
from src.utils.bits import full_mask, members
from src.utils.errors import (
    InternalContradiction,
    InvalidInvolutionPoset,
    InvalidStructure,
    NotDistributive,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BirkhoffRep:
    """
    ``eta[a]`` is the down-set of ``jposet`` below lattice element ``a`` (a mask over the
    indices of ``jposet``); ``jindex[i]`` is the lattice element behind ``jposet`` element
    ``i``. ``prime`` is the involution on ``jposet`` when the source is a universe.
    """
    source: FinitePoset
    jposet: FinitePoset
    jindex: tuple[int, ...]
    eta: tuple[int, ...]
    prime: Optional[tuple[int, ...]] = None

    @cached_property
    def eta_inv(self) -> dict[int, int]:
        return {mask: a for a, mask in enumerate(self.eta)}

    def star(self, downset: int, universe: Universe) -> int:
        """The involution of ``universe`` carried to down-sets of ``jposet``."""
        return self.eta[universe.inv[self.eta_inv[downset]]]

    def prime_mask(self, mask: int) -> int:
        out = 0
        for x in members(mask):
            out |= 1 << self.prime[x]
        return out


@dataclass(frozen=True, eq=False)
class DownSetUniverse(Universe):
    """``(O(P), X -> P - X')``; element ``i`` is the down-set ``downsets[i]`` of ``ground``."""
    ground: FinitePoset = None
    downsets: tuple[int, ...] = ()
    prime: tuple[int, ...] = ()

    @cached_property
    def positions(self) -> dict[int, int]:
        return {mask: i for i, mask in enumerate(self.downsets)}


def birkhoff(lattice: FinitePoset) -> BirkhoffRep:
    """
    Represent a distributive lattice as the down-sets of its join-irreducibles.

    :param lattice: A distributive lattice.
    :type lattice: FinitePoset
    :return: J(L) and the verified isomorphism ``eta``.
    :rtype: BirkhoffRep
    :raises NotALattice: If ``lattice`` is not a lattice.
    :raises NotDistributive: If a distributive law fails.
    """
    bad = distributivity_violation(lattice)
    if bad is not None:
        a, b, c = (lattice.labels[i] for i in bad)
        logger.error(f"Lattice is not distributive at ({a}, {b}, {c})")
        raise NotDistributive(f"distributive law fails for {a}, {b}, {c}")
    jposet, jindex = join_irreducibles(lattice)
    eta = tuple(
        sum(1 << i for i, j in enumerate(jindex) if lattice.le(j, a)) for a in range(lattice.n)
    )
    rep = BirkhoffRep(lattice, jposet, jindex, eta)
    _check_isomorphism(rep)
    return rep


def _check_isomorphism(rep: BirkhoffRep) -> None:
    lattice, jposet, eta = rep.source, rep.jposet, rep.eta
    if len(set(eta)) != lattice.n or not all(jposet.is_downset(x) for x in eta):
        raise InternalContradiction("eta is not a bijection onto the down-sets of J(L)")
    if len(downset_lattice(jposet).downsets) != lattice.n:
        raise InternalContradiction("J(L) has a different number of down-sets than L has elements")
    join, meet = lattice.bound_tables
    for a in range(lattice.n):
        for b in range(lattice.n):
            if eta[int(join[a, b])] != eta[a] | eta[b] or eta[int(meet[a, b])] != eta[a] & eta[b]:
                raise InternalContradiction(
                    f"eta does not preserve joins and meets at {lattice.labels[a]}, {lattice.labels[b]}"
                )


def universe_from_involution_poset(poset: FinitePoset, prime: Sequence[int]) -> DownSetUniverse:
    """
    The distributive universe ``O(P)`` with ``X* = P - X'``.

    :param poset: A non-empty poset P.
    :type poset: FinitePoset
    :param prime: An order-reversing involution on P, by index.
    :type prime: Sequence[int]
    :return: The universe, with the down-set behind every element.
    :rtype: DownSetUniverse
    :raises InvalidInvolutionPoset: If P is empty or ``prime`` is not an order-reversing involution.
    """
    if poset.n == 0:
        raise InvalidInvolutionPoset("an involution poset must be non-empty")
    try:
        defects = SeparationSystem(poset, tuple(prime)).defects()
    except InvalidStructure as e:
        raise InvalidInvolutionPoset(str(e)) from None
    if defects:
        logger.error(f"Invalid involution poset: {defects[0]}")
        raise InvalidInvolutionPoset(defects[0])
    prime = tuple(int(p) for p in prime)
    downs = downset_lattice(poset)
    full = full_mask(poset.n)
    inv = []
    for mask in downs.downsets:
        image = 0
        for x in members(mask):
            image |= 1 << prime[x]
        inv.append(downs.index_of(full & ~image))
    base = Universe.from_system(SeparationSystem(downs.lattice, tuple(inv)))
    return DownSetUniverse(
        base.poset, base.inv, base.join_table, base.meet_table, poset, downs.downsets, prime
    )


def birkhoff_universe(universe: Universe) -> BirkhoffRep:
    """
    Birkhoff representation of a distributive universe, with the involution ``'`` on
    ``P = J(U)`` that turns ``eta`` into an isomorphism of universes.

    ``x'`` is the unique element of ``(down(x) - x)* - down(x)*``, where ``*`` is the
    involution of the universe carried to down-sets of P. The construction checks that
    ``'`` is an order-reversing involution, that ``X* = P - X'`` and
    ``|X*| = |P| - |X|`` for every down-set ``X``, and that ``down(x)* = P - up(x')``.

    :raises NotDistributive: If the lattice of ``universe`` is not distributive.
    :raises InvalidStructure: If ``universe`` breaks a universe law.
    :raises InternalContradiction: If one of the checks above fails.
    """
    defects = universe.defects()
    if defects:
        logger.error(f"Invalid universe: {defects[0]}")
        raise InvalidStructure(defects[0])
    rep = birkhoff(universe.poset)
    jposet = rep.jposet
    full = full_mask(jposet.n)
    labels = jposet.labels
    prime = []
    for x in range(jposet.n):
        down = jposet.down_masks[x]
        candidates = rep.star(down & ~(1 << x), universe) & ~rep.star(down, universe)
        found = list(members(candidates))
        if len(found) != 1:
            logger.error(f"No unique partner for {labels[x]}: {jposet.set_label(candidates)}")
            raise InternalContradiction(f"{labels[x]} has {len(found)} candidate partners")
        prime.append(found[0])
    rep = BirkhoffRep(rep.source, jposet, rep.jindex, rep.eta, tuple(prime))
    problems = SeparationSystem(jposet, rep.prime).defects()
    if problems:
        raise InternalContradiction(problems[0])
    for x in range(jposet.n):
        if rep.star(jposet.down_masks[x], universe) != full & ~jposet.up_masks[prime[x]]:
            raise InternalContradiction(f"down({labels[x]})* differs from P - up({labels[prime[x]]})")
    for downset in rep.eta:
        image = rep.star(downset, universe)
        if image != full & ~rep.prime_mask(downset):
            raise InternalContradiction(f"{jposet.set_label(downset)}* is not P - X'")
        if bin(image).count("1") != jposet.n - bin(downset).count("1"):
            raise InternalContradiction(f"|X*| != |P| - |X| for X = {jposet.set_label(downset)}")
    logger.debug(f"Birkhoff representation: |U| = {universe.n}, |J(U)| = {jposet.n}")
    return rep


def round_trip(rep: BirkhoffRep) -> tuple[DownSetUniverse, tuple[int, ...]]:
    """
    Rebuild ``(O(J(U)), X -> P - X')`` and map each element ``a`` of the source to the
    element holding ``eta(a)``.
    """
    if rep.prime is None:
        raise InvalidStructure("the representation carries no involution")
    rebuilt = universe_from_involution_poset(rep.jposet, rep.prime)
    return rebuilt, tuple(rebuilt.positions[mask] for mask in rep.eta)

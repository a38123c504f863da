"""
Separation Operations Module

Validation and canonical constructions of separation systems and universes.

Dependencies:
    - numpy: order, join and meet tables of the constructed universes
    - src.structures.separations: SeparationSystem, Universe, BipartitionUniverse, Subsystem

Functions:
    - validate: report every violated law of a separation system or universe
    - bipartition_universe: the universe B(V) of oriented bipartitions
    - set_separation_universe: all set separations (A, B) with A | B = V
    - corners: the four corners of two separations
    - double: the universe L + L^op built from a lattice
    - lift_subset_to_double: the subsystem P + P' of a doubled lattice
    - subsystem_from_labels: resolve a label list to an involution-closed subsystem

"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from src.conf import config
from src.operations.order import is_lattice, require_lattice
from src.structures.poset import FinitePoset
from src.structures.separations import (
    BipartitionUniverse,
    SeparationSystem,
    SetSeparationUniverse,
    Subsystem,
    Universe,
)
from src.utils.bits import full_mask, mask_of
from src.utils.errors import InvalidStructure, check_size

logger = logging.getLogger(__name__)


@dataclass
class ValidationReport:
    defects: list[str] = field(default_factory=list)
    is_universe: bool = False

    @property
    def valid(self) -> bool:
        return not self.defects


def validate(system: SeparationSystem, require_universe: bool = False) -> ValidationReport:
    """
    Check a separation system (and, when its order is a lattice, the universe laws).

    :param system: The structure to audit.
    :type system: SeparationSystem
    :param require_universe: Treat a missing lattice property as a defect.
    :type require_universe: bool
    :return: Every violated law; ``is_universe`` tells whether the structure is a
        valid universe of separations.
    :rtype: ValidationReport
    """
    defects = system.defects()
    if system.poset.defects():
        return ValidationReport(defects)
    lattice = is_lattice(system.poset)
    if not lattice.holds:
        if require_universe:
            defects.extend(lattice.defects)
        return ValidationReport(defects)
    if defects:
        return ValidationReport(defects)
    universe = Universe.from_system(system)
    defects = universe.defects()
    return ValidationReport(defects, is_universe=not defects)


def bipartition_universe(ground: Sequence[str]) -> BipartitionUniverse:
    """
    Build B(V): element ``A`` is the oriented bipartition ``(A, V - A)``.

    :param ground: The ground set V, in the order that fixes the bit positions.
    :type ground: Sequence[str]
    :return: The universe of all ``2^|V|`` oriented bipartitions.
    :rtype: BipartitionUniverse
    :raises InvalidStructure: If V is empty or has repeated elements.
    :raises SizeLimitExceeded: If |V| passes the configured bound.
    """
    if not ground:
        raise InvalidStructure("the ground set of a bipartition universe must be non-empty")
    check_size(len(ground), config.MAX_GROUND_SET, "bipartition universe ground set")
    universe = BipartitionUniverse.build(ground)
    logger.debug(f"Built B(V) with |V| = {len(ground)}")
    return universe


def set_separation_universe(ground: Sequence[str]) -> SetSeparationUniverse:
    """
    All set separations ``(A, B)`` of V with ``A | B = V``.

    ``(A, B) <= (C, D)`` iff ``A <= C`` and ``B >= D``; join is ``(A | C, B & D)``,
    meet is ``(A & C, B | D)`` and the involution swaps the sides.

    :raises SizeLimitExceeded: If ``3^|V|`` passes the lattice bound.
    """
    ground = tuple(str(v) for v in ground)
    if len(set(ground)) != len(ground):
        raise InvalidStructure("ground set elements must be distinct")
    n = len(ground)
    check_size(n, config.MAX_GROUND_SET, "set separation universe ground set")
    check_size(3 ** n, config.MAX_LATTICE_ELEMENTS, "set separation universe")
    full = full_mask(n)
    sides = []
    for a in range(1 << n):
        rest = full & ~a
        # B = rest | t for every t <= a
        t = a
        while True:
            sides.append((a, rest | t))
            if t == 0:
                break
            t = (t - 1) & a
    sides.sort()
    a_arr = np.array([a for a, _ in sides], dtype=np.int64)
    b_arr = np.array([b for _, b in sides], dtype=np.int64)
    leq = ((a_arr[:, None] & ~a_arr[None, :]) == 0) & ((b_arr[None, :] & ~b_arr[:, None]) == 0)
    lookup = np.full(1 << (2 * n), -1, dtype=np.int64)
    lookup[(a_arr << n) | b_arr] = np.arange(len(sides))
    join = lookup[((a_arr[:, None] | a_arr[None, :]) << n) | (b_arr[:, None] & b_arr[None, :])]
    meet = lookup[((a_arr[:, None] & a_arr[None, :]) << n) | (b_arr[:, None] | b_arr[None, :])]
    join.setflags(write=False)
    meet.setflags(write=False)
    labels = [_side_label(ground, a) + "|" + _side_label(ground, b) for a, b in sides]
    inv = tuple(int(lookup[(b << n) | a]) for a, b in sides)
    logger.debug(f"Built the set separation universe on {n} elements: {len(sides)} separations")
    return SetSeparationUniverse(FinitePoset(leq, labels), inv, join, meet, ground, tuple(sides))


def _side_label(ground: Sequence[str], mask: int) -> str:
    return ",".join(v for i, v in enumerate(ground) if mask >> i & 1)


def corners(universe: Universe, r: int, s: int) -> tuple[int, int, int, int]:
    """The corners ``(r v s, r* v s, r v s*, r* v s*)``."""
    rs, ss = universe.star(r), universe.star(s)
    return universe.join(r, s), universe.join(rs, s), universe.join(r, ss), universe.join(rs, ss)


def double(lattice: FinitePoset) -> Universe:
    """
    The universe ``L + L^op``: every element of ``L`` lies below every element of the
    reversed copy, and the involution swaps an element with its copy.

    Element ``i`` of ``L`` keeps index ``i``; its copy gets index ``n + i`` and the
    label ``i'``.

    :param lattice: A lattice.
    :type lattice: FinitePoset
    :return: The doubled universe.
    :rtype: Universe
    :raises NotALattice: If ``lattice`` is not a lattice.
    """
    require_lattice(lattice)
    n = lattice.n
    leq = np.zeros((2 * n, 2 * n), dtype=bool)
    leq[:n, :n] = lattice.leq
    leq[:n, n:] = True
    leq[n:, n:] = lattice.leq.T
    labels = list(lattice.labels) + [f"{label}'" for label in lattice.labels]
    inv = tuple(range(n, 2 * n)) + tuple(range(n))
    return Universe.from_system(SeparationSystem(FinitePoset(leq, labels), inv))


def lift_subset_to_double(doubled: Universe, subset: int) -> Subsystem:
    """The involution-closed subsystem ``P + P'`` of ``double(L)`` for ``P`` given as a mask over ``L``."""
    n = doubled.n // 2
    if subset >> n:
        raise InvalidStructure("subset mentions elements outside the doubled lattice")
    return Subsystem(doubled, subset | subset << n)


def subsystem_from_labels(system: SeparationSystem, labels: Iterable[str], close: bool = False) -> Subsystem:
    """
    Resolve labels to a subsystem.

    :param close: Add the inverse of every listed element instead of rejecting a list
        that is not closed under the involution.
    :raises InvalidStructure: If a label is unknown, or the set is not involution-closed
        and ``close`` is false.
    """
    mask = mask_of(system.poset.index(label) for label in labels)
    if close:
        mask |= system.star_mask(mask)
    sub = Subsystem(system, mask)
    defects = sub.defects()
    if defects:
        raise InvalidStructure(defects[0])
    return sub


def bipartition_subsystem(universe: BipartitionUniverse, unoriented: Iterable[Sequence[str]]) -> Subsystem:
    """Subsystem of B(V) holding both orientations of each listed side."""
    mask = 0
    for side in unoriented:
        a = universe.element(side)
        mask |= 1 << a | 1 << universe.star(a)
    return Subsystem(universe, mask)


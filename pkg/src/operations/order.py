"""
Order Operations Module

Order queries on finite posets and lattices.

Dependencies:
    - numpy: vectorised scans over join/meet tables
    - src.structures.poset: FinitePoset, DownSetLattice

Functions:
    - is_lattice: decide the lattice property and return join/meet tables
    - supremum, infimum, bound_detail: pairwise least upper / greatest lower bounds
    - join_irreducibles: the ordered set J(L)
    - downset_lattice: the distributive lattice O(P)
    - is_distributive: exhaustive check of both distributive laws

"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.conf import config
from src.structures.poset import DownSetLattice, FinitePoset
from src.utils.bits import members
from src.utils.errors import NotALattice, check_size

logger = logging.getLogger(__name__)


@dataclass
class LatticeCheck:
    holds: bool
    join: Optional[np.ndarray] = None
    meet: Optional[np.ndarray] = None
    defects: list[str] = field(default_factory=list)


def bound_detail(p: FinitePoset, a: int, b: int, upper: bool = True) -> tuple[Optional[int], str]:
    """
    Supremum (or infimum, with ``upper=False``) of ``a`` and ``b`` together with a reason
    when it is absent.

    :return: ``(element, "")`` or ``(None, reason)`` where the reason tells "no common
        bound" apart from "several minimal bounds".
    :rtype: tuple[Optional[int], str]
    """
    table = p.bound_tables[0] if upper else p.bound_tables[1]
    found = int(table[a, b])
    if found >= 0:
        return found, ""
    rel = p.up_masks if upper else p.down_masks
    common = rel[a] & rel[b]
    word = "upper" if upper else "lower"
    if not common:
        return None, f"{p.labels[a]} and {p.labels[b]} have no common {word} bound"
    extremal = p.minimal(common) if upper else p.maximal(common)
    names = ", ".join(p.labels[x] for x in extremal)
    best = "minimal" if upper else "maximal"
    return None, f"{p.labels[a]} and {p.labels[b]} have several {best} {word} bounds: {names}"


def supremum(p: FinitePoset, a: int, b: int) -> Optional[int]:
    found = int(p.bound_tables[0][a, b])
    return found if found >= 0 else None


def infimum(p: FinitePoset, a: int, b: int) -> Optional[int]:
    found = int(p.bound_tables[1][a, b])
    return found if found >= 0 else None


def is_lattice(p: FinitePoset) -> LatticeCheck:
    """
    Decide whether every pair of elements has a supremum and an infimum.

    :param p: The poset to check.
    :type p: FinitePoset
    :return: The verdict, the join and meet tables when it holds, and otherwise one
        defect line per offending pair.
    :rtype: LatticeCheck
    """
    if p.n == 0:
        return LatticeCheck(False, defects=["a lattice must be non-empty"])
    join, meet = p.bound_tables
    defects = []
    for a, b in np.argwhere(join < 0):
        if a < b:
            defects.append(bound_detail(p, int(a), int(b), upper=True)[1])
    for a, b in np.argwhere(meet < 0):
        if a < b:
            defects.append(bound_detail(p, int(a), int(b), upper=False)[1])
    if defects:
        return LatticeCheck(False, defects=defects)
    return LatticeCheck(True, join, meet)


def require_lattice(p: FinitePoset) -> tuple[np.ndarray, np.ndarray]:
    check = is_lattice(p)
    if not check.holds:
        logger.error(f"Expected a lattice: {check.defects[0]}")
        raise NotALattice(check.defects[0])
    return check.join, check.meet


def join_irreducibles(lattice: FinitePoset) -> tuple[FinitePoset, tuple[int, ...]]:
    """
    The join-irreducible elements J(L): non-bottom elements with exactly one lower cover.

    :param lattice: A lattice.
    :type lattice: FinitePoset
    :return: J(L) as a poset with the inherited order, and the lattice index of each
        of its elements.
    :rtype: tuple[FinitePoset, tuple[int, ...]]
    :raises NotALattice: If ``lattice`` is not a lattice.
    """
    require_lattice(lattice)
    irreducible = tuple(x for x in range(lattice.n) if len(lattice.lower_covers(x)) == 1)
    return lattice.restrict(irreducible), irreducible


def downset_lattice(p: FinitePoset) -> DownSetLattice:
    """
    The lattice O(P) of down-closed subsets of ``p`` ordered by inclusion.

    Elements are sorted by their bitmask, so for an antichain the element index equals
    the subset mask.

    :raises SizeLimitExceeded: If the number of down-sets passes the configured bound.
    """
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for d in frontier:
            for x in range(p.n):
                if d >> x & 1 or p.down_masks[x] & ~d != 1 << x:
                    continue
                e = d | 1 << x
                if e not in found:
                    found.add(e)
                    nxt.append(e)
        check_size(len(found), config.MAX_LATTICE_ELEMENTS, "down-set lattice")
        frontier = nxt
    downsets = tuple(sorted(found))
    leq = np.array([[a & ~b == 0 for b in downsets] for a in downsets], dtype=bool)
    lattice = FinitePoset(leq, [p.set_label(d) for d in downsets])
    logger.debug(f"O(P) of a {p.n}-element poset has {len(downsets)} elements")
    return DownSetLattice(p, downsets, lattice)


def distributivity_violation(lattice: FinitePoset) -> Optional[tuple[int, int, int]]:
    """First triple ``(a, b, c)`` breaking a distributive law, or ``None``."""
    join, meet = require_lattice(lattice)
    for a in range(lattice.n):
        lhs = join[a][meet]
        ja = join[a]
        rhs = meet[ja[:, None], ja[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return a, int(b), int(c)
        lhs = meet[a][join]
        ma = meet[a]
        rhs = join[ma[:, None], ma[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return a, int(b), int(c)
    return None


def is_distributive(lattice: FinitePoset) -> bool:
    """
    Check ``a v (b ^ c) = (a v b) ^ (a v c)`` and its dual for all triples.

    :raises NotALattice: If ``lattice`` is not a lattice.
    """
    return distributivity_violation(lattice) is None


def interval(lattice: FinitePoset, x: int, y: int) -> list[int]:
    """Elements ``z`` with ``x <= z <= y`` in ascending index order."""
    return list(members(lattice.up_masks[x] & lattice.down_masks[y]))

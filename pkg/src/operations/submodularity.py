"""
Submodularity Predicates Module

Structural submodularity of subsets, corner-closure of subsystems and
submodularity of valuations.

Dependencies:
    - numpy: vectorised pair scans over join/meet tables (object arrays for Fractions)

Functions:
    - is_submodular_in: every pair of P has its supremum or infimum (in the host) inside P
    - is_submodular: a poset that is submodular in itself
    - is_corner_closed: a subsystem containing every corner of its members that lies in S
    - function_violations / is_submodular_function: f(a v b) + f(a ^ b) <= f(a) + f(b)

"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from src.structures.poset import FinitePoset
from src.structures.separations import Subsystem, Universe
from src.utils.bits import full_mask, members

logger = logging.getLogger(__name__)


@dataclass
class SubmodularityReport:
    holds: bool
    violations: list[tuple[int, int]] = field(default_factory=list)


def is_submodular_in(subset: int, host: FinitePoset) -> SubmodularityReport:
    """
    Check that for all ``a, b`` in ``subset`` the supremum of ``a`` and ``b`` in ``host``
    exists and lies in ``subset``, or the infimum does.

    Suprema and infima are taken in the host and must land in the subset.

    :param subset: Mask of P over the host elements.
    :type subset: int
    :param host: The ambient poset.
    :type host: FinitePoset
    :return: The verdict and every violating pair ``(a, b)`` with ``a < b``.
    :rtype: SubmodularityReport
    """
    join, meet = host.bound_tables
    inside = np.zeros(host.n + 1, dtype=bool)
    for x in members(subset):
        inside[x] = True
    # index -1 (absent bound) maps to the trailing False slot
    idx = np.flatnonzero(inside[:-1])
    sub_join = join[np.ix_(idx, idx)]
    sub_meet = meet[np.ix_(idx, idx)]
    ok = inside[sub_join] | inside[sub_meet]
    violations = [(int(idx[i]), int(idx[j])) for i, j in np.argwhere(~ok) if i < j]
    return SubmodularityReport(not violations, violations)


def is_submodular(poset: FinitePoset) -> SubmodularityReport:
    return is_submodular_in(full_mask(poset.n), poset)


def corner_closure_violations(part: Subsystem, whole: Subsystem, universe: Universe) -> list[tuple[int, int, int]]:
    """Triples ``(r, s, t)`` with ``r, s`` in ``part`` and ``t`` their join or meet in ``whole - part``."""
    found = []
    elements = part.elements()
    for i, r in enumerate(elements):
        for s in elements[i + 1:]:
            for t in (universe.join(r, s), universe.meet(r, s)):
                if t in whole and t not in part:
                    found.append((r, s, t))
    return found


def is_corner_closed(part: Subsystem, whole: Subsystem, universe: Universe) -> bool:
    """
    Whether ``part`` contains every join and meet of two of its members that lies in
    ``whole`` (all computed in ``universe``).
    """
    return not corner_closure_violations(part, whole, universe)


def function_violations(join: np.ndarray, meet: np.ndarray, values: Sequence[Fraction]) -> list[tuple[int, int]]:
    """Pairs ``(a, b)``, ``a < b``, with ``f(a v b) + f(a ^ b) > f(a) + f(b)``."""
    f = np.empty(len(values), dtype=object)
    f[:] = [Fraction(v) for v in values]
    lhs = f[join] + f[meet]
    rhs = f[:, None] + f[None, :]
    bad = np.argwhere(np.asarray(lhs > rhs, dtype=bool))
    return [(int(a), int(b)) for a, b in bad if a < b]


def is_submodular_function(universe_or_lattice, values: Sequence[Fraction]) -> bool:
    """
    :param universe_or_lattice: A :class:`Universe` or a lattice :class:`FinitePoset`.
    :param values: One value per element.
    """
    if isinstance(universe_or_lattice, Universe):
        join, meet = universe_or_lattice.join_table, universe_or_lattice.meet_table
    else:
        join, meet = universe_or_lattice.bound_tables
    return not function_violations(join, meet, values)

"""
Submodular Function Constructions Module

Extending submodular functions from intervals and building submodular functions whose
low-value set is a prescribed sublattice or subuniverse.

Dependencies:
    - fractions.Fraction: exact values; scales are powers of two times the maximum
    - src.operations.representation: Birkhoff coordinates of distributive intervals

Functions:
    - levelled_partition: the parts and levels of a lattice around an interval
    - classify_pair: which of the ten pair cases two incomparable elements fall into
    - extend_from_interval: extension of a submodular function on [x, y] to L
    - dense_sublattice_function: f(Y) = sum over p in Y of |X_p - Y| on O(P)
    - sublattice_function: f and k = 1/2 with f^-1([0, k]) equal to a sublattice
    - subuniverse_order_function: the symmetric version for subuniverses, k = 1
    - extend_order_function_from_symmetric_interval: extension from [x, x*]

"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from src.operations.induced import symmetrize_mean, symmetrize_sum
from src.operations.order import downset_lattice, interval, require_lattice
from src.operations.representation import birkhoff
from src.operations.submodularity import function_violations
from src.structures.poset import FinitePoset
from src.structures.separations import Universe
from src.utils.bits import mask_of, members
from src.utils.errors import (
    InputNotSubmodular,
    InputNotSubmodularOrNotSymmetric,
    InvalidStructure,
    MissingTopOrBottom,
    NotASublattice,
    NotASubuniverse,
    NotAnInterval,
    NotSymmetricInterval,
    ProofPreconditionUnmet,
)

logger = logging.getLogger(__name__)

INTERVAL = "interval"
BELOW = "below"
ABOVE = "above"
APART = "apart"

PAIR_CASES = (
    (APART, APART),
    (ABOVE, APART),
    (BELOW, APART),
    (INTERVAL, APART),
    (ABOVE, ABOVE),
    (BELOW, BELOW),
    (BELOW, ABOVE),
    (INTERVAL, ABOVE),
    (INTERVAL, BELOW),
    (INTERVAL, INTERVAL),
)
_RANK = {INTERVAL: 0, BELOW: 1, ABOVE: 2, APART: 3}


@dataclass(frozen=True, eq=False)
class LevelledPartition:
    """
    ``part[z]`` is ``interval`` for ``[x, y]``, ``below`` for other ``z <= y``, ``above``
    for other ``z >= x`` and ``apart`` for the rest. ``dl`` (longest chain up from the
    bottom) is defined on ``z <= y``, ``ul`` (longest chain down from the top) on ``z >= x``.
    """
    lattice: FinitePoset
    x: int
    y: int
    part: tuple[str, ...]
    dl: dict[int, int]
    ul: dict[int, int]
    level: int
    scale: Fraction


def _chain_heights(lattice: FinitePoset, upward: bool) -> list[int]:
    masks = lattice.down_masks if upward else lattice.up_masks
    order = sorted(range(lattice.n), key=lambda z: bin(masks[z]).count("1"))
    height = [0] * lattice.n
    for z in order:
        covers = lattice.lower_covers(z) if upward else lattice.upper_covers(z)
        height[z] = max((height[c] + 1 for c in covers), default=0)
    return height


def levelled_partition(lattice: FinitePoset, x: int, y: int, k: Fraction) -> LevelledPartition:
    """
    Partition ``lattice`` around ``[x, y]`` and fix the scale ``M = 2^l * max(k, 1)``.

    :raises NotAnInterval: If ``x`` is not below ``y``.
    """
    require_lattice(lattice)
    if not lattice.le(x, y):
        raise NotAnInterval(f"{lattice.labels[x]} is not below {lattice.labels[y]}")
    part = []
    for z in range(lattice.n):
        low, high = lattice.le(z, y), lattice.le(x, z)
        if low and high:
            part.append(INTERVAL)
        elif low:
            part.append(BELOW)
        elif high:
            part.append(ABOVE)
        else:
            part.append(APART)
    up = _chain_heights(lattice, upward=True)
    down = _chain_heights(lattice, upward=False)
    dl = {z: up[z] for z in range(lattice.n) if lattice.le(z, y)}
    ul = {z: down[z] for z in range(lattice.n) if lattice.le(x, z)}
    level = max(list(dl.values()) + list(ul.values()))
    scale = 2 ** level * max(Fraction(k), Fraction(1))
    return LevelledPartition(lattice, x, y, tuple(part), dl, ul, level, scale)


def classify_pair(partition: LevelledPartition, a: int, b: int) -> tuple[str, str]:
    """The case of an incomparable pair, as one of :data:`PAIR_CASES`."""
    pa, pb = partition.part[a], partition.part[b]
    return tuple(sorted((pa, pb), key=_RANK.get))


def extension_value(partition: LevelledPartition, z: int, values: Mapping[int, Fraction]) -> Fraction:
    part, scale = partition.part[z], partition.scale
    if part == INTERVAL:
        return Fraction(values[z])
    if part == BELOW:
        return scale * (2 - Fraction(1, 2 ** partition.dl[z]))
    if part == ABOVE:
        return scale * (2 - Fraction(1, 2 ** partition.ul[z]))
    return 4 * scale


def _interval_values(lattice: FinitePoset, x: int, y: int, values: Mapping[int, Fraction]) -> dict[int, Fraction]:
    members_ = interval(lattice, x, y)
    keys = set(values)
    if keys != set(members_):
        raise InvalidStructure(
            f"valuation must cover exactly the interval [{lattice.labels[x]}, {lattice.labels[y]}]"
        )
    out = {z: Fraction(values[z]) for z in members_}
    negative = [z for z, v in out.items() if v < 0]
    if negative:
        raise InvalidStructure(f"f({lattice.labels[negative[0]]}) is negative")
    return out


def _interval_violations(lattice: FinitePoset, members_: Sequence[int], values: Mapping[int, Fraction]) -> list:
    join, meet = lattice.bound_tables
    found = []
    for i, a in enumerate(members_):
        for b in members_[i + 1:]:
            if values[int(join[a, b])] + values[int(meet[a, b])] > values[a] + values[b]:
                found.append((a, b))
    return found


def extend_from_interval(
    lattice: FinitePoset, x: int, y: int, values: Mapping[int, Fraction]
) -> tuple[Fraction, ...]:
    """
    Extend a submodular function on ``[x, y]`` to a submodular ``g`` on ``lattice``.

    With ``k = max f`` and ``M = 2^l * max(k, 1)``, ``g`` is ``f`` on the interval,
    ``M(2 - 2^-dl)`` below it, ``M(2 - 2^-ul)`` above it and ``4M`` elsewhere.

    :param lattice: A lattice L.
    :type lattice: FinitePoset
    :param x: Lower end of the interval.
    :type x: int
    :param y: Upper end of the interval.
    :type y: int
    :param values: ``f`` on every element of ``[x, y]``.
    :type values: Mapping[int, Fraction]
    :return: ``g`` on every element of L.
    :rtype: tuple[Fraction, ...]
    :raises NotAnInterval: If ``x`` is not below ``y``.
    :raises InputNotSubmodular: If ``f`` is not submodular on the interval.
    """
    require_lattice(lattice)
    if not lattice.le(x, y):
        raise NotAnInterval(f"{lattice.labels[x]} is not below {lattice.labels[y]}")
    f = _interval_values(lattice, x, y, values)
    bad = _interval_violations(lattice, sorted(f), f)
    if bad:
        a, b = bad[0]
        logger.error(f"Interval valuation is not submodular at {lattice.labels[a]}, {lattice.labels[b]}")
        raise InputNotSubmodular(f"valuation is not submodular at {lattice.labels[a]}, {lattice.labels[b]}")
    k = max(f.values())
    partition = levelled_partition(lattice, x, y, k)
    g = tuple(extension_value(partition, z, f) for z in range(lattice.n))
    join, meet = lattice.bound_tables
    if function_violations(join, meet, g):
        raise ProofPreconditionUnmet("extension is not submodular")
    if any(partition.part[z] != INTERVAL and not g[z] > k for z in range(lattice.n)):
        raise ProofPreconditionUnmet("extension does not exceed the interval maximum outside the interval")
    logger.debug(f"Extended from {len(f)} to {lattice.n} elements with scale {partition.scale}")
    return g


def _sublattice_checks(lattice: FinitePoset, sub: int) -> None:
    if not sub:
        raise NotASublattice("a sublattice must be non-empty")
    join, meet = lattice.bound_tables
    elements = list(members(sub))
    for a in elements:
        for b in elements:
            for t in (int(join[a, b]), int(meet[a, b])):
                if not sub >> t & 1:
                    raise NotASublattice(
                        f"{lattice.labels[t]} is a join or meet of {lattice.labels[a]}, {lattice.labels[b]} "
                        f"but not a member"
                    )


def dense_sublattice_function(poset: FinitePoset, sublattice: Iterable[int]) -> tuple[Fraction, ...]:
    """
    ``f(Y) = sum_{p in Y} |X_p - Y|`` on ``O(P)``, where ``X_p`` is the least member of the
    sublattice containing ``p``.

    :param poset: The poset P.
    :type poset: FinitePoset
    :param sublattice: Down-set masks forming a sublattice of ``O(P)`` with ``{}`` and ``P``.
    :type sublattice: Iterable[int]
    :return: ``f`` indexed like ``downset_lattice(poset)``; it vanishes exactly on the sublattice.
    :rtype: tuple[Fraction, ...]
    :raises NotASublattice: If a member is not a down-set or the set is not closed.
    :raises MissingTopOrBottom: If ``{}`` or ``P`` is missing.
    """
    sub = sorted(set(sublattice))
    full = (1 << poset.n) - 1
    for mask in sub:
        if mask & ~full or not poset.is_downset(mask):
            raise NotASublattice(f"{poset.set_label(mask & full)} is not a down-set")
    present = set(sub)
    for a in sub:
        for b in sub:
            if a | b not in present or a & b not in present:
                raise NotASublattice(
                    f"{poset.set_label(a)} and {poset.set_label(b)} have a union or intersection outside"
                )
    if 0 not in present or full not in present:
        raise MissingTopOrBottom("the sublattice must contain the empty down-set and P")
    closure = []
    for p in range(poset.n):
        meet = full
        for mask in sub:
            if mask >> p & 1:
                meet &= mask
        closure.append(meet)
    downs = downset_lattice(poset)
    values = tuple(
        Fraction(sum(bin(closure[p] & ~y).count("1") for p in members(y))) for y in downs.downsets
    )
    if function_violations(*downs.lattice.bound_tables, values):
        raise ProofPreconditionUnmet("dense sublattice function is not submodular")
    zeros = {y for y, v in zip(downs.downsets, values) if v == 0}
    if zeros != present:
        raise ProofPreconditionUnmet("dense sublattice function does not vanish exactly on the sublattice")
    return values


def sublattice_function(lattice: FinitePoset, sub: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """
    A submodular ``f`` on a distributive lattice with ``f^-1([0, 1/2])`` equal to ``sub``.

    The dense function is built on the interval spanned by ``sub`` in the Birkhoff
    coordinates of that interval, then extended to the whole lattice.

    :param lattice: A distributive lattice.
    :type lattice: FinitePoset
    :param sub: Mask of a sublattice.
    :type sub: int
    :return: The values and the threshold ``1/2``.
    :rtype: tuple[tuple[Fraction, ...], Fraction]
    :raises NotDistributive: If ``lattice`` is not distributive.
    :raises NotASublattice: If ``sub`` is empty or not closed under join and meet.
    """
    birkhoff(lattice)
    _sublattice_checks(lattice, sub)
    join, meet = lattice.bound_tables
    elements = list(members(sub))
    bottom, top = elements[0], elements[0]
    for z in elements[1:]:
        bottom, top = int(meet[bottom, z]), int(join[top, z])
    span = interval(lattice, bottom, top)
    piece = lattice.restrict(span)
    rep = birkhoff(piece)
    downs = downset_lattice(rep.jposet)
    coordinates = [rep.eta[i] for i in range(len(span))]
    dense = dense_sublattice_function(
        rep.jposet, [coordinates[i] for i, z in enumerate(span) if sub >> z & 1]
    )
    f = {z: dense[downs.index_of(coordinates[i])] for i, z in enumerate(span)}
    values = extend_from_interval(lattice, bottom, top, f)
    k = Fraction(1, 2)
    low = mask_of(z for z, v in enumerate(values) if v <= k)
    if low != sub:
        raise ProofPreconditionUnmet("sublattice function does not cut out the sublattice")
    logger.info(f"Sublattice function on {lattice.n} elements, interval of {len(span)}")
    return values, k


def subuniverse_order_function(universe: Universe, sub: int) -> tuple[tuple[Fraction, ...], Fraction]:
    """
    A symmetric submodular ``f`` on a distributive universe with ``f^-1([0, 1])`` equal
    to the subuniverse ``sub``: the sum symmetrization of :func:`sublattice_function`.

    :raises NotASubuniverse: If ``sub`` is empty, not involution-closed or not a sublattice.
    """
    if universe.star_mask(sub) != sub:
        raise NotASubuniverse("a subuniverse must be closed under the involution")
    try:
        _sublattice_checks(universe.poset, sub)
    except NotASublattice as e:
        raise NotASubuniverse(str(e)) from None
    half, k = sublattice_function(universe.poset, sub)
    values = symmetrize_sum(universe, half)
    k = 2 * k
    if any(values[s] != values[universe.star(s)] for s in range(universe.n)):
        raise ProofPreconditionUnmet("order function is not symmetric")
    if function_violations(universe.join_table, universe.meet_table, values):
        raise ProofPreconditionUnmet("order function is not submodular")
    if mask_of(s for s, v in enumerate(values) if v <= k) != sub:
        raise ProofPreconditionUnmet("order function does not cut out the subuniverse")
    return values, k


def extend_order_function_from_symmetric_interval(
    universe: Universe, x: int, values: Mapping[int, Fraction]
) -> tuple[Fraction, ...]:
    """
    Extend a symmetric submodular function on ``[x, x*]`` to a symmetric submodular
    function on the universe, exceeding ``max f`` outside the interval.

    :raises NotSymmetricInterval: If ``x`` is not below ``x*``.
    :raises InputNotSubmodularOrNotSymmetric: If ``f`` is not symmetric or not submodular.
    """
    lattice = universe.poset
    top = universe.star(x)
    if not lattice.le(x, top):
        raise NotSymmetricInterval(f"{lattice.labels[x]} is not below its inverse")
    f = _interval_values(lattice, x, top, values)
    for z, v in f.items():
        if f[universe.star(z)] != v:
            raise InputNotSubmodularOrNotSymmetric(f"f({lattice.labels[z]}) differs from its inverse's value")
    if _interval_violations(lattice, sorted(f), f):
        raise InputNotSubmodularOrNotSymmetric("valuation is not submodular on the interval")
    g = symmetrize_mean(universe, extend_from_interval(lattice, x, top, f))
    k = max(f.values())
    for z in range(universe.n):
        if z in f and g[z] != f[z]:
            raise ProofPreconditionUnmet(f"extension changed the value at {lattice.labels[z]}")
        if z not in f and not g[z] > k:
            raise ProofPreconditionUnmet(f"extension is not above {k} at {lattice.labels[z]}")
    return g

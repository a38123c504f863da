"""
Separation System Models

Dependencies:
    - numpy: join/meet tables
    - src.structures.poset: the underlying order

Types:
    - SeparationSystem: a poset with an order-reversing involution ``inv``
    - Universe: a separation system whose poset is a lattice, with join/meet tables
    - BipartitionUniverse: B(V); element ``A`` (a bitmask over V) is the oriented
      bipartition ``(A, V - A)``
    - Subsystem: an involution-closed membership mask over a host system

Oriented separations are the primitive objects; unoriented separations are the
1- or 2-element orbits of the involution. Fixed points ``s* = s`` are allowed.

"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from src.structures.poset import FinitePoset
from src.utils.bits import full_mask, members
from src.utils.errors import InvalidStructure, NotALattice


@dataclass(frozen=True, eq=False)
class SeparationSystem:
    poset: FinitePoset
    inv: tuple[int, ...]

    def __post_init__(self):
        inv = tuple(int(s) for s in self.inv)
        if len(inv) != self.poset.n or any(not 0 <= s < self.poset.n for s in inv):
            raise InvalidStructure(f"involution must map each of the {self.poset.n} elements to an element")
        object.__setattr__(self, "inv", inv)

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels

    def star(self, s: int) -> int:
        return self.inv[s]

    def star_mask(self, mask: int) -> int:
        out = 0
        for s in members(mask):
            out |= 1 << self.inv[s]
        return out

    def defects(self) -> list[str]:
        """Violations of the poset laws, of ``s** = s`` and of order reversal."""
        found = self.poset.defects()
        labels = self.labels
        for s in range(self.n):
            if self.inv[self.inv[s]] != s:
                found.append(f"not an involution: {labels[s]}** = {labels[self.inv[self.inv[s]]]}")
        leq = self.poset.leq
        for r, s in np.argwhere(leq):
            if not leq[self.inv[s], self.inv[r]]:
                found.append(
                    f"not order-reversing: {labels[r]} <= {labels[s]} but "
                    f"{labels[self.inv[s]]} is not <= {labels[self.inv[r]]}"
                )
        return found

    def unoriented(self) -> list[tuple[int, ...]]:
        """Orbits of the involution, each listed by ascending index, ordered by least member."""
        seen = set()
        orbits = []
        for s in range(self.n):
            if s in seen:
                continue
            orbit = tuple(sorted({s, self.inv[s]}))
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def is_small(self, s: int) -> bool:
        return self.poset.le(s, self.inv[s])

    def is_cosmall(self, s: int) -> bool:
        return self.poset.le(self.inv[s], s)


@dataclass(frozen=True, eq=False)
class Universe(SeparationSystem):
    join_table: np.ndarray = None
    meet_table: np.ndarray = None

    @classmethod
    def from_system(cls, system: SeparationSystem) -> "Universe":
        """
        Attach join and meet tables to a separation system whose poset is a lattice.

        :raises NotALattice: If some pair lacks a supremum or an infimum.
        """
        join, meet = system.poset.bound_tables
        if system.n == 0 or (join < 0).any() or (meet < 0).any():
            raise NotALattice("the order of this separation system is not a lattice")
        return cls(system.poset, system.inv, join, meet)

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    @cached_property
    def bottom(self) -> int:
        return int(np.flatnonzero(self.poset.leq.all(axis=1))[0])

    @cached_property
    def top(self) -> int:
        return int(np.flatnonzero(self.poset.leq.all(axis=0))[0])

    def defects(self) -> list[str]:
        found = super().defects()
        labels = self.labels
        for r in range(self.n):
            for s in range(r, self.n):
                lhs = self.inv[self.join(r, s)]
                rhs = self.meet(self.inv[r], self.inv[s])
                if lhs != rhs:
                    found.append(
                        f"De Morgan fails for {labels[r]}, {labels[s]}: (r v s)* = {labels[lhs]} "
                        f"but r* ^ s* = {labels[rhs]}"
                    )
                lhs = self.inv[self.meet(r, s)]
                rhs = self.join(self.inv[r], self.inv[s])
                if lhs != rhs:
                    found.append(
                        f"De Morgan fails for {labels[r]}, {labels[s]}: (r ^ s)* = {labels[lhs]} "
                        f"but r* v s* = {labels[rhs]}"
                    )
        return found


def bipartition_label(ground: Sequence[str], side: int) -> str:
    other = full_mask(len(ground)) & ~side
    return ",".join(ground[i] for i in members(side)) + "|" + ",".join(ground[i] for i in members(other))


@dataclass(frozen=True, eq=False)
class BipartitionUniverse(Universe):
    ground: tuple[str, ...] = ()

    @classmethod
    def build(cls, ground: Sequence[str]) -> "BipartitionUniverse":
        ground = tuple(str(v) for v in ground)
        if len(set(ground)) != len(ground):
            raise InvalidStructure("ground set elements must be distinct")
        size = 1 << len(ground)
        sides = np.arange(size)
        leq = (sides[:, None] & ~sides[None, :]) == 0
        poset = FinitePoset(leq, [bipartition_label(ground, a) for a in range(size)])
        full = size - 1
        join = sides[:, None] | sides[None, :]
        meet = sides[:, None] & sides[None, :]
        join.setflags(write=False)
        meet.setflags(write=False)
        return cls(poset, tuple(full ^ a for a in range(size)), join, meet, ground)

    def element(self, side: Sequence[str]) -> int:
        """Index of the oriented bipartition whose first side is ``side``."""
        index = {v: i for i, v in enumerate(self.ground)}
        mask = 0
        for v in side:
            if v not in index:
                raise InvalidStructure(f"{v!r} is not in the ground set")
            mask |= 1 << index[v]
        return mask

    def separates(self, s: int, x: int, y: int) -> bool:
        """Whether the bipartition ``s`` puts ground elements ``x`` and ``y`` on different sides."""
        return bool((s >> x ^ s >> y) & 1)


@dataclass(frozen=True, eq=False)
class SetSeparationUniverse(Universe):
    """All pairs ``(A, B)`` with ``A | B == V``; ``sides[i]`` holds the two masks of element ``i``."""
    ground: tuple[str, ...] = ()
    sides: tuple[tuple[int, int], ...] = ()

    def element(self, a_side: Sequence[str], b_side: Sequence[str]) -> int:
        index = {v: i for i, v in enumerate(self.ground)}
        try:
            key = (sum(1 << index[v] for v in set(a_side)), sum(1 << index[v] for v in set(b_side)))
        except KeyError as e:
            raise InvalidStructure(f"{e.args[0]!r} is not in the ground set") from None
        try:
            return self.sides.index(key)
        except ValueError:
            raise InvalidStructure(f"sides {sorted(a_side)} and {sorted(b_side)} do not cover the ground set") from None

    def bipartitions(self) -> dict[int, int]:
        """Map ``A -> index of (A, V - A)``: the embedded copy of B(V)."""
        full = full_mask(len(self.ground))
        return {a: i for i, (a, b) in enumerate(self.sides) if a & b == 0 and a | b == full}


@dataclass(frozen=True, eq=False)
class Subsystem:
    host: SeparationSystem
    members: int

    def __iter__(self) -> Iterator[int]:
        return members(self.members)

    def __contains__(self, s: int) -> bool:
        return bool(self.members >> s & 1)

    def __len__(self) -> int:
        return bin(self.members).count("1")

    def elements(self) -> list[int]:
        return list(members(self.members))

    def is_involution_closed(self) -> bool:
        return self.host.star_mask(self.members) == self.members

    def unoriented(self) -> list[tuple[int, ...]]:
        return [orbit for orbit in self.host.unoriented() if orbit[0] in self]

    def defects(self) -> list[str]:
        found = []
        for s in self:
            if self.host.star(s) not in self:
                found.append(
                    f"subsystem not closed under involution: {self.host.labels[s]} is a member "
                    f"but {self.host.labels[self.host.star(s)]} is not"
                )
        return found

    def labels(self) -> list[str]:
        return [self.host.labels[s] for s in self]

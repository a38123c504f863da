"""
Finite Poset Model

This module defines the value types every other part of the library is built on.

Dependencies:
    - numpy: the order relation is a read-only boolean ``n x n`` array
    - src.utils.bits: subsets of the ground set are int bitmasks

Types:
    - FinitePoset: ground set ``0..n-1`` with labels and a reflexive, antisymmetric,
      transitive relation ``leq[a, b] == (a <= b)``
    - DownSet: a down-closed subset of a FinitePoset
    - DownSetLattice: the lattice of all down-sets of a poset, ordered by inclusion

Element identity is index-based; labels are presentation only.

"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from src.utils.bits import mask_of, members
from src.utils.errors import InvalidStructure


def transitive_closure(relation: np.ndarray) -> np.ndarray:
    """
    Reflexive-transitive closure of a boolean relation (vectorised Warshall).

    :param relation: Square boolean array.
    :type relation: np.ndarray
    :return: A new boolean array containing the closure.
    :rtype: np.ndarray
    """
    closure = np.array(relation, dtype=bool, copy=True)
    np.fill_diagonal(closure, True)
    for k in range(len(closure)):
        closure |= closure[:, k, None] & closure[None, k, :]
    return closure


def _bound_table(rel: np.ndarray) -> np.ndarray:
    # rel[x] is the set of bounds of x (up-set for suprema, down-set for infima).
    # The least common bound of a and b, if any, is the common bound with the
    # largest bound set, provided every other common bound lies in its bound set.
    n = len(rel)
    table = np.full((n, n), -1, dtype=np.int64)
    counts = rel.sum(axis=1)
    for a in range(n):
        common = rel[a][None, :] & rel
        score = np.where(common, counts[None, :], -1)
        cand = score.argmax(axis=1)
        ok = common.any(axis=1) & ~(common & ~rel[cand]).any(axis=1)
        table[a] = np.where(ok, cand, -1)
    return table


class FinitePoset:
    """
    Immutable finite partially ordered set.

    The constructor only checks the shape of ``leq``; use :meth:`from_pairs` to build
    a poset from arbitrary relation or cover pairs (closed and validated), and
    :meth:`defects` to audit a hand-made table.
    """

    def __init__(self, leq, labels: Optional[Sequence[str]] = None):
        leq = np.array(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise InvalidStructure(f"order table must be square, got shape {leq.shape}")
        n = leq.shape[0]
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(label) for label in labels)
        if len(labels) != n:
            raise InvalidStructure(f"{len(labels)} labels for {n} elements")
        if len(set(labels)) != n:
            raise InvalidStructure("element labels must be unique")
        leq.setflags(write=False)
        self.leq = leq
        self.labels = labels
        self.n = n

    @classmethod
    def from_pairs(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinitePoset":
        """
        Build a poset from ``(lower, upper)`` label pairs, given as covers or as any
        generating relation; the relation is transitively closed before validation.

        :raises InvalidStructure: If a label is unknown or the closure is not antisymmetric.
        """
        labels = [str(label) for label in labels]
        index = {label: i for i, label in enumerate(labels)}
        relation = np.zeros((len(labels), len(labels)), dtype=bool)
        for low, high in pairs:
            if low not in index or high not in index:
                raise InvalidStructure(f"relation mentions unknown element in ({low!r}, {high!r})")
            relation[index[low], index[high]] = True
        closure = transitive_closure(relation)
        clash = np.argwhere(closure & closure.T & ~np.eye(len(labels), dtype=bool))
        if len(clash):
            a, b = clash[0]
            raise InvalidStructure(f"relation is not antisymmetric: {labels[a]} <= {labels[b]} <= {labels[a]}")
        return cls(closure, labels)

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls(np.eye(n, dtype=bool))

    def __repr__(self):
        return f"FinitePoset(n={self.n}, labels={list(self.labels)!r})"

    def __len__(self):
        return self.n

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidStructure(f"unknown element {label!r}") from None

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq[a, b])

    def comparable(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b] or self.leq[b, a])

    def defects(self) -> list[str]:
        """List every violated partial-order law (empty list: valid)."""
        found = []
        leq = self.leq
        for a in np.flatnonzero(~np.diag(leq)):
            found.append(f"not reflexive: {self.labels[a]} is not <= itself")
        off = leq & leq.T & ~np.eye(self.n, dtype=bool)
        for a, b in np.argwhere(off):
            if a < b:
                found.append(f"not antisymmetric: {self.labels[a]} <= {self.labels[b]} <= {self.labels[a]}")
        closure = transitive_closure(leq)
        for a, b in np.argwhere(closure & ~leq):
            found.append(f"not transitive: {self.labels[a]} <= {self.labels[b]} is implied but missing")
        return found

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(np.flatnonzero(self.leq[a])) for a in range(self.n))

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(np.flatnonzero(self.leq[:, a])) for a in range(self.n))

    @cached_property
    def bound_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Pairwise supremum and infimum tables; ``-1`` where the bound does not exist."""
        join = _bound_table(self.leq)
        meet = _bound_table(self.leq.T)
        join.setflags(write=False)
        meet.setflags(write=False)
        return join, meet

    def lower_covers(self, a: int) -> list[int]:
        below = [b for b in members(self.down_masks[a]) if b != a]
        return [b for b in below if not any(self.lt(b, c) for c in below if c != b)]

    def upper_covers(self, a: int) -> list[int]:
        above = [b for b in members(self.up_masks[a]) if b != a]
        return [b for b in above if not any(self.lt(c, b) for c in above if c != b)]

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(b, a) for a in range(self.n) for b in self.lower_covers(a)]

    def upper_bounds(self, mask: int) -> int:
        """Mask of common upper bounds of the members of ``mask`` (all elements for ``0``)."""
        bounds = (1 << self.n) - 1
        for x in members(mask):
            bounds &= self.up_masks[x]
        return bounds

    def lower_bounds(self, mask: int) -> int:
        bounds = (1 << self.n) - 1
        for x in members(mask):
            bounds &= self.down_masks[x]
        return bounds

    def is_downset(self, mask: int) -> bool:
        return all(self.down_masks[x] & ~mask == 0 for x in members(mask))

    def minimal(self, mask: int) -> list[int]:
        return [x for x in members(mask) if self.down_masks[x] & mask == 1 << x]

    def maximal(self, mask: int) -> list[int]:
        return [x for x in members(mask) if self.up_masks[x] & mask == 1 << x]

    def restrict(self, indices: Sequence[int]) -> "FinitePoset":
        """Induced sub-poset on ``indices`` (kept in the given order)."""
        idx = list(indices)
        return FinitePoset(self.leq[np.ix_(idx, idx)], [self.labels[i] for i in idx])

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.leq.T, self.labels)

    def set_label(self, mask: int) -> str:
        return "{" + ",".join(self.labels[i] for i in members(mask)) + "}"


@dataclass(frozen=True, eq=False)
class DownSet:
    host: FinitePoset
    members: int

    def __post_init__(self):
        if not self.host.is_downset(self.members):
            raise InvalidStructure(f"{self.host.set_label(self.members)} is not down-closed")

    @property
    def label(self) -> str:
        return self.host.set_label(self.members)


@dataclass(frozen=True, eq=False)
class DownSetLattice:
    """The lattice O(P); element ``i`` of ``lattice`` is the down-set ``downsets[i]``."""
    host: FinitePoset
    downsets: tuple[int, ...]
    lattice: FinitePoset

    @cached_property
    def positions(self) -> dict[int, int]:
        return {mask: i for i, mask in enumerate(self.downsets)}

    def index_of(self, mask: int) -> int:
        try:
            return self.positions[mask]
        except KeyError:
            raise InvalidStructure(f"{self.host.set_label(mask)} is not a down-set") from None

    def downset(self, i: int) -> DownSet:
        return DownSet(self.host, self.downsets[i])

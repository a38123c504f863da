"""
Dependency Digraph Module

The directed graph on a lattice whose edges ``a -> b`` force ``f(a) > f(b)`` for any
submodular ``f`` inducing a subset ``P``; a directed cycle rules out such an ``f``.

Dependencies:
    - networkx: the digraph, its inner/outer subgraph views
    - src.operations.order: lattice tables

Functions:
    - dependency_digraph: build the digraph with a witness on every edge
    - inner_digraph / outer_digraph: the views D[P] and D[L - P]
    - verify_edge: re-check one edge against its defining clause
    - find_cycle: deterministic directed cycle search
    - is_cycle: check a sequence of elements is a directed cycle

Edge kinds: ``crossing`` (tail outside P, head in P), ``inner`` (both ends in P) and
``outer`` (both ends outside P). Inner and outer edges carry the least witness ``c``
in P and the clause it satisfies (``join``: ``b = a v c`` with ``a ^ c`` outside P,
``meet``: ``b = a ^ c`` with ``a v c`` outside P).

"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from src.operations.order import require_lattice
from src.structures.poset import FinitePoset
from src.utils.bits import members

logger = logging.getLogger(__name__)

CROSSING = "crossing"
INNER = "inner"
OUTER = "outer"


@dataclass(frozen=True, eq=False)
class DependencyDigraph:
    lattice: FinitePoset
    subset: int
    graph: nx.DiGraph

    def __contains__(self, x: int) -> bool:
        return bool(self.subset >> x & 1)

    def edges(self, kind: Optional[str] = None) -> list[tuple[int, int]]:
        """Edges in ascending ``(tail, head)`` order, optionally of one kind."""
        found = self.graph.edges(data="kind")
        return sorted((a, b) for a, b, k in found if kind is None or k == kind)

    def witness(self, a: int, b: int) -> Optional[int]:
        return self.graph.edges[a, b]["witness"]


def dependency_digraph(lattice: FinitePoset, subset: int) -> DependencyDigraph:
    """
    Build the dependency digraph of ``subset`` in ``lattice``.

    :param lattice: A lattice L.
    :type lattice: FinitePoset
    :param subset: Mask of P over the elements of L.
    :type subset: int
    :return: The digraph; every edge carries ``kind``, ``witness`` and ``clause``.
    :rtype: DependencyDigraph
    :raises NotALattice: If ``lattice`` is not a lattice.
    """
    join, meet = require_lattice(lattice)
    n = lattice.n
    inside = [bool(subset >> x & 1) for x in range(n)]
    graph = nx.DiGraph()
    graph.add_nodes_from((x, {"label": lattice.labels[x], "inside": inside[x]}) for x in range(n))
    for a in range(n):
        if inside[a]:
            continue
        for b in range(n):
            if inside[b]:
                graph.add_edge(a, b, kind=CROSSING, witness=None, clause=None)
    witnesses = list(members(subset))
    for a in range(n):
        kind = INNER if inside[a] else OUTER
        for c in witnesses:
            j, m = int(join[a, c]), int(meet[a, c])
            if not inside[m] and inside[j] == inside[a] and not graph.has_edge(a, j):
                graph.add_edge(a, j, kind=kind, witness=c, clause="join")
            if not inside[j] and inside[m] == inside[a] and not graph.has_edge(a, m):
                graph.add_edge(a, m, kind=kind, witness=c, clause="meet")
    logger.debug(
        f"Dependency digraph: {graph.number_of_nodes()} nodes, {graph.number_of_edges()} edges"
    )
    return DependencyDigraph(lattice, subset, graph)


def inner_digraph(digraph: DependencyDigraph) -> nx.DiGraph:
    return digraph.graph.subgraph(members(digraph.subset))


def outer_digraph(digraph: DependencyDigraph) -> nx.DiGraph:
    outside = [x for x in range(digraph.lattice.n) if x not in digraph]
    return digraph.graph.subgraph(outside)


def verify_edge(digraph: DependencyDigraph, a: int, b: int) -> bool:
    """Re-check the edge ``a -> b`` against the clause recorded on it."""
    if not digraph.graph.has_edge(a, b):
        return False
    data = digraph.graph.edges[a, b]
    if data["kind"] == CROSSING:
        return a not in digraph and b in digraph
    if (a in digraph) != (b in digraph) or (data["kind"] == INNER) != (a in digraph):
        return False
    c = data["witness"]
    if c is None or c not in digraph:
        return False
    join, meet = digraph.lattice.bound_tables
    if data["clause"] == "join":
        return int(join[a, c]) == b and int(meet[a, c]) not in digraph
    return int(meet[a, c]) == b and int(join[a, c]) not in digraph


def find_cycle(digraph: DependencyDigraph) -> Optional[list[int]]:
    """
    Find a directed cycle, or ``None``.

    Start vertices are tried in ascending order; from a start ``s`` the search only
    visits vertices ``>= s`` and follows successors in ascending order, so the result
    is the first cycle found through the least vertex that lies on any cycle.

    :return: The cycle as a vertex list starting at its least vertex (the closing edge
        back to the first vertex is implied).
    :rtype: Optional[list[int]]
    """
    graph = digraph.graph
    successors = {x: sorted(graph.successors(x)) for x in graph.nodes}
    for start in sorted(graph.nodes):
        path = [start]
        iters = [iter(successors[start])]
        seen = {start}
        while iters:
            nxt = next(iters[-1], None)
            if nxt is None:
                iters.pop()
                path.pop()
                continue
            if nxt == start:
                logger.debug(f"Found a cycle of length {len(path)} through {digraph.lattice.labels[start]}")
                return list(path)
            if nxt < start or nxt in seen:
                continue
            seen.add(nxt)
            path.append(nxt)
            iters.append(iter(successors[nxt]))
    return None


def is_cycle(digraph: DependencyDigraph, sequence: Sequence[int]) -> bool:
    """Whether ``sequence`` lists distinct vertices forming a closed directed walk."""
    if not sequence or len(set(sequence)) != len(sequence):
        return False
    closed = list(sequence) + [sequence[0]]
    return all(digraph.graph.has_edge(a, b) for a, b in zip(closed, closed[1:]))

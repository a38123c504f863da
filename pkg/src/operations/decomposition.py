"""
Decomposition Operations Module

Covers subsystems of a universe by corner-closed parts, or embeds them corner-faithfully
into a bipartition universe when no disjoint split exists.

Dependencies:
    - src.operations.representation: Birkhoff coordinates ``(O(P), X -> P - X')``
    - src.operations.submodularity: submodularity and corner closure checks

Functions:
    - decompose_bipartition: three proper corner-closed parts of any S in B(V)
    - decompose_distributive: a disjoint triple, or an embedding into B(P)
    - decompose_into_classes: the classes of ``s ^ s*``, each embedded into a bipartition universe
    - split_off: peel one unoriented separation off a submodular subsystem
    - verify_embedding: audit a corner-faithful embedding
    - largest_part: the part with the most unoriented separations

"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from src.operations.representation import BirkhoffRep, birkhoff_universe
from src.operations.submodularity import corner_closure_violations, is_submodular_in
from src.structures.separations import BipartitionUniverse, Subsystem, Universe
from src.utils.bits import full_mask, mask_of, members
from src.utils.errors import InvalidStructure, NotSubmodular, ProofPreconditionUnmet, TooSmall

logger = logging.getLogger(__name__)

BIPARTITION = "bipartition"
DISJOINT_TRIPLE = "disjoint-triple"
PULLBACK = "bipartition-pullback"
CLASSES = "classes"
SPLIT = "split-off"


@dataclass(frozen=True, eq=False)
class CornerFaithfulEmbedding:
    """``mapping[s]`` is the image in ``target`` of every member ``s`` of ``source``."""
    source: Subsystem
    target: BipartitionUniverse
    mapping: dict[int, int]

    def image(self) -> Subsystem:
        return Subsystem(self.target, mask_of(self.mapping.values()))


@dataclass(frozen=True, eq=False)
class Decomposition:
    host: Universe
    whole: Subsystem
    parts: tuple[Subsystem, ...]
    names: tuple[str, ...]
    branch: str
    embeddings: tuple[CornerFaithfulEmbedding, ...] = ()
    witnesses: tuple[int, ...] = ()

    @cached_property
    def disjoint(self) -> bool:
        seen = 0
        for part in self.parts:
            if seen & part.members:
                return False
            seen |= part.members
        return True

    @cached_property
    def covering(self) -> bool:
        union = 0
        for part in self.parts:
            union |= part.members
        return union == self.whole.members

    @cached_property
    def each_proper(self) -> bool:
        return all(part.members != self.whole.members for part in self.parts)

    @cached_property
    def each_corner_closed(self) -> bool:
        return all(not corner_closure_violations(part, self.whole, self.host) for part in self.parts)

    def problems(self) -> list[str]:
        found = []
        if not self.covering:
            found.append("parts do not cover the subsystem")
        for name, part in zip(self.names, self.parts):
            if part.members & ~self.whole.members:
                found.append(f"part {name} leaves the subsystem")
            if not part.is_involution_closed():
                found.append(f"part {name} is not closed under the involution")
            for r, s, t in corner_closure_violations(part, self.whole, self.host):
                labels = self.host.labels
                found.append(f"part {name} misses the corner {labels[t]} of {labels[r]}, {labels[s]}")
        return found


def _require_subsystem(universe: Universe, sub: Subsystem) -> None:
    if sub.host is not universe and sub.host.n != universe.n:
        raise InvalidStructure("subsystem belongs to a different universe")
    defects = sub.defects()
    if defects:
        logger.error(f"Invalid subsystem: {defects[0]}")
        raise InvalidStructure(defects[0])


def _require_three(sub: Subsystem) -> None:
    count = len(sub.unoriented())
    if count < 3:
        logger.error(f"Cannot decompose {count} unoriented separations")
        raise TooSmall(f"need at least 3 unoriented separations, got {count}")


def _require_submodular(universe: Universe, sub: Subsystem) -> None:
    report = is_submodular_in(sub.members, universe.poset)
    if not report.holds:
        a, b = report.violations[0]
        logger.error(f"Subsystem is not submodular at {universe.labels[a]}, {universe.labels[b]}")
        raise NotSubmodular(f"{universe.labels[a]} and {universe.labels[b]} have no corner in the subsystem")


def _checked(decomposition: Decomposition) -> Decomposition:
    problems = decomposition.problems()
    if problems:
        logger.error(f"Decomposition ({decomposition.branch}) failed: {problems[0]}")
        raise ProofPreconditionUnmet(problems[0])
    logger.info(
        f"Decomposed {len(decomposition.whole.unoriented())} unoriented separations into "
        f"{len(decomposition.parts)} parts ({decomposition.branch})"
    )
    return decomposition


def _crossing_pair(universe: BipartitionUniverse, orbits: list[tuple[int, ...]]) -> tuple[int, int, int, int]:
    full = full_mask(len(universe.ground))
    sides = [orbit[0] for orbit in orbits if orbit[0] not in (0, full)]
    for i, first in enumerate(sides):
        for second in sides[i + 1:]:
            for a in (first, full ^ first):
                b = full ^ a
                for c in (second, full ^ second):
                    d = full ^ c
                    if c & a and c & b and b & d:
                        return a, b, c, d
    raise ProofPreconditionUnmet("no two bipartitions with the required orientation")


def decompose_bipartition(universe: BipartitionUniverse, sub: Subsystem) -> Decomposition:
    """
    Cover ``sub`` by three proper corner-closed parts.

    Two bipartitions ``{A, B}`` and ``{C, D}`` are oriented so that ``C`` meets both
    ``A`` and ``B`` and ``B`` meets ``D``; with the least ``x`` in ``A & C``, ``y`` in
    ``B & C`` and ``z`` in ``B & D`` the parts are the members not separating ``x`` from
    ``y``, ``x`` from ``z`` and ``y`` from ``z``. Any bipartition of ``{x, y, z}`` leaves
    one of these pairs together, so the parts cover.

    :param universe: The bipartition universe B(V).
    :type universe: BipartitionUniverse
    :param sub: An involution-closed subsystem; it need not be submodular.
    :type sub: Subsystem
    :return: Three parts, with ``witnesses = (x, y, z)`` as ground indices.
    :rtype: Decomposition
    :raises TooSmall: If ``sub`` has fewer than three unoriented separations.
    :raises ProofPreconditionUnmet: If a part fails its checks.
    """
    _require_subsystem(universe, sub)
    _require_three(sub)
    a, b, c, d = _crossing_pair(universe, sub.unoriented())
    x, y, z = (next(members(m)) for m in (a & c, b & c, b & d))
    pairs = ((x, y), (x, z), (y, z))
    parts = tuple(
        Subsystem(universe, mask_of(s for s in sub if not universe.separates(s, u, v))) for u, v in pairs
    )
    ground = universe.ground
    names = tuple(f"not separating {ground[u]},{ground[v]}" for u, v in pairs)
    if a in parts[0] or a in parts[1] or c in parts[1] or c in parts[2]:
        raise ProofPreconditionUnmet("a chosen bipartition landed in a part that must exclude it")
    decomposition = Decomposition(universe, sub, parts, names, BIPARTITION, witnesses=(x, y, z))
    if not decomposition.each_proper:
        raise ProofPreconditionUnmet("a part equals the whole subsystem")
    return _checked(decomposition)


def verify_embedding(embedding: CornerFaithfulEmbedding) -> list[str]:
    """
    Re-check injectivity, order in both directions, the involution and every join and
    meet of two members that stays in the source.

    :return: One line per failed check.
    :rtype: list[str]
    """
    source, target, mapping = embedding.source, embedding.target, embedding.mapping
    host = source.host
    labels = host.labels
    elements = source.elements()
    problems = []
    if set(mapping) != set(elements):
        return ["mapping does not cover exactly the source"]
    if len(set(mapping.values())) != len(elements):
        problems.append("mapping is not injective")
    for r in elements:
        if mapping[host.star(r)] != target.star(mapping[r]):
            problems.append(f"involution not preserved at {labels[r]}")
        for s in elements:
            if host.poset.le(r, s) != target.poset.le(mapping[r], mapping[s]):
                problems.append(f"order not preserved and reflected at {labels[r]}, {labels[s]}")
            for kind, here, there in (
                ("join", host.join(r, s), target.join(mapping[r], mapping[s])),
                ("meet", host.meet(r, s), target.meet(mapping[r], mapping[s])),
            ):
                if here in source and mapping[here] != there:
                    problems.append(f"{kind} of {labels[r]}, {labels[s]} not preserved")
    return problems


def _coordinates(universe: Universe) -> BirkhoffRep:
    return birkhoff_universe(universe)


def _bipartition_embedding(
    sub: Subsystem, rep: BirkhoffRep, ground: list[tuple[int, ...]]
) -> CornerFaithfulEmbedding:
    """Embed into B(ground) where each ground element is an orbit of ``'``; X goes to the orbits it meets."""
    names = ["+".join(rep.jposet.labels[p] for p in orbit) for orbit in ground]
    target = BipartitionUniverse.build(names)
    mapping = {}
    for s in sub:
        x = rep.eta[s]
        mapping[s] = mask_of(i for i, orbit in enumerate(ground) if any(x >> p & 1 for p in orbit))
    embedding = CornerFaithfulEmbedding(sub, target, mapping)
    problems = verify_embedding(embedding)
    if problems:
        logger.error(f"Embedding into a bipartition universe failed: {problems[0]}")
        raise ProofPreconditionUnmet(problems[0])
    return embedding


def _prime_orbits(rep: BirkhoffRep, mask: int) -> list[tuple[int, ...]]:
    seen, orbits = 0, []
    for p in members(mask):
        if seen >> p & 1:
            continue
        orbit = tuple(sorted({p, rep.prime[p]}))
        seen |= mask_of(orbit)
        orbits.append(orbit)
    return orbits


def decompose_distributive(
    universe: Universe, sub: Subsystem, require_triple: bool = False
) -> Union[Decomposition, CornerFaithfulEmbedding]:
    """
    Split a submodular subsystem of a distributive universe into a disjoint triple, or
    embed it into a bipartition universe.

    In Birkhoff coordinates each ``p`` splits S into ``S_p`` (``p`` in, ``p'`` out),
    ``S_p'`` and ``S_pp'`` (both or neither). The first ``p`` for which all three are
    proper gives the triple. When S equals ``S_p`` the pair ``p, p'`` carries no
    information and is dropped before scanning again. When every ``p`` leaves S whole in
    ``S_pp'``, members are unions of ``'``-orbits and ``X -> X & active`` embeds S into
    B(active).

    :param universe: A distributive universe.
    :type universe: Universe
    :param sub: A subsystem submodular in ``universe``.
    :type sub: Subsystem
    :param require_triple: On the embedding branch, return the pulled-back triple of
        :func:`decompose_bipartition` instead of the embedding.
    :type require_triple: bool
    :return: A disjoint covering triple, or the verified embedding.
    :rtype: Union[Decomposition, CornerFaithfulEmbedding]
    :raises TooSmall: If ``sub`` has fewer than three unoriented separations.
    :raises NotSubmodular: If ``sub`` is not submodular in ``universe``.
    :raises NotDistributive: If the lattice of ``universe`` is not distributive.
    """
    _require_subsystem(universe, sub)
    _require_three(sub)
    _require_submodular(universe, sub)
    rep = _coordinates(universe)
    labels = rep.jposet.labels
    coords = {s: rep.eta[s] for s in sub}
    active = full_mask(rep.jposet.n)
    shrinking = True
    while shrinking:
        shrinking = False
        for p in members(active):
            q = rep.prime[p]
            with_p = mask_of(s for s, x in coords.items() if x >> p & 1 and not x >> q & 1)
            with_q = mask_of(s for s, x in coords.items() if x >> q & 1 and not x >> p & 1)
            both = sub.members & ~with_p & ~with_q
            if sub.members in (with_p, with_q):
                active &= ~(1 << p | 1 << q)
                logger.debug(f"Every member separates {labels[p]} from {labels[q]}; dropping the pair")
                shrinking = True
                break
            if both != sub.members:
                parts = tuple(Subsystem(universe, m) for m in (with_p, with_q, both))
                names = (f"S_{labels[p]}", f"S_{labels[q]}", f"S_{labels[p]},{labels[q]}")
                decomposition = Decomposition(universe, sub, parts, names, DISJOINT_TRIPLE, witnesses=(p, q))
                if not decomposition.disjoint:
                    raise ProofPreconditionUnmet("split by a join-irreducible is not disjoint")
                return _checked(decomposition)
    embedding = _bipartition_embedding(sub, rep, _prime_orbits(rep, active))
    logger.info(f"Subsystem embeds into a bipartition universe on {len(embedding.target.ground)} points")
    if not require_triple:
        return embedding
    image = embedding.image()
    inner = decompose_bipartition(embedding.target, image)
    back = {t: s for s, t in embedding.mapping.items()}
    parts = tuple(Subsystem(universe, mask_of(back[t] for t in part)) for part in inner.parts)
    decomposition = Decomposition(
        universe, sub, parts, inner.names, PULLBACK, embeddings=(embedding,), witnesses=inner.witnesses
    )
    return _checked(decomposition)


def decompose_into_classes(universe: Universe, sub: Subsystem) -> Decomposition:
    """
    Partition a submodular subsystem by the value of ``s ^ s*``.

    In Birkhoff coordinates ``X ^ X*`` is ``D = {p in X : p' not in X}``; the members of
    one class are ``D`` together with unions of ``'``-orbits of ``Q = P - (D | D')``, so
    each class embeds into the bipartition universe on those orbits.

    :return: The classes, ordered by their least member, with one embedding per class.
    :rtype: Decomposition
    :raises NotSubmodular: If ``sub`` is not submodular in ``universe``.
    :raises NotDistributive: If the lattice of ``universe`` is not distributive.
    """
    _require_subsystem(universe, sub)
    _require_submodular(universe, sub)
    rep = _coordinates(universe)
    jposet = rep.jposet
    full = full_mask(jposet.n)
    classes: dict[int, int] = {}
    for s in sub:
        x = rep.eta[s]
        signature = x & ~rep.prime_mask(x)
        if rep.eta[universe.meet(s, universe.star(s))] != signature:
            raise ProofPreconditionUnmet(f"s ^ s* of {universe.labels[s]} differs from its signature")
        classes[signature] = classes.get(signature, 0) | 1 << s
    parts, names, embeddings = [], [], []
    for signature, mask in classes.items():
        primed = rep.prime_mask(signature)
        if signature & primed:
            raise ProofPreconditionUnmet(f"signature {jposet.set_label(signature)} meets its image")
        rest = full & ~(signature | primed)
        for s in members(mask):
            if rep.eta[s] != signature | (rep.eta[s] & rest):
                raise ProofPreconditionUnmet(f"{universe.labels[s]} is not its signature plus orbits")
        part = Subsystem(universe, mask)
        if not is_submodular_in(mask, universe.poset).holds:
            raise ProofPreconditionUnmet(f"class {jposet.set_label(signature)} is not submodular")
        parts.append(part)
        names.append(jposet.set_label(signature))
        embeddings.append(_bipartition_embedding(part, rep, _prime_orbits(rep, rest)))
    decomposition = Decomposition(universe, sub, tuple(parts), tuple(names), CLASSES, tuple(embeddings))
    if not decomposition.disjoint:
        raise ProofPreconditionUnmet("classes overlap")
    return _checked(decomposition)


def split_off(universe: Universe, sub: Subsystem, s: int) -> Decomposition:
    """
    Two parts: ``S - {s, s*}`` and ``{s, s*, s v s*, s ^ s*}`` restricted to S. The
    second part is always corner-closed; ``each_corner_closed`` reports on the first.

    :raises InvalidStructure: If ``s`` is not a member.
    :raises NotSubmodular: If ``S - {s, s*}`` is not submodular in ``universe``.
    """
    _require_subsystem(universe, sub)
    if s not in sub:
        raise InvalidStructure(f"{universe.labels[s]} is not a member of the subsystem")
    t = universe.star(s)
    rest = Subsystem(universe, sub.members & ~(1 << s | 1 << t))
    _require_submodular(universe, rest)
    core = mask_of((s, t, universe.join(s, t), universe.meet(s, t))) & sub.members
    parts = (rest, Subsystem(universe, core))
    names = (f"without {universe.labels[s]}", f"around {universe.labels[s]}")
    return Decomposition(universe, sub, parts, names, SPLIT, witnesses=(s,))


def largest_part(decomposition: Decomposition) -> tuple[int, int]:
    """
    Index and unoriented size of the largest part. A covering by ``k`` parts has one with
    at least ``|S| / k`` unoriented separations.
    """
    sizes = [len(part.unoriented()) for part in decomposition.parts]
    best = max(range(len(sizes)), key=lambda i: (sizes[i], -i))
    if decomposition.covering and sizes[best] * len(sizes) < len(decomposition.whole.unoriented()):
        raise ProofPreconditionUnmet("largest part is below the pigeonhole bound")
    return best, sizes[best]

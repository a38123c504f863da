"""
Command Runners Module

The commands shared by the CLI and the HTTP API. Each runner takes parsed documents and
options and returns an :class:`Outcome`: the exit code (0 holds, 1 property fails), the
report model and, where the command produces one, an output document or DOT text.
Invalid input surfaces as a :class:`src.utils.errors.SepsysError`; both front ends map it
to exit code 2 or HTTP 400.

Functions:
    - run_validate, run_check, run_depgraph, run_dm_complete, run_birkhoff, run_extend,
      run_sublattice_fn, run_decompose, run_double, run_paper_demo

"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from pydantic import BaseModel

from src.operations.completion import cut_lattice, dm_complete, verify_dm
from src.operations.decomposition import (
    CornerFaithfulEmbedding,
    Decomposition,
    decompose_bipartition,
    decompose_distributive,
    decompose_into_classes,
    largest_part,
    verify_embedding,
)
from src.operations.dependency import dependency_digraph, find_cycle, is_cycle
from src.operations.functions import (
    extend_from_interval,
    extend_order_function_from_symmetric_interval,
    sublattice_function,
    subuniverse_order_function,
)
from src.operations.induced import NotOrderInduced, find_inducing_function, verify_certificate, verify_witness
from src.operations.order import is_lattice, require_lattice
from src.operations.representation import birkhoff, birkhoff_universe
from src.operations.separations import double, lift_subset_to_double, validate
from src.operations.submodularity import is_submodular, is_submodular_in
from src.schemas import (
    CheckOut,
    CompletionOut,
    DecompositionOut,
    DemoOut,
    DepgraphOut,
    Document,
    EdgeOut,
    EmbeddingOut,
    FunctionOut,
    PartOut,
    RepresentationOut,
    ValidationOut,
)
from src.services.documents import (
    format_values,
    involution_poset_document,
    load,
    poset_document,
    resolve_subset,
    resolve_valuation,
    system_document,
)
from src.services.dot import to_dot
from src.services.fixtures import six_point_cycle, six_point_fixture
from src.structures.poset import FinitePoset
from src.structures.separations import BipartitionUniverse, Subsystem
from src.utils.bits import full_mask, mask_of, members
from src.utils.errors import InvalidInvolutionPoset, InvalidStructure, NotSymmetricInterval, SepsysError

logger = logging.getLogger(__name__)

HOLDS = 0
FAILS = 1
INVALID = 2


@dataclass
class Outcome:
    code: int
    report: BaseModel
    document: Optional[Document] = None
    dot: Optional[str] = None


def _labels(poset: FinitePoset, mask: int) -> list[str]:
    return [poset.labels[i] for i in members(mask)]


def run_validate(document: Document) -> Outcome:
    """Every structural law the document's kind must satisfy."""
    loaded = load(document)
    poset = loaded.poset
    lattice = is_lattice(poset).holds if not poset.defects() else False
    is_universe = False
    if document.kind == "poset":
        defects = poset.defects()
    elif document.kind == "involution-poset":
        defects = loaded.system.defects()
        if poset.n == 0:
            defects.append("an involution poset must be non-empty")
        is_universe = not defects
    else:
        report = validate(loaded.system, require_universe=document.kind != "separation-system")
        defects, is_universe = report.defects, report.is_universe
    if not defects and loaded.system is not None:
        subset = resolve_subset(loaded)
        if subset is not None:
            host = loaded.universe() if document.kind == "involution-poset" else loaded.system
            defects = Subsystem(host, subset).defects()
    if not defects:
        resolve_valuation(loaded)
    out = ValidationOut(
        kind=document.kind,
        elements=poset.n,
        valid=not defects,
        is_lattice=lattice,
        is_universe=is_universe,
        defects=defects,
    )
    if defects:
        logger.info(f"Validation found {len(defects)} defects; first: {defects[0]}")
    return Outcome(HOLDS if not defects else FAILS, out)


def run_check(document: Document, mode: str = "in-host", symmetric: bool = False) -> Outcome:
    """
    Submodularity of the document's subset (the whole structure when none is named).

    ``local`` asks whether the subset is submodular as a poset on its own, ``in-host``
    whether it is submodular in the listed order and ``order-induced`` whether a
    submodular function (an order function with ``symmetric``) induces it.
    """
    loaded = load(document)
    lattice = loaded.lattice()
    subset = resolve_subset(loaded)
    if subset is None:
        subset = full_mask(lattice.n)
    if mode == "local":
        inner = lattice.restrict(list(members(subset)))
        report = is_submodular(inner)
        pairs = [(inner.labels[a], inner.labels[b]) for a, b in report.violations]
        message = "submodular" if report.holds else "not submodular"
        return Outcome(HOLDS if report.holds else FAILS, CheckOut(mode=mode, holds=report.holds, message=message, violations=pairs))
    if mode == "in-host":
        report = is_submodular_in(subset, lattice)
        pairs = [(lattice.labels[a], lattice.labels[b]) for a, b in report.violations]
        message = "submodular in host" if report.holds else "not submodular in host"
        return Outcome(HOLDS if report.holds else FAILS, CheckOut(mode=mode, holds=report.holds, message=message, violations=pairs))
    if mode != "order-induced":
        raise InvalidStructure(f"unknown check mode {mode!r}")
    inv = loaded.universe().inv if symmetric else None
    result = find_inducing_function(lattice, subset, symmetric=symmetric, inv=inv)
    if isinstance(result, NotOrderInduced):
        cycle = find_cycle(dependency_digraph(lattice, subset))
        out = CheckOut(
            mode=mode,
            holds=False,
            message="NOT order-induced",
            optimum=str(result.optimum),
            certificate_checked=not verify_certificate(result.certificate),
            cycle=[lattice.labels[x] for x in cycle] if cycle else None,
        )
        return Outcome(FAILS, out)
    out = CheckOut(
        mode=mode,
        holds=True,
        message="order-induced",
        witness=format_values(lattice.labels, result.values),
        threshold=str(result.threshold),
        witness_checked=not verify_witness(lattice, subset, result, inv),
    )
    return Outcome(HOLDS, out)


def run_depgraph(document: Document, want_cycle: bool = False) -> Outcome:
    """The dependency digraph as a report and as DOT; with ``want_cycle`` a missing cycle exits 1."""
    loaded = load(document)
    lattice = loaded.lattice()
    subset = resolve_subset(loaded)
    if subset is None:
        subset = full_mask(lattice.n)
    digraph = dependency_digraph(lattice, subset)
    cycle = find_cycle(digraph) if want_cycle else None
    labels = lattice.labels
    edges = []
    for a, b in digraph.edges():
        data = digraph.graph.edges[a, b]
        witness = data["witness"]
        edges.append(EdgeOut(
            tail=labels[a],
            head=labels[b],
            kind=data["kind"],
            witness=labels[witness] if witness is not None else None,
            clause=data["clause"],
        ))
    out = DepgraphOut(
        subset=_labels(lattice, subset),
        edges=edges,
        cycle=[labels[x] for x in cycle] if cycle else None,
    )
    code = FAILS if want_cycle and cycle is None else HOLDS
    return Outcome(code, out, dot=to_dot(digraph, cycle))


def run_dm_complete(document: Document) -> Outcome:
    """Complete a poset into a lattice, or a separation system into a universe."""
    loaded = load(document)
    if loaded.system is None:
        completed = cut_lattice(loaded.poset)
        embedding = {
            loaded.poset.labels[p]: completed.lattice.labels[c] for p, c in enumerate(completed.embedding)
        }
        out = CompletionOut(cuts=len(completed.cuts), embedding=embedding)
        return Outcome(HOLDS, out, poset_document(completed.lattice))
    completion = dm_complete(loaded.system)
    problems = verify_dm(completion)
    universe = completion.universe
    embedding = {loaded.poset.labels[s]: universe.labels[c] for s, c in enumerate(completion.embedding)}
    out = CompletionOut(cuts=universe.n, embedding=embedding, problems=problems)
    return Outcome(FAILS if problems else HOLDS, out, system_document(universe, "universe"))


def run_birkhoff(document: Document) -> Outcome:
    """
    J(L) of a distributive lattice, or the involution poset ``(J(U), ')`` of a
    distributive universe, with the coordinates of every element.
    """
    loaded = load(document)
    if loaded.system is None:
        rep = birkhoff(loaded.poset)
        output = poset_document(rep.jposet)
    else:
        universe = loaded.universe()
        if universe.n == 1:
            logger.error("A one-element universe has no join-irreducibles")
            raise InvalidInvolutionPoset("a one-element universe has no join-irreducibles; its involution poset would be empty")
        rep = birkhoff_universe(universe)
        output = involution_poset_document(rep.jposet, rep.prime)
    source, jposet = rep.source, rep.jposet
    out = RepresentationOut(
        join_irreducibles=list(jposet.labels),
        coordinates={source.labels[a]: jposet.set_label(rep.eta[a]) for a in range(source.n)},
        prime={jposet.labels[x]: jposet.labels[p] for x, p in enumerate(rep.prime)} if rep.prime else None,
    )
    return Outcome(HOLDS, out, output)


def _output_document(loaded, values: Sequence[Fraction]) -> Document:
    if loaded.system is None:
        return poset_document(loaded.poset, valuation=values)
    return system_document(loaded.universe(), "universe", valuation=values)


def run_extend(
    document: Document,
    x: str,
    y: str,
    valuation: Optional[dict[str, str]] = None,
    symmetric: bool = False,
) -> Outcome:
    """
    Extend a valuation on ``[x, y]`` to the whole lattice (to the whole universe, keeping
    the function symmetric, with ``symmetric``; then ``y`` must be ``x*``).
    """
    loaded = load(document)
    lattice = loaded.lattice()
    if valuation is not None:
        values = {lattice.index(label): Fraction(v) for label, v in valuation.items()}
    else:
        values = resolve_valuation(loaded) or {}
    low, high = lattice.index(x), lattice.index(y)
    if symmetric:
        universe = loaded.universe()
        if universe.star(low) != high:
            raise NotSymmetricInterval(f"{y} is not the inverse of {x}")
        g = extend_order_function_from_symmetric_interval(universe, low, values)
    else:
        g = extend_from_interval(lattice, low, high, values)
    out = FunctionOut(values=format_values(lattice.labels, g))
    return Outcome(HOLDS, out, _output_document(loaded, g))


def run_sublattice_fn(document: Document, sub: Sequence[str], subuniverse: bool = False) -> Outcome:
    """A submodular function whose values up to the threshold mark exactly ``sub``."""
    loaded = load(document)
    lattice = loaded.lattice()
    mask = mask_of(lattice.index(label) for label in sub)
    if subuniverse:
        values, k = subuniverse_order_function(loaded.universe(), mask)
    else:
        values, k = sublattice_function(lattice, mask)
    low = [lattice.labels[z] for z, v in enumerate(values) if v <= k]
    out = FunctionOut(values=format_values(lattice.labels, values), threshold=str(k), low_set=low)
    return Outcome(HOLDS, out, _output_document(loaded, values))


def embedding_out(embedding: CornerFaithfulEmbedding) -> EmbeddingOut:
    host, target = embedding.source.host, embedding.target
    return EmbeddingOut(
        ground=list(target.ground),
        mapping={host.labels[s]: target.labels[t] for s, t in sorted(embedding.mapping.items())},
        verified=not verify_embedding(embedding),
    )


def decomposition_out(result: Union[Decomposition, CornerFaithfulEmbedding]) -> DecompositionOut:
    if isinstance(result, CornerFaithfulEmbedding):
        whole = result.source
        part = PartOut(name="whole", members=whole.labels(), unoriented=len(whole.unoriented()))
        return DecompositionOut(
            branch="embedding",
            disjoint=True,
            covering=True,
            each_proper=False,
            each_corner_closed=True,
            parts=[part],
            embeddings=[embedding_out(result)],
        )
    parts = [
        PartOut(name=name, members=part.labels(), unoriented=len(part.unoriented()))
        for name, part in zip(result.names, result.parts)
    ]
    return DecompositionOut(
        branch=result.branch,
        disjoint=result.disjoint,
        covering=result.covering,
        each_proper=result.each_proper,
        each_corner_closed=result.each_corner_closed,
        parts=parts,
        embeddings=[embedding_out(e) for e in result.embeddings],
        largest_part=largest_part(result)[0],
    )


def run_decompose(document: Document, mode: str = "triple", require_triple: bool = False) -> Outcome:
    """
    ``triple``: three corner-closed parts (in a bipartition universe always; in a
    distributive universe a disjoint triple or an embedding). ``classes``: the classes of
    ``s ^ s*`` with their embeddings.
    """
    loaded = load(document)
    universe = loaded.universe()
    subset = resolve_subset(loaded)
    sub = Subsystem(universe, full_mask(universe.n) if subset is None else subset)
    if mode == "classes":
        result = decompose_into_classes(universe, sub)
    elif mode == "triple" and isinstance(universe, BipartitionUniverse):
        result = decompose_bipartition(universe, sub)
    elif mode == "triple":
        result = decompose_distributive(universe, sub, require_triple=require_triple)
    else:
        raise InvalidStructure(f"unknown decomposition mode {mode!r}")
    return Outcome(HOLDS, decomposition_out(result))


def run_double(document: Document) -> Outcome:
    """``double(L)``; a subset P of L becomes the subsystem ``P + P'``."""
    loaded = load(document)
    lattice = loaded.lattice()
    require_lattice(lattice)
    doubled = double(lattice)
    subset = resolve_subset(loaded)
    members_ = lift_subset_to_double(doubled, subset).members if subset is not None else None
    out = ValidationOut(
        kind="universe",
        elements=doubled.n,
        valid=True,
        is_lattice=True,
        is_universe=not doubled.defects(),
    )
    return Outcome(HOLDS, out, system_document(doubled, "universe", subset=members_))


def run_paper_demo() -> Outcome:
    """
    Build the six-point bipartition fixture and confirm: it is submodular in B(V), its
    dependency digraph has the known 6-cycle, no submodular order function induces it,
    and it splits into three corner-closed parts.
    """
    universe, sub = six_point_fixture()
    lattice = universe.poset
    in_host = is_submodular_in(sub.members, lattice).holds
    digraph = dependency_digraph(lattice, sub.members)
    expected = six_point_cycle(universe)
    cycle_found = is_cycle(digraph, expected) and find_cycle(digraph) is not None
    result = find_inducing_function(lattice, sub.members, symmetric=True, inv=universe.inv)
    infeasible = isinstance(result, NotOrderInduced)
    checked = infeasible and not verify_certificate(result.certificate)
    decomposition = decomposition_out(decompose_bipartition(universe, sub))
    passed = in_host and cycle_found and infeasible and checked and decomposition.covering
    out = DemoOut(
        submodular_in_host=in_host,
        cycle=[lattice.labels[x] for x in expected],
        cycle_found=cycle_found,
        lp_infeasible=infeasible,
        certificate_checked=checked,
        decomposition=decomposition,
        passed=passed,
    )
    logger.info(f"Demo {'passed' if passed else 'FAILED'}")
    return Outcome(HOLDS if passed else FAILS, out)


def describe(error: SepsysError) -> str:
    return f"{type(error).__name__}: {error}"

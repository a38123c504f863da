"""
Document Service Module

Reads and writes the single JSON document format shared by every structure kind.

Dependencies:
    - pydantic: parsing and validation of :class:`src.schemas.Document`
    - fractions.Fraction: valuations are exact rationals written as "p/q"

Functions:
    - parse_document / read_document: text or file to a Document
    - load: a Document to the structures it describes
    - resolve_subset / resolve_valuation: labels to masks and values
    - poset_document / system_document / bipartition_document / involution_poset_document:
      structures back to Documents
    - to_json / write_document: stable, byte-identical JSON output
    - read_valuation: a label -> "p/q" file

Every relation is transitively closed on load, so cover pairs and full relations give
the same structure.

"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from pydantic import ValidationError

from src.operations.representation import universe_from_involution_poset
from src.operations.separations import bipartition_universe
from src.schemas import Document, Valuation
from src.structures.poset import FinitePoset
from src.structures.separations import BipartitionUniverse, SeparationSystem, Universe
from src.utils.bits import mask_of
from src.utils.errors import DocumentError, NotALattice, SepsysError, SizeLimitExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Loaded:
    """
    ``poset`` is the order the document lists; ``system`` carries the involution
    (``None`` for a plain poset). For an involution poset ``system`` is the poset with
    ``'`` and :meth:`universe` builds ``O(P)``.
    """
    document: Document
    poset: FinitePoset
    system: Optional[SeparationSystem] = None

    @property
    def kind(self) -> str:
        return self.document.kind

    def universe(self) -> Universe:
        """
        The universe the document stands for.

        :raises NotALattice: If the listed order is not a lattice.
        :raises InvalidInvolutionPoset: If an involution poset is malformed.
        """
        if self.kind == "involution-poset":
            return universe_from_involution_poset(self.poset, self.system.inv)
        if isinstance(self.system, Universe):
            return self.system
        if self.system is None:
            raise DocumentError(f"a {self.kind} document has no involution")
        return Universe.from_system(self.system)

    def lattice(self) -> FinitePoset:
        """The order that subsets and valuations refer to."""
        if self.kind == "involution-poset":
            return self.universe().poset
        return self.poset


def parse_document(text: str) -> Document:
    try:
        return Document.model_validate_json(text)
    except ValidationError as e:
        logger.error(f"Document failed validation: {e.errors()[0]['msg']}")
        raise DocumentError(f"invalid document: {e.errors()[0]['loc']} {e.errors()[0]['msg']}") from None


def read_document(path: str) -> Document:
    """
    Read a document from ``path``.

    :raises DocumentError: If the file cannot be read or is not a valid document.
    """
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Cannot read {path}: {e}")
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    return parse_document(text)


def _involution(poset: FinitePoset, mapping: Optional[Mapping[str, str]]) -> tuple[int, ...]:
    if mapping is None:
        raise DocumentError("document needs an involution")
    missing = [label for label in poset.labels if label not in mapping]
    if missing:
        raise DocumentError(f"involution does not map {missing[0]!r}")
    return tuple(poset.index(mapping[label]) for label in poset.labels)


def load(document: Document) -> Loaded:
    """
    Build the structures a document describes, without checking the order laws beyond
    antisymmetry of the closure (use the validators for that).

    :param document: A parsed document.
    :type document: Document
    :return: The poset and, where applicable, the separation system.
    :rtype: Loaded
    :raises DocumentError: If a label is unknown or a required field is missing.
    """
    try:
        if document.kind == "bipartition-universe":
            if not document.ground:
                raise DocumentError("a bipartition universe needs a non-empty ground set")
            universe = bipartition_universe(document.ground)
            return Loaded(document, universe.poset, universe)
        poset = FinitePoset.from_pairs(document.elements, document.relation)
        if document.kind == "poset":
            return Loaded(document, poset)
        system = SeparationSystem(poset, _involution(poset, document.involution))
        if document.kind == "universe":
            try:
                system = Universe.from_system(system)
            except NotALattice:
                logger.debug("Universe document does not describe a lattice")
        return Loaded(document, poset, system)
    except (DocumentError, SizeLimitExceeded):
        raise
    except SepsysError as e:
        logger.error(f"Cannot load {document.kind} document: {e}")
        raise DocumentError(str(e)) from None


def resolve_subset(loaded: Loaded, target: Optional[FinitePoset] = None) -> Optional[int]:
    """
    Mask of the document's ``subsystem`` labels and ``bipartitions`` sides (both
    orientations of each side) over ``target``; ``None`` when the document names neither.
    """
    document = loaded.document
    if document.subsystem is None and document.bipartitions is None:
        return None
    target = target or loaded.lattice()
    mask = mask_of(target.index(label) for label in document.subsystem or ())
    if document.bipartitions:
        system = loaded.system
        if not isinstance(system, BipartitionUniverse):
            raise DocumentError("bipartitions can only be listed for a bipartition universe")
        for side in document.bipartitions:
            a = system.element(side)
            mask |= 1 << a | 1 << system.star(a)
    return mask


def resolve_valuation(loaded: Loaded, target: Optional[FinitePoset] = None) -> Optional[dict[int, Fraction]]:
    if loaded.document.valuation is None:
        return None
    target = target or loaded.lattice()
    return {target.index(label): Fraction(value) for label, value in loaded.document.valuation.items()}


def format_values(labels: Sequence[str], values: Iterable[Fraction]) -> dict[str, str]:
    return {label: str(Fraction(v)) for label, v in zip(labels, values)}


def poset_document(
    poset: FinitePoset, subset: Optional[int] = None, valuation: Optional[Sequence[Fraction]] = None
) -> Document:
    return Document(
        kind="poset",
        elements=list(poset.labels),
        relation=[(poset.labels[a], poset.labels[b]) for a, b in sorted(poset.cover_pairs())],
        subsystem=_subset_labels(poset, subset),
        valuation=format_values(poset.labels, valuation) if valuation is not None else None,
    )


def system_document(
    system: SeparationSystem,
    kind: str = "universe",
    subset: Optional[int] = None,
    valuation: Optional[Sequence[Fraction]] = None,
) -> Document:
    """A separation-system or universe document listing covers and the involution."""
    poset = system.poset
    labels = poset.labels
    return Document(
        kind=kind,
        elements=list(labels),
        relation=[(labels[a], labels[b]) for a, b in sorted(poset.cover_pairs())],
        involution={labels[s]: labels[system.star(s)] for s in range(system.n)},
        subsystem=_subset_labels(poset, subset),
        valuation=format_values(labels, valuation) if valuation is not None else None,
    )


def bipartition_document(universe: BipartitionUniverse, sides: Optional[Iterable[Sequence[str]]] = None) -> Document:
    return Document(
        kind="bipartition-universe",
        ground=list(universe.ground),
        bipartitions=[list(side) for side in sides] if sides is not None else None,
    )


def involution_poset_document(poset: FinitePoset, prime: Sequence[int]) -> Document:
    labels = poset.labels
    return Document(
        kind="involution-poset",
        elements=list(labels),
        relation=[(labels[a], labels[b]) for a, b in sorted(poset.cover_pairs())],
        involution={labels[x]: labels[prime[x]] for x in range(poset.n)},
    )


def _subset_labels(poset: FinitePoset, subset: Optional[int]) -> Optional[list[str]]:
    if subset is None:
        return None
    return [poset.labels[i] for i in range(poset.n) if subset >> i & 1]


def to_json(document) -> str:
    """Stable JSON for a Document or report model: field order, two-space indent, trailing newline."""
    return json.dumps(document.model_dump(mode="json", exclude_none=True), indent=2) + "\n"


def write_document(document: Document, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(to_json(document))
    except OSError as e:
        logger.error(f"Cannot write {path}: {e}")
        raise DocumentError(f"cannot write {path}: {e.strerror}") from None


def read_valuation(path: str) -> dict[str, str]:
    """A valuation file: one JSON object mapping labels to "p/q" strings."""
    try:
        with open(path, encoding="utf-8") as f:
            return Valuation.model_validate_json(f.read()).root
    except OSError as e:
        logger.error(f"Cannot read {path}: {e}")
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    except ValidationError as e:
        logger.error(f"Valuation in {path} failed validation: {e.errors()[0]['msg']}")
        raise DocumentError(f"invalid valuation: {e.errors()[0]['loc']} {e.errors()[0]['msg']}") from None

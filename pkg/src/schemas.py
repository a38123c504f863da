from typing import Annotated, Literal, Optional

from pydantic import BaseModel, Field, RootModel, StringConstraints, model_validator

# Exact rationals travel as "p" or "p/q"; floats are rejected
Rational = Annotated[str, StringConstraints(pattern=r"^-?\d+(/[1-9]\d*)?$")]

Kind = Literal["poset", "separation-system", "universe", "bipartition-universe", "involution-poset"]


# Documents
class Document(BaseModel):
    kind: Kind
    elements: list[str] = Field(default_factory=list)
    relation: list[tuple[str, str]] = Field(default_factory=list)
    involution: Optional[dict[str, str]] = None
    ground: Optional[list[str]] = None
    subsystem: Optional[list[str]] = None
    bipartitions: Optional[list[list[str]]] = None
    valuation: Optional[dict[str, Rational]] = None


class Valuation(RootModel[dict[str, Rational]]):
    pass


# Reports
class ValidationOut(BaseModel):
    kind: Kind
    elements: int
    valid: bool
    is_lattice: bool
    is_universe: bool
    defects: list[str] = Field(default_factory=list)


class CheckOut(BaseModel):
    mode: Literal["local", "in-host", "order-induced"]
    holds: bool
    message: str
    violations: list[tuple[str, str]] = Field(default_factory=list)
    witness: Optional[dict[str, Rational]] = None
    threshold: Optional[Rational] = None
    optimum: Optional[Rational] = None
    certificate_checked: Optional[bool] = None
    witness_checked: Optional[bool] = None
    cycle: Optional[list[str]] = None


class EdgeOut(BaseModel):
    tail: str
    head: str
    kind: Literal["crossing", "inner", "outer"]
    witness: Optional[str] = None
    clause: Optional[Literal["join", "meet"]] = None


class DepgraphOut(BaseModel):
    subset: list[str]
    edges: list[EdgeOut]
    cycle: Optional[list[str]] = None


class EmbeddingOut(BaseModel):
    ground: list[str]
    mapping: dict[str, str]
    verified: bool


class PartOut(BaseModel):
    name: str
    members: list[str]
    unoriented: int


class DecompositionOut(BaseModel):
    branch: str
    disjoint: bool
    covering: bool
    each_proper: bool
    each_corner_closed: bool
    parts: list[PartOut]
    embeddings: list[EmbeddingOut] = Field(default_factory=list)
    largest_part: Optional[int] = None


class RepresentationOut(BaseModel):
    join_irreducibles: list[str]
    coordinates: dict[str, str]
    prime: Optional[dict[str, str]] = None


class FunctionOut(BaseModel):
    values: dict[str, Rational]
    threshold: Optional[Rational] = None
    low_set: list[str] = Field(default_factory=list)


class CompletionOut(BaseModel):
    cuts: int
    embedding: dict[str, str]
    problems: list[str] = Field(default_factory=list)


class DemoOut(BaseModel):
    submodular_in_host: bool
    cycle: list[str]
    cycle_found: bool
    lp_infeasible: bool
    certificate_checked: bool
    decomposition: DecompositionOut
    passed: bool


class CommandOut(BaseModel):
    exit_code: int
    report: dict
    document: Optional[Document] = None
    dot: Optional[str] = None


# Requests
class CheckRequest(BaseModel):
    document: Document
    mode: Literal["local", "in-host", "order-induced"] = "in-host"
    symmetric: bool = False

    @model_validator(mode="after")
    def symmetric_needs_order_induced(self):
        if self.symmetric and self.mode != "order-induced":
            raise ValueError("symmetric only applies to the order-induced mode")
        return self


class DepgraphRequest(BaseModel):
    document: Document
    find_cycle: bool = False


class DecomposeRequest(BaseModel):
    document: Document
    mode: Literal["triple", "classes"] = "triple"
    require_triple: bool = False

"""
Pydantic schemas and enumerations shared by the services, the CLI and the HTTP API.

Graph-level types (MolecularGraph and the two censuses) are frozen dataclasses in
molex.services.graph_core; everything that is reported, serialized or passed between
processes lives here.
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ============================================================================
# Enumerations
# ============================================================================

class Variant(str, Enum):
    """Index family a coefficient table and a bound belong to."""
    CHI = "chi"
    PLATT = "platt"
    OGA = "oga"


class IndexKind(str, Enum):
    """Descriptors that can be evaluated on a molecular graph."""
    GENERAL_SUM_CONNECTIVITY = "chi"
    GENERAL_PLATT = "platt"
    OGA = "oga"
    FIRST_ZAGREB = "m1"
    PLATT = "pl"
    HARMONIC = "harmonic"
    SUM_CONNECTIVITY = "sum-connectivity"
    RANDIC = "randic"
    HYPER_ZAGREB = "hyper-zagreb"
    REFORMULATED_ZAGREB = "em1"


PARAMETRIZED_KINDS = frozenset({
    IndexKind.GENERAL_SUM_CONNECTIVITY,
    IndexKind.GENERAL_PLATT,
    IndexKind.OGA,
})


class Regime(str, Enum):
    """Parameter range a bound case falls in."""
    NEG = "neg"        # -1 <= alpha < 0
    MID = "mid"        # 0 < alpha < 1
    UNIT = "unit"      # alpha == 1
    HIGH = "high"      # 1 < alpha <= 2
    OGA_K = "oga"      # 0 < k <= 1


class Direction(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


class BoundForm(str, Enum):
    """Leading term only, or leading term plus the residue correction."""
    LEADING = "leading"
    REFINED = "refined"


# ============================================================================
# Index specification
# ============================================================================

class IndexSpec(BaseModel):
    """
    A descriptor together with its parameter.

    The general kinds need a parameter (alpha for chi and Platt, k for OGA); the named
    kinds take none.
    """
    model_config = ConfigDict(frozen=True)

    kind: IndexKind = Field(..., description="Descriptor to evaluate")
    parameter: Optional[float] = Field(None, description="alpha for chi/platt, k for oga, absent otherwise")

    @model_validator(mode="after")
    def parameter_matches_kind(self) -> "IndexSpec":
        """Validate parameter presence and range against the kind."""
        if self.kind in PARAMETRIZED_KINDS:
            if self.parameter is None:
                raise ValueError(f"Index '{self.kind.value}' requires a parameter")
            if self.kind == IndexKind.OGA and not self.parameter > 0:
                raise ValueError("OGA parameter k must be positive")
            if self.kind != IndexKind.OGA and self.parameter == 0:
                raise ValueError("alpha must be non-zero")
        elif self.parameter is not None:
            raise ValueError(f"Index '{self.kind.value}' takes no parameter")
        return self

    @property
    def label(self) -> str:
        """Short name used in CSV output."""
        return self.kind.value


# ============================================================================
# Reduction and lemma models
# ============================================================================

class CoefficientTable(BaseModel):
    """The seven reduction coefficients of one variant at one parameter value."""
    model_config = ConfigDict(frozen=True)

    variant: Variant = Field(..., description="Coefficient family")
    parameter: float = Field(..., description="alpha or k")
    values: Dict[str, float] = Field(..., description="Coefficient per degree pair, keyed 'i,j'")


class LemmaViolation(BaseModel):
    """A clause that failed at a parameter value (or on a graph)."""
    clause: str = Field(..., description="Identifier of the failing inequality")
    parameter: float = Field(..., description="Parameter value where it failed")
    lhs: float = Field(..., description="Left-hand side of the failing comparison")
    rhs: float = Field(..., description="Right-hand side of the failing comparison")
    graph6: Optional[str] = Field(None, description="Witness graph for graph-level clauses")


class LemmaSweepSummary(BaseModel):
    """Outcome of the graph-level lemma checks over an enumeration."""
    n_range: Tuple[int, int] = Field(..., description="Inclusive range of vertex counts")
    connected_only: bool = Field(..., description="Whether disconnected graphs were excluded")
    graph_count: int = Field(0, description="Graphs visited")
    checked: Dict[str, int] = Field(default_factory=dict, description="Checks performed per clause")
    counterexamples: List[LemmaViolation] = Field(default_factory=list, description="Failures found")


# ============================================================================
# Bound models
# ============================================================================

class BoundCase(BaseModel):
    """
    One bound to check: variant, parameter, residue class and form.

    Regime and direction are derived from the variant and parameter by
    molex.services.bounds.make_case; building the model directly is allowed but the
    validator rejects combinations that contradict the case tables.
    """
    model_config = ConfigDict(frozen=True)

    variant: Variant = Field(..., description="Index family")
    parameter: float = Field(..., description="alpha or k")
    residue: int = Field(..., ge=0, le=2, description="(m + n) mod 3")
    regime: Regime = Field(..., description="Parameter regime")
    direction: Direction = Field(..., description="Lower or upper bound")
    form: BoundForm = Field(BoundForm.REFINED, description="Leading term only or refined by residue")

    @model_validator(mode="after")
    def direction_matches_regime(self) -> "BoundCase":
        lower = self.regime in (Regime.NEG, Regime.OGA_K)
        if lower != (self.direction == Direction.LOWER):
            raise ValueError(f"Direction {self.direction.value} contradicts regime {self.regime.value}")
        if (self.variant == Variant.OGA) != (self.regime == Regime.OGA_K):
            raise ValueError(f"Regime {self.regime.value} is not defined for variant {self.variant.value}")
        return self

    @property
    def label(self) -> str:
        return f"{self.variant.value}:{self.parameter:g}:{self.form.value}:r{self.residue}"


class ClassicalBounds(BaseModel):
    """Leading-form bounds of the first Zagreb, harmonic and sum-connectivity indices."""
    m1_upper: float = Field(..., description="M1 <= 10m - 4n")
    harmonic_lower: float = Field(..., description="H >= (4n + 3m) / 20")
    sum_connectivity_lower: float = Field(..., description="chi lower bound from the alpha = -1/2 leading form")


class BoundReport(BaseModel):
    """Verdict of one bound on one graph."""
    graph6: str = Field(..., description="Graph identifier (graph6)")
    n: int = Field(..., description="Vertex count")
    m: int = Field(..., description="Edge count")
    case: BoundCase = Field(..., description="Bound that was checked")
    index_value: float = Field(..., description="Index value of the graph")
    bound_value: float = Field(..., description="Bound value at (n, m)")
    gap: float = Field(..., description="Signed slack, >= 0 when the bound holds")
    equality: bool = Field(..., description="|gap| within tolerance (exact zero for integer alpha)")
    extremal_condition_met: bool = Field(..., description="Census matches the equality configuration")
    exact: bool = Field(False, description="Whether value and bound were compared in rational arithmetic")


# ============================================================================
# Enumeration models
# ============================================================================

class EqualityHolder(BaseModel):
    """A graph attaining a bound, with its censuses."""
    graph6: str = Field(..., description="Graph in graph6")
    canonical_key: str = Field(..., description="Canonical key, hex encoded")
    degree_census: Dict[str, int] = Field(..., description="n0..n4")
    edge_census: Dict[str, int] = Field(..., description="Non-zero x_ij, keyed 'i,j'")


class EnumerationSummary(BaseModel):
    """Aggregated verdicts of one case over every graph with given n and m."""
    n: int = Field(..., description="Vertex count")
    m: int = Field(..., description="Edge count")
    case: BoundCase = Field(..., description="Bound that was checked")
    graph_count: int = Field(0, description="Graphs checked")
    bound_value: Optional[float] = Field(None, description="Bound value at (n, m)")
    min_value: Optional[float] = Field(None, description="Smallest index value seen")
    max_value: Optional[float] = Field(None, description="Largest index value seen")
    equality_holders: List[EqualityHolder] = Field(default_factory=list, description="Graphs attaining the bound")
    violations: List[str] = Field(default_factory=list, description="Failures with graph6 witnesses; must be empty")
    attained: bool = Field(False, description="Whether any graph attains the bound")


# ============================================================================
# HTTP request/response models
# ============================================================================

class GraphPayload(BaseModel):
    """A graph given either as graph6 or as an explicit edge list."""
    graph6: Optional[str] = Field(None, description="Graph in graph6")
    n: Optional[int] = Field(None, ge=1, description="Vertex count when edges are given")
    edges: Optional[List[Tuple[int, int]]] = Field(None, description="0-indexed edge list")

    @model_validator(mode="after")
    def one_encoding(self) -> "GraphPayload":
        if self.graph6 is None and (self.n is None or self.edges is None):
            raise ValueError("Provide either graph6 or both n and edges")
        if self.graph6 is not None and self.edges is not None:
            raise ValueError("Provide graph6 or an edge list, not both")
        return self

    @field_validator("graph6")
    @classmethod
    def graph6_not_blank(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and not v.strip():
            raise ValueError("graph6 must not be empty")
        return v.strip() if v is not None else v


class IndexRequest(BaseModel):
    graph: GraphPayload = Field(..., description="Graph to evaluate")
    spec: IndexSpec = Field(..., description="Descriptor to evaluate")


class IndexResponse(BaseModel):
    graph6: str = Field(..., description="Evaluated graph")
    spec: IndexSpec = Field(..., description="Descriptor")
    value: float = Field(..., description="Index value")


class VerdictRequest(BaseModel):
    graph: GraphPayload = Field(..., description="Graph to check")
    variant: Variant = Field(..., description="Index family")
    parameter: float = Field(..., description="alpha or k")
    form: BoundForm = Field(BoundForm.REFINED, description="Bound form")
    tol: Optional[float] = Field(None, gt=0, description="Equality tolerance, defaults to settings")


class ExtremalRequest(BaseModel):
    n: int = Field(..., ge=5, le=64, description="Vertex count")
    m: int = Field(..., ge=4, description="Edge count")
    variant: Variant = Field(..., description="Index family")
    parameter: float = Field(..., description="alpha or k")


class ExtremalResponse(BaseModel):
    feasible: bool = Field(..., description="Whether an extremal graph exists for this case")
    graph6: Optional[str] = Field(None, description="Constructed extremal graph")
    report: Optional[BoundReport] = Field(None, description="Verdict of the constructed graph")
    reason: Optional[str] = Field(None, description="Why no graph was produced")

# Import FastAPI (web framework) and supporting classes
from fastapi import FastAPI, HTTPException, Query, status
import logging

# Configuration imports
from molex.config import get_settings

# Schema imports
from molex.schemas import (
    BoundReport,
    CoefficientTable,
    ExtremalRequest,
    ExtremalResponse,
    GraphPayload,
    IndexRequest,
    IndexResponse,
    Variant,
    VerdictRequest,
)

# Service imports
from molex.services.bounds import DomainError, UnsupportedCaseError, case_for_graph, make_case, verdict
from molex.services.graph_core import MolecularGraph, build
from molex.services.graph_io import from_graph6, to_graph6
from molex.services.indices import InvalidParameterError, UndefinedTermError, evaluate
from molex.services.lemmas import find_platt_root
from molex.services.realization import build_extremal
from molex.services.reduction import coefficient_table

# Logging setup
logger = logging.getLogger(__name__)

# Settings are read once, from MOLEX_* variables and .env
settings = get_settings()

# Initialize the FastAPI application
app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    description="Degree-based topological indices of molecular graphs, their extremal bounds and the checks behind them."
)


# --------------------------
# Request Decoding
# --------------------------

def _graph(payload: GraphPayload) -> MolecularGraph:
    """Decode a request graph; malformed input becomes a 400."""
    try:
        if payload.graph6 is not None:
            return from_graph6(payload.graph6)
        # Otherwise an explicit vertex count and edge list
        return build(payload.n, payload.edges)
    except ValueError as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=f"Invalid graph: {e}")


# --------------------------
# API Endpoints
# --------------------------

@app.get("/health")
def health_check():
    """
    Health check endpoint to verify the service is running.
    Returns status and service information.
    """
    return {
        "status": "healthy",
        "service": settings.app_name,
        "version": settings.app_version
    }


# Descriptor values
@app.post("/indices", response_model=IndexResponse)
def compute_index(req: IndexRequest) -> IndexResponse:
    """
    Evaluate one descriptor on one graph.

    Raises:
        HTTPException: 400 for an invalid graph or an undefined term, 500 otherwise
    """
    G = _graph(req.graph)
    try:
        value = evaluate(G, req.spec)
    except (InvalidParameterError, UndefinedTermError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception:
        logger.exception("Index evaluation failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error while evaluating index"
        )
    return IndexResponse(graph6=to_graph6(G), spec=req.spec, value=value)


# Reduction coefficients of one variant
@app.get("/coefficients/{variant}", response_model=CoefficientTable)
def get_coefficients(
    variant: Variant,
    parameter: float = Query(..., description="alpha for chi/platt, k for oga")
) -> CoefficientTable:
    """The seven reduction coefficients of a variant at one parameter value."""
    return coefficient_table(variant, parameter)


# Bound check for one graph
@app.post("/bounds/verdict", response_model=BoundReport)
def bound_verdict(req: VerdictRequest) -> BoundReport:
    """
    Check a graph against the bound of its residue class.

    The residue is taken from the graph's own n and m.

    Raises:
        HTTPException: 400 for graphs or parameters outside the bound's domain
    """
    G = _graph(req.graph)
    try:
        case = case_for_graph(G, req.variant, req.parameter, req.form)
        return verdict(G, case, req.tol)
    except (DomainError, UnsupportedCaseError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception:
        logger.exception("Verdict failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error while checking bound"
        )


# Extremal graph construction
@app.post("/extremal", response_model=ExtremalResponse)
def construct_extremal(req: ExtremalRequest) -> ExtremalResponse:
    """
    Construct a graph attaining the refined bound at (n, m).

    An infeasible case is a normal answer (feasible=false with the counting argument).
    """
    try:
        case = make_case(req.variant, req.parameter, (req.n + req.m) % 3)
        G, reason = build_extremal(req.n, req.m, case)
    except (DomainError, UnsupportedCaseError) as e:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))
    except Exception:
        logger.exception("Extremal construction failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail="Internal server error while constructing extremal graph"
        )
    # Infeasible cases are answered with the counting argument, not an error
    if G is None:
        logger.info(f"No extremal graph for n={req.n}, m={req.m}: {reason}")
        return ExtremalResponse(feasible=False, reason=reason)
    return ExtremalResponse(feasible=True, graph6=to_graph6(G), report=verdict(G, case))


# Lemma support
@app.get("/lemmas/platt-root")
def platt_root():
    """Root of the Platt (1,2) coefficient on (0, 2]."""
    return {"x0": find_platt_root(settings.grid_step)}

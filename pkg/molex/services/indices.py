"""
Topological Index Service

Evaluates degree-based descriptors of molecular graphs, either edge by edge or from an
edge census. Every descriptor is a sum over edges of a weight f(d_u, d_v):

- general sum-connectivity chi_alpha: (d_u + d_v)^alpha
- general Platt Pl_alpha: (d_u + d_v - 2)^alpha
- OGA_k: (2 sqrt(d_u d_v) / (d_u + d_v))^k
- Randic: (d_u d_v)^(-1/2)

and the named kinds reduce to the general ones:
M1 = chi_1, H = 2 chi_{-1}, chi = chi_{-1/2}, hyper-Zagreb = chi_2, Pl = Pl_1, EM1 = Pl_2.

Usage Example:
    from molex.schemas import IndexKind, IndexSpec
    from molex.services.indices import evaluate

    value = evaluate(graph, IndexSpec(kind=IndexKind.FIRST_ZAGREB))

Integer-parameter members of the chi and Platt families can also be evaluated exactly
with evaluate_exact(), which returns a Fraction.
"""

from fractions import Fraction
from typing import Callable, Tuple
import logging
import math

from molex.schemas import IndexKind, IndexSpec, Variant
from molex.services.graph_core import EdgeCensus, MolecularGraph, edge_census
from molex.variants import get_variant_config

logger = logging.getLogger(__name__)


class InvalidParameterError(ValueError):
    """Parameter outside the range where the requested quantity is defined."""


class UndefinedTermError(ValueError):
    """A negative power of zero would be taken (Pl_alpha, alpha < 0, on a (1,1)-edge)."""


# kind -> (variant, parameter, scale); None for the general kinds (parameter from spec)
_NAMED_KINDS = {
    IndexKind.FIRST_ZAGREB: (Variant.CHI, 1.0, 1),
    IndexKind.HARMONIC: (Variant.CHI, -1.0, 2),
    IndexKind.SUM_CONNECTIVITY: (Variant.CHI, -0.5, 1),
    IndexKind.HYPER_ZAGREB: (Variant.CHI, 2.0, 1),
    IndexKind.PLATT: (Variant.PLATT, 1.0, 1),
    IndexKind.REFORMULATED_ZAGREB: (Variant.PLATT, 2.0, 1),
}

_GENERAL_KINDS = {
    IndexKind.GENERAL_SUM_CONNECTIVITY: Variant.CHI,
    IndexKind.GENERAL_PLATT: Variant.PLATT,
    IndexKind.OGA: Variant.OGA,
}


def resolve(spec: IndexSpec) -> Tuple[Variant, float, int]:
    """
    Map a spec onto (variant, parameter, scale) so that index = scale * variant_parameter.

    Raises:
        InvalidParameterError: for the Randic index, which belongs to no variant
    """
    if spec.kind in _NAMED_KINDS:
        return _NAMED_KINDS[spec.kind]
    if spec.kind in _GENERAL_KINDS:
        return _GENERAL_KINDS[spec.kind], float(spec.parameter), 1
    raise InvalidParameterError(f"Index '{spec.kind.value}' has no variant form")


def weight_function(spec: IndexSpec) -> Callable[[int, int], float]:
    """
    Edge weight f(i, j) of a spec, scale included.

    The returned function raises UndefinedTermError on a zero base with a negative
    exponent.
    """
    if spec.kind == IndexKind.RANDIC:
        return lambda i, j: 1.0 / math.sqrt(i * j)
    variant, p, scale = resolve(spec)
    config = get_variant_config(variant)

    def weight(i: int, j: int) -> float:
        base = config.edge_base(i, j)
        if base == 0:
            if p < 0:
                raise UndefinedTermError(f"({i},{j})-edge gives 0^{p:g} in {spec.kind.value}")
            return 0.0
        return scale * math.pow(base, p)

    return weight


def evaluate(G: MolecularGraph, spec: IndexSpec) -> float:
    """
    Index value by summing the edge weight over every edge of G.

    Args:
        G: Molecular graph
        spec: Descriptor and parameter

    Returns:
        The index value (0 for an edgeless graph)

    Raises:
        UndefinedTermError: Pl_alpha with alpha < 0 on a graph with a K2 component
    """
    weight = weight_function(spec)
    deg = G.degrees
    return math.fsum(weight(deg[u], deg[v]) for u, v in G.edges())


def evaluate_from_census(census: EdgeCensus, spec: IndexSpec) -> float:
    """
    Index value as sum over degree pairs of x_ij * f(i, j).

    Pairs with x_ij = 0 are skipped, so an all-zero census gives 0 for every spec.
    """
    weight = weight_function(spec)
    return math.fsum(x * weight(i, j) for (i, j), x in census.items() if x)


def supports_exact(spec: IndexSpec) -> bool:
    """True when evaluate_exact can handle the spec."""
    if spec.kind in (IndexKind.RANDIC, IndexKind.OGA):
        return False
    _, p, _ = resolve(spec)
    return float(p).is_integer()


def evaluate_exact(G: MolecularGraph, spec: IndexSpec) -> Fraction:
    """
    Rational index value for chi/Platt kinds with an integer parameter.

    Raises:
        InvalidParameterError: non-integer parameter, OGA or Randic
        UndefinedTermError: zero base with a negative exponent
    """
    if not supports_exact(spec):
        raise InvalidParameterError(f"Index '{spec.kind.value}' with parameter {spec.parameter} has no exact form")
    variant, p, scale = resolve(spec)
    config = get_variant_config(variant)
    exponent = int(p)
    total = Fraction(0)
    for (i, j), x in edge_census(G).items():
        if not x:
            continue
        if config.edge_base(i, j) == 0:
            if exponent < 0:
                raise UndefinedTermError(f"({i},{j})-edge gives 0^{exponent} in {spec.kind.value}")
            continue
        total += x * config.exact_edge_weight(i, j, exponent)
    return scale * total


def variant_spec(variant: Variant, parameter: float) -> IndexSpec:
    """IndexSpec of the general index of a variant."""
    kind = {
        Variant.CHI: IndexKind.GENERAL_SUM_CONNECTIVITY,
        Variant.PLATT: IndexKind.GENERAL_PLATT,
        Variant.OGA: IndexKind.OGA,
    }[Variant(variant)]
    return IndexSpec(kind=kind, parameter=parameter)

"""
Census Reduction Service

The algebraic core behind the bounds. For a molecular (n, m)-graph without isolated
vertices the degree and edge censuses satisfy

    n1 + n2 + n3 + n4 = n,    n1 + 2 n2 + 3 n3 + 4 n4 = 2m,
    sum over i != j of x_ij + 2 x_jj = j n_j   (j = 1..4)

and eliminating x_14 and x_44 turns any edge-additive index into

    I(G) = (4/3)(f14 - f44) n - (1/3)(2 f14 - 5 f44) m + sum of x_ij C_ij

over the seven pairs (1,2), (1,3), (2,2), (2,3), (2,4), (3,3), (3,4), with
C_ij = f_ij - c14_ij f14 - c44_ij f44. The tables below hold c14 and c44; the
closed forms of C_ij per variant live in molex.variants.

Key Functions:
- coefficient / coefficient_table: C_ij for a variant and parameter
- eliminated_coefficient: the same value computed from the elimination
- solve_x14_x44: exact x_14 and x_44 from n, m and the other seven counts
- leading_term / residual / reconstruct: the decomposition above
- congruence: (m + n) mod 3 and the consistency with n3 - n2
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple
import logging
import math

from molex.schemas import CoefficientTable, Variant
from molex.services.graph_core import DegreeCensus, EdgeCensus, MolecularGraph, edge_census
from molex.variants import get_variant_config

logger = logging.getLogger(__name__)

REDUCED_PAIRS: Tuple[Tuple[int, int], ...] = ((1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4))

F = Fraction

# x_14 = 4n/3 - 2m/3 - sum c14_ij x_ij
C14: Dict[Tuple[int, int], Fraction] = {
    (1, 2): F(4, 3), (1, 3): F(10, 9), (2, 2): F(2, 3), (2, 3): F(4, 9),
    (2, 4): F(1, 3), (3, 3): F(2, 9), (3, 4): F(1, 9),
}

# x_44 = -4n/3 + 5m/3 - sum c44_ij x_ij
C44: Dict[Tuple[int, int], Fraction] = {
    (1, 2): F(-1, 3), (1, 3): F(-1, 9), (2, 2): F(1, 3), (2, 3): F(5, 9),
    (2, 4): F(2, 3), (3, 3): F(7, 9), (3, 4): F(8, 9),
}


class UnknownPairError(ValueError):
    """Degree pair outside the seven reduced pairs."""


def _normalize_pair(pair: Tuple[int, int]) -> Tuple[int, int]:
    i, j = pair
    key = (i, j) if i <= j else (j, i)
    if key not in C14:
        raise UnknownPairError(f"No reduction coefficient for pair {pair}")
    return key


# ============================================================================
# Coefficients
# ============================================================================

@lru_cache(maxsize=4096)
def _coefficients(variant: Variant, p: float) -> Tuple[float, ...]:
    terms = get_variant_config(variant).get_coefficient_terms()
    return tuple(
        math.fsum(float(c) * math.pow(base, p) for base, c in terms[pair])
        for pair in REDUCED_PAIRS
    )


def coefficient(variant: Variant, pair: Tuple[int, int], p: float) -> float:
    """
    Closed-form reduction coefficient of a variant.

    Args:
        variant: chi, platt or oga
        pair: One of the seven reduced degree pairs (either order)
        p: alpha or k

    Raises:
        UnknownPairError: pair is (1,1), (1,4), (4,4) or not a degree pair
    """
    key = _normalize_pair(pair)
    return _coefficients(Variant(variant), float(p))[REDUCED_PAIRS.index(key)]


def coefficient_exact(variant: Variant, pair: Tuple[int, int], p: int) -> Fraction:
    """Rational coefficient for the integer-base variants and integer p."""
    key = _normalize_pair(pair)
    config = get_variant_config(variant)
    return sum((c * Fraction(base) ** p for base, c in config.get_coefficient_terms()[key]), Fraction(0))


def coefficient_table(variant: Variant, p: float) -> CoefficientTable:
    """All seven coefficients of a variant at p."""
    values = _coefficients(Variant(variant), float(p))
    return CoefficientTable(
        variant=variant,
        parameter=p,
        values={f"{i},{j}": v for (i, j), v in zip(REDUCED_PAIRS, values)},
    )


def eliminated_coefficient(variant: Variant, pair: Tuple[int, int], p: float) -> float:
    """f_ij - c14_ij f14 - c44_ij f44, computed from the edge weights."""
    key = _normalize_pair(pair)
    config = get_variant_config(variant)
    f = config.edge_weight
    return f(*key, p) - float(C14[key]) * f(1, 4, p) - float(C44[key]) * f(4, 4, p)


# ============================================================================
# Elimination
# ============================================================================

def solve_x14_x44(n: int, m: int, partial: Mapping[Tuple[int, int], int]) -> Tuple[Fraction, Fraction]:
    """
    Solve the census system for x_14 and x_44.

    Args:
        n: Vertex count
        m: Edge count
        partial: Counts of the seven reduced pairs; missing pairs count as 0

    Returns:
        (x_14, x_44) as exact rationals. A non-integral or negative value means the
        partial census is infeasible; the caller decides what to do with it.
    """
    x14 = F(4 * n, 3) - F(2 * m, 3)
    x44 = F(-4 * n, 3) + F(5 * m, 3)
    for pair, x in partial.items():
        key = _normalize_pair(pair)
        x14 -= C14[key] * x
        x44 -= C44[key] * x
    return x14, x44


def reduced_counts(census: EdgeCensus) -> Dict[Tuple[int, int], int]:
    """The seven reduced-pair counts of a census."""
    return {pair: census[pair] for pair in REDUCED_PAIRS}


# ============================================================================
# Decomposition
# ============================================================================

def leading_term(variant: Variant, n: int, m: int, p: float) -> float:
    """(4/3)(f14 - f44) n - (1/3)(2 f14 - 5 f44) m."""
    config = get_variant_config(variant)
    f14 = config.edge_weight(1, 4, p)
    f44 = config.edge_weight(4, 4, p)
    return 4.0 / 3.0 * (f14 - f44) * n - 1.0 / 3.0 * (2.0 * f14 - 5.0 * f44) * m


def leading_term_exact(variant: Variant, n: int, m: int, p: int) -> Fraction:
    """Rational leading term for the integer-base variants and integer p."""
    config = get_variant_config(variant)
    f14 = config.exact_edge_weight(1, 4, p)
    f44 = config.exact_edge_weight(4, 4, p)
    return F(4, 3) * (f14 - f44) * n - F(1, 3) * (2 * f14 - 5 * f44) * m


def residual_from_census(census: EdgeCensus, variant: Variant, p: float) -> float:
    """sum of x_ij C_ij over the seven reduced pairs."""
    coefficients = _coefficients(Variant(variant), float(p))
    return math.fsum(census[pair] * c for pair, c in zip(REDUCED_PAIRS, coefficients) if census[pair])


def residual(G: MolecularGraph, variant: Variant, p: float) -> float:
    """
    Residual of G (the Gamma, Gamma' or Upsilon invariant of the variant).

    Zero exactly when the seven reduced counts vanish, e.g. for K_{1,4}.
    """
    return residual_from_census(edge_census(G), variant, p)


def reconstruct(n: int, m: int, G: MolecularGraph, variant: Variant, p: float) -> float:
    """
    Leading term at (n, m) plus the residual of G.

    For a molecular graph without isolated vertices this equals the index value
    of the variant at p.
    """
    return leading_term(variant, n, m, p) + residual(G, variant, p)


# ============================================================================
# Congruence
# ============================================================================

def congruence(n: int, m: int, census: DegreeCensus) -> Tuple[int, bool]:
    """
    Residue class of m + n and its consistency with n3 - n2.

    Returns:
        (residue, consistent) with residue = (m + n) mod 3 and consistent true iff
        n3 - n2 = m + n (mod 3). Consistency can fail only with isolated vertices.
    """
    residue = (m + n) % 3
    consistent = (census.n3 - census.n2 - (m + n)) % 3 == 0
    return residue, consistent


# ============================================================================
# Sign charts
# ============================================================================

def sign_chart_rows(variant: Variant, grid: Iterable[float]) -> Iterator[Tuple[str, float, str, float]]:
    """(variant, parameter, pair, value) rows of all seven coefficients over a grid."""
    name = Variant(variant).value
    for p in grid:
        values = _coefficients(Variant(variant), float(p))
        for (i, j), v in zip(REDUCED_PAIRS, values):
            yield name, float(p), f"{i},{j}", v

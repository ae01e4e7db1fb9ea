"""
Ordinary Generalized Geometric-Arithmetic Configuration Module

Constants of OGA_k(G) = sum over edges uv of (2 sqrt(d_u d_v) / (d_u + d_v))^k, k > 0.
Bounds are only defined for 0 < k <= 1 (lower bounds throughout).

Edge bases are irrational for most pairs, so this variant has no exact mode.
"""

from fractions import Fraction
from typing import Dict, Tuple
import math


VARIANT_NAME = "oga"
PARAMETER_NAME = "k"
PARAMETER_RANGE: Tuple[float, float] = (0.0, 1.0)
EXCLUDED_PARAMETERS: Tuple[float, ...] = (0.0,)

F = Fraction

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)


# ============================================================================
# Edge Weights
# ============================================================================

def edge_base(i: int, j: int) -> float:
    """Ratio of geometric to arithmetic mean of the end degrees, in (0, 1]."""
    return 2.0 * math.sqrt(i * j) / (i + j)


def edge_weight(i: int, j: int, k: float) -> float:
    return math.pow(edge_base(i, j), k)


# ============================================================================
# Reduction Coefficients
# ============================================================================

# Phi_ij(k) = sum of coeff * base^k over the listed terms
COEFFICIENT_TERMS: Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]] = {
    (1, 2): ((2 * SQRT2 / 3, F(1)), (0.8, F(-4, 3)), (1.0, F(1, 3))),
    (1, 3): ((SQRT3 / 2, F(1)), (0.8, F(-10, 9)), (1.0, F(1, 9))),
    (2, 2): ((1.0, F(2, 3)), (0.8, F(-2, 3))),
    (2, 3): ((2 * SQRT6 / 5, F(1)), (0.8, F(-4, 9)), (1.0, F(-5, 9))),
    (2, 4): ((2 * SQRT2 / 3, F(1)), (0.8, F(-1, 3)), (1.0, F(-2, 3))),
    (3, 3): ((1.0, F(2, 9)), (0.8, F(-2, 9))),
    (3, 4): ((4 * SQRT3 / 7, F(1)), (0.8, F(-1, 9)), (1.0, F(-8, 9))),
}

REGIME_REPRESENTATIVES: Dict[str, float] = {
    "oga": 1.0,
}

SUPPORTS_EXACT = False


def get_coefficient_terms() -> Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]]:
    """Closed forms of Phi_ij."""
    return COEFFICIENT_TERMS


def get_regime_representative(regime: str) -> float:
    """k used when the caller names no parameter."""
    return REGIME_REPRESENTATIVES[regime]

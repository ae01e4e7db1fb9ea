"""
General Sum-Connectivity Configuration Module

This module contains the constants of the general sum-connectivity index
chi_alpha(G) = sum over edges uv of (d_u + d_v)^alpha, molecular graphs, -1 <= alpha <= 2.

Key Components:
- PARAMETER_RANGE / EXCLUDED_PARAMETERS: admissible alpha values
- COEFFICIENT_TERMS: closed forms of the seven reduction coefficients, each a linear
  combination of powers base^alpha
- REGIME_REPRESENTATIVES: the alpha used when a caller names only a regime
- Helper functions for edge weights (float and exact)

Named special cases: M1 = chi_1, H = 2 chi_{-1}, chi = chi_{-1/2}, hyper-Zagreb = chi_2.
"""

from fractions import Fraction
from typing import Dict, Tuple
import math


VARIANT_NAME = "chi"
PARAMETER_NAME = "alpha"
PARAMETER_RANGE: Tuple[float, float] = (-1.0, 2.0)
EXCLUDED_PARAMETERS: Tuple[float, ...] = (0.0,)

F = Fraction


# ============================================================================
# Edge Weights
# ============================================================================

def edge_base(i: int, j: int) -> int:
    """d_u + d_v; at least 2 on any edge."""
    return i + j


def edge_weight(i: int, j: int, alpha: float) -> float:
    return math.pow(i + j, alpha)


def exact_edge_weight(i: int, j: int, alpha: int) -> Fraction:
    return Fraction(i + j) ** alpha


# ============================================================================
# Reduction Coefficients
# ============================================================================

# Theta_ij(alpha) = sum of coeff * base^alpha over the listed terms
COEFFICIENT_TERMS: Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]] = {
    (1, 2): ((3, F(1)), (5, F(-4, 3)), (8, F(1, 3))),
    (1, 3): ((4, F(1)), (5, F(-10, 9)), (8, F(1, 9))),
    (2, 2): ((4, F(1)), (5, F(-2, 3)), (8, F(-1, 3))),
    (2, 3): ((5, F(5, 9)), (8, F(-5, 9))),
    (2, 4): ((6, F(1)), (5, F(-1, 3)), (8, F(-2, 3))),
    (3, 3): ((6, F(1)), (5, F(-2, 9)), (8, F(-7, 9))),
    (3, 4): ((7, F(1)), (5, F(-1, 9)), (8, F(-8, 9))),
}

REGIME_REPRESENTATIVES: Dict[str, float] = {
    "neg": -0.5,
    "mid": 0.5,
    "high": 1.5,
}

SUPPORTS_EXACT = True


def get_coefficient_terms() -> Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]]:
    """Closed forms of Theta_ij."""
    return COEFFICIENT_TERMS


def get_regime_representative(regime: str) -> float:
    """alpha used for a regime named without an explicit parameter."""
    return REGIME_REPRESENTATIVES[regime]

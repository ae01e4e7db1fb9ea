"""
General Platt Index Configuration Module

Constants of the general Platt index Pl_alpha(G) = sum over edges uv of
(d_u + d_v - 2)^alpha on molecular graphs, -1 <= alpha <= 2.

Pl_1 is the Platt index (M1 - 2m) and Pl_2 the reformulated first Zagreb index EM1.
On a (1,1)-edge the base is 0, so negative alpha is undefined there; such an edge only
occurs in a K2 component.

The (1,2) coefficient changes sign inside (1, 2]; PLATT_ROOT_BRACKET brackets that root
(approximately 1.8509), above which the ordering of the (i,2) coefficients reverses.
"""

from fractions import Fraction
from typing import Dict, Tuple
import math


VARIANT_NAME = "platt"
PARAMETER_NAME = "alpha"
PARAMETER_RANGE: Tuple[float, float] = (-1.0, 2.0)
EXCLUDED_PARAMETERS: Tuple[float, ...] = (0.0,)

PLATT_ROOT_BRACKET: Tuple[float, float] = (1.0, 2.0)

F = Fraction


# ============================================================================
# Edge Weights
# ============================================================================

def edge_base(i: int, j: int) -> int:
    """d_u + d_v - 2; zero only on a (1,1)-edge."""
    return i + j - 2


def edge_weight(i: int, j: int, alpha: float) -> float:
    return math.pow(i + j - 2, alpha)


def exact_edge_weight(i: int, j: int, alpha: int) -> Fraction:
    return Fraction(i + j - 2) ** alpha


# ============================================================================
# Reduction Coefficients
# ============================================================================

# Theta'_ij(alpha) = sum of coeff * base^alpha over the listed terms
COEFFICIENT_TERMS: Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]] = {
    (1, 2): ((1, F(1)), (3, F(-4, 3)), (6, F(1, 3))),
    (1, 3): ((2, F(1)), (3, F(-10, 9)), (6, F(1, 9))),
    (2, 2): ((2, F(1)), (3, F(-2, 3)), (6, F(-1, 3))),
    (2, 3): ((3, F(5, 9)), (6, F(-5, 9))),
    (2, 4): ((4, F(1)), (3, F(-1, 3)), (6, F(-2, 3))),
    (3, 3): ((4, F(1)), (3, F(-2, 9)), (6, F(-7, 9))),
    (3, 4): ((5, F(1)), (3, F(-1, 9)), (6, F(-8, 9))),
}

REGIME_REPRESENTATIVES: Dict[str, float] = {
    "neg": -0.5,
    "mid": 0.5,
    "high": 1.5,
}

SUPPORTS_EXACT = True


def get_coefficient_terms() -> Dict[Tuple[int, int], Tuple[Tuple[float, Fraction], ...]]:
    """Closed forms of Theta'_ij."""
    return COEFFICIENT_TERMS


def get_regime_representative(regime: str) -> float:
    """alpha used for a regime named without an explicit parameter."""
    return REGIME_REPRESENTATIVES[regime]

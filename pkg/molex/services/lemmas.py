"""
Lemma Verification Service

Numerical checks of the inequalities the bounds rest on, at two levels:

- coefficient level: orderings and signs of the reduction coefficients over dense
  parameter grids (default step 1e-3), returned as lists of LemmaViolation;
- graph level: per-graph predicates on the residual of a molecular graph.

Strict inequalities must hold with a margin of STRICT_MARGIN. Grids are half-open
around the regime endpoints: alpha = 0 and alpha = 1 are never evaluated, the closed
endpoints alpha = -1, alpha = 2 and k = 1 always are.

The Platt (1,2) coefficient is the one exception to the uniform pattern: it is
negative on (0, x0) and non-negative on [x0, 2] with x0 ~ 1.8509, see find_platt_root.
Above x0 the high-regime ordering is replaced by
max(C22, C23, C24) < 0 <= C12 and C12 + C2j < 0 for j = 2, 3, 4.
"""

from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np
from scipy.optimize import brentq

from molex.schemas import LemmaViolation, Regime, Variant
from molex.services.bounds import DomainError, classify_regime
from molex.services.graph_core import MolecularGraph, degree_census, edge_census
from molex.services.indices import InvalidParameterError
from molex.services.reduction import coefficient, residual_from_census
from molex.variants import chi_config, oga_config
from molex.variants.platt_config import PLATT_ROOT_BRACKET

logger = logging.getLogger(__name__)

STRICT_MARGIN = 1e-12
DEFAULT_STEP = 1e-3


class PreconditionFailedError(ValueError):
    """The graph does not satisfy the lemma's hypothesis (n2 + n3 >= 2, n >= 5)."""


class NoSignChangeError(ValueError):
    """The Platt (1,2) coefficient does not change sign exactly once on (0, 2]."""


# ============================================================================
# Grids
# ============================================================================

def parameter_grid(lo: float, hi: float, step: float, exclude: Sequence[float] = ()) -> np.ndarray:
    """
    Points lo, lo + step, ..., hi, without the points within step/2 of any excluded value.

    Points are generated from integer multiples of step and rounded to 12 decimals, so
    the same grid is produced on every platform.
    """
    count = int(round((hi - lo) / step))
    grid = np.round(lo + step * np.arange(count + 1), 12)
    keep = np.ones(grid.shape, dtype=bool)
    for x in exclude:
        keep &= np.abs(grid - x) >= step / 2
    return grid[keep]


def alpha_lemma_grid(step: float = DEFAULT_STEP) -> np.ndarray:
    """[-1, 0) U (0, 1) U (1, 2] at the given step."""
    lo, hi = chi_config.PARAMETER_RANGE
    return parameter_grid(lo, hi, step, exclude=chi_config.EXCLUDED_PARAMETERS + (1.0,))


def k_lemma_grid(step: float = DEFAULT_STEP) -> np.ndarray:
    """(0, 1] at the given step."""
    lo, hi = oga_config.PARAMETER_RANGE
    return parameter_grid(lo, hi, step, exclude=oga_config.EXCLUDED_PARAMETERS)


def lemma_regime(variant: Variant, parameter: float) -> Regime:
    """
    classify_regime with lemma-level errors.

    Raises:
        InvalidParameterError: parameter outside the variant's admissible range
    """
    try:
        return classify_regime(variant, parameter)
    except DomainError as e:
        raise InvalidParameterError(str(e)) from e


# ============================================================================
# Comparison helpers
# ============================================================================

def _less(out: List[LemmaViolation], clause: str, p: float, lhs: float, rhs: float) -> None:
    if not lhs < rhs - STRICT_MARGIN:
        out.append(LemmaViolation(clause=clause, parameter=float(p), lhs=float(lhs), rhs=float(rhs)))


def _not_less(out: List[LemmaViolation], clause: str, p: float, lhs: float, rhs: float) -> None:
    if not lhs >= rhs:
        out.append(LemmaViolation(clause=clause, parameter=float(p), lhs=float(lhs), rhs=float(rhs)))


def _table(variant: Variant, p: float) -> Dict[str, float]:
    pairs = ((1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4))
    return {f"{i}{j}": coefficient(variant, (i, j), p) for i, j in pairs}


def _require_alpha_variant(variant: Variant) -> Variant:
    variant = Variant(variant)
    if variant == Variant.OGA:
        raise InvalidParameterError("OGA coefficients are checked with check_oga_chains")
    return variant


# ============================================================================
# Platt root
# ============================================================================

@lru_cache(maxsize=8)
def find_platt_root(step: float = DEFAULT_STEP) -> float:
    """
    Root x0 of the Platt (1,2) coefficient on (0, 2].

    The grid on (0, 2] is scanned for sign changes; exactly one is expected, inside
    PLATT_ROOT_BRACKET. The bracketing cell is then refined with Brent's method to an
    interval below 1e-12.

    Returns:
        x0 (about 1.8509)

    Raises:
        NoSignChangeError: zero or several sign changes on the grid
    """
    grid = parameter_grid(step, 2.0, step)
    values = np.array([coefficient(Variant.PLATT, (1, 2), a) for a in grid])
    changes = np.nonzero(np.sign(values[:-1]) != np.sign(values[1:]))[0]
    if len(changes) != 1:
        raise NoSignChangeError(f"Expected one sign change of the Platt (1,2) coefficient on (0, 2], found {len(changes)}")
    lo, hi = float(grid[changes[0]]), float(grid[changes[0] + 1])
    if not (PLATT_ROOT_BRACKET[0] <= lo and hi <= PLATT_ROOT_BRACKET[1]):
        raise NoSignChangeError(f"Sign change at [{lo}, {hi}] lies outside {PLATT_ROOT_BRACKET}")
    root = brentq(lambda a: coefficient(Variant.PLATT, (1, 2), a), lo, hi, xtol=1e-13)
    logger.debug(f"Platt (1,2) coefficient root at {root:.12f}")
    return float(root)


# ============================================================================
# Coefficient-level checks
# ============================================================================

def check_coefficient_orderings(variant: Variant, grid: Iterable[float]) -> List[LemmaViolation]:
    """
    Check the six regime clauses of the chi or Platt coefficient orderings.

    For -1 <= alpha < 0:  min(C13, C23, C33) > C34 > 0 and min(C12, C22, C23) > C24 > 0
    For 0 < alpha < 1:    max(C13, C23, C33) < C34 < 0 and max(C12, C22, C23) < C24 < 0
    For 1 < alpha <= 2:   max(C23, C33, C34) < C13 < 0 and max(C22, C23, C24) < C12 < 0,
                          the last clause replaced above the Platt root as described in
                          the module docstring.

    Args:
        variant: Variant.CHI or Variant.PLATT
        grid: alpha values in [-1, 0) U (0, 1) U (1, 2]

    Returns:
        Violations, empty when every clause holds at every point

    Raises:
        InvalidParameterError: OGA variant, or a grid point outside the admissible set
    """
    variant = _require_alpha_variant(variant)
    x0 = find_platt_root() if variant == Variant.PLATT else None
    name = variant.value
    out: List[LemmaViolation] = []
    for a in grid:
        regime = lemma_regime(variant, float(a))
        if regime == Regime.UNIT:
            raise InvalidParameterError("alpha = 1 is excluded from the ordering checks")
        c = _table(variant, float(a))
        if regime == Regime.NEG:
            _less(out, f"{name}:neg:c34<min(c13,c23,c33)", a, c["34"], min(c["13"], c["23"], c["33"]))
            _less(out, f"{name}:neg:0<c34", a, 0.0, c["34"])
            _less(out, f"{name}:neg:c24<min(c12,c22,c23)", a, c["24"], min(c["12"], c["22"], c["23"]))
            _less(out, f"{name}:neg:0<c24", a, 0.0, c["24"])
        elif regime == Regime.MID:
            _less(out, f"{name}:mid:max(c13,c23,c33)<c34", a, max(c["13"], c["23"], c["33"]), c["34"])
            _less(out, f"{name}:mid:c34<0", a, c["34"], 0.0)
            _less(out, f"{name}:mid:max(c12,c22,c23)<c24", a, max(c["12"], c["22"], c["23"]), c["24"])
            _less(out, f"{name}:mid:c24<0", a, c["24"], 0.0)
        else:
            _less(out, f"{name}:high:max(c23,c33,c34)<c13", a, max(c["23"], c["33"], c["34"]), c["13"])
            _less(out, f"{name}:high:c13<0", a, c["13"], 0.0)
            if x0 is not None and a >= x0:
                _less(out, f"{name}:high:max(c22,c23,c24)<0", a, max(c["22"], c["23"], c["24"]), 0.0)
                _not_less(out, f"{name}:high:0<=c12", a, c["12"], 0.0)
                for other in ("22", "23", "24"):
                    _less(out, f"{name}:high:c12+c{other}<0", a, c["12"] + c[other], 0.0)
            else:
                _less(out, f"{name}:high:max(c22,c23,c24)<c12", a, max(c["22"], c["23"], c["24"]), c["12"])
                _less(out, f"{name}:high:c12<0", a, c["12"], 0.0)
    if out:
        logger.warning(f"{len(out)} ordering violations for {name}")
    return out


def check_sign_chart(variant: Variant, grid: Iterable[float]) -> List[LemmaViolation]:
    """
    All seven coefficients positive on [-1, 0) and negative on (0, 2].

    For Platt the (1,2) coefficient is instead required to be negative on (0, x0) and
    non-negative on [x0, 2].
    """
    variant = _require_alpha_variant(variant)
    x0 = find_platt_root() if variant == Variant.PLATT else None
    name = variant.value
    out: List[LemmaViolation] = []
    for a in grid:
        lemma_regime(variant, float(a))
        for pair, value in _table(variant, float(a)).items():
            if a < 0:
                _less(out, f"{name}:sign:c{pair}>0", a, 0.0, value)
            elif x0 is not None and pair == "12" and a >= x0:
                _not_less(out, f"{name}:sign:c12>=0", a, value, 0.0)
            else:
                _less(out, f"{name}:sign:c{pair}<0", a, value, 0.0)
    return out


def check_auxiliary_chains(variant: Variant, grid: Iterable[float]) -> List[LemmaViolation]:
    """
    Residuals of the small configurations with n2 + n3 >= 2 against the correction term.

    Each clause compares the residual contributed by one such configuration (two
    degree-2 vertices on a (2,2)-edge, a (2,3)-edge next to a (3,4)-edge, and so on)
    with 2 C24 for alpha < 1, or with 2 C13 + C34 for 1 < alpha <= 2. For the high
    regime the residue-2 correction C12 + C24 must also exceed 2 C13 + C34.
    """
    variant = _require_alpha_variant(variant)
    name = variant.value
    out: List[LemmaViolation] = []
    for a in grid:
        regime = lemma_regime(variant, float(a))
        if regime == Regime.UNIT:
            raise InvalidParameterError("alpha = 1 is excluded from the auxiliary checks")
        c = _table(variant, float(a))
        if regime in (Regime.NEG, Regime.MID):
            target = 2 * c["24"]
            configurations = {
                "c22": c["22"],
                "c23+c34": c["23"] + c["34"],
                "3c23": 3 * c["23"],
                "c33+c34": c["33"] + c["34"],
                "3c33": 3 * c["33"],
                "6c34": 6 * c["34"],
                "4c24": 4 * c["24"],
            }
            for label, value in configurations.items():
                if regime == Regime.NEG:
                    _less(out, f"{name}:neg:2c24<{label}", a, target, value)
                else:
                    _less(out, f"{name}:mid:{label}<2c24", a, value, target)
        else:
            target = 2 * c["13"] + c["34"]
            configurations = {
                "c22": c["22"],
                "c23+c13": c["23"] + c["13"],
                "3c23": 3 * c["23"],
                "c33+c13": c["33"] + c["13"],
                "3c33": 3 * c["33"],
                "4c24": 4 * c["24"],
                "c12+3c24": c["12"] + 3 * c["24"],
                "2c12+2c24": 2 * c["12"] + 2 * c["24"],
            }
            for label, value in configurations.items():
                _less(out, f"{name}:high:{label}<2c13+c34", a, value, target)
            _less(out, f"{name}:high:2c13+c34<c12+c24", a, target, c["12"] + c["24"])
    return out


def check_oga_chains(grid: Iterable[float]) -> List[LemmaViolation]:
    """
    Both OGA chains on (0, 1]:
    C12 > C22 > C23 > C24 > 0 and C13 > C23 > C33 > C34 > 0.
    """
    out: List[LemmaViolation] = []
    for k in grid:
        lemma_regime(Variant.OGA, float(k))
        c = _table(Variant.OGA, float(k))
        for chain in (("12", "22", "23", "24"), ("13", "23", "33", "34")):
            for upper, lower in zip(chain, chain[1:]):
                _less(out, f"oga:c{lower}<c{upper}", k, c[lower], c[upper])
            _less(out, f"oga:0<c{chain[-1]}", k, 0.0, c[chain[-1]])
    return out


# ============================================================================
# Graph-level checks
# ============================================================================

def _require_two_special(G: MolecularGraph) -> None:
    census = degree_census(G)
    if census.n2 + census.n3 < 2:
        raise PreconditionFailedError(f"n2 + n3 = {census.n2 + census.n3} < 2")


def residual_gap_target(variant: Variant, alpha: float) -> Tuple[float, bool]:
    """
    Right-hand side of the residual-gap inequality and whether the residual must exceed it.

    Returns:
        (target, residual_above)
    """
    regime = lemma_regime(variant, alpha)
    if regime == Regime.UNIT:
        raise InvalidParameterError("alpha = 1 is excluded from the residual-gap check")
    if regime == Regime.HIGH:
        return 2 * coefficient(variant, (1, 3), alpha) + coefficient(variant, (3, 4), alpha), False
    return 2 * coefficient(variant, (2, 4), alpha), regime == Regime.NEG


def check_residual_gap(G: MolecularGraph, variant: Variant, alpha: float) -> bool:
    """
    Strict residual-gap inequality for graphs with at least two degree-2/3 vertices.

    Gamma(G) > 2 C24 for -1 <= alpha < 0, Gamma(G) < 2 C24 for 0 < alpha < 1 and
    Gamma(G) < 2 C13 + C34 for 1 < alpha <= 2 (Gamma the residual of the variant).

    Raises:
        PreconditionFailedError: n2 + n3 < 2
        InvalidParameterError: alpha outside [-1, 0) U (0, 1) U (1, 2], or OGA
    """
    variant = _require_alpha_variant(variant)
    _require_two_special(G)
    target, above = residual_gap_target(variant, alpha)
    value = residual_from_census(edge_census(G), variant, alpha)
    return value > target if above else value < target


def check_oga_residual_gap(G: MolecularGraph, k: float) -> bool:
    """
    Upsilon(G) > 3 C34 for 0 < k <= 1 and n2 + n3 >= 2.

    Raises:
        PreconditionFailedError: n2 + n3 < 2
        InvalidParameterError: k outside (0, 1]
    """
    lemma_regime(Variant.OGA, k)
    _require_two_special(G)
    return residual_from_census(edge_census(G), Variant.OGA, k) > 3 * coefficient(Variant.OGA, (3, 4), k)


def structural_inequality(G: MolecularGraph) -> bool:
    """
    x12 <= x22 + x23 + x24.

    Holds for connected molecular graphs on at least 5 vertices; disconnected graphs
    can break it (two disjoint P3's give 4 <= 0).

    Raises:
        PreconditionFailedError: n < 5
    """
    if G.n < 5:
        raise PreconditionFailedError(f"n = {G.n} < 5")
    census = edge_census(G)
    return census[1, 2] <= census[2, 2] + census[2, 3] + census[2, 4]


def grid_report(step: Optional[float] = None) -> Dict[str, List[LemmaViolation]]:
    """Every coefficient-level check on the default grids, keyed by check name."""
    alphas = alpha_lemma_grid(step or DEFAULT_STEP)
    ks = k_lemma_grid(step or DEFAULT_STEP)
    report: Dict[str, List[LemmaViolation]] = {}
    for variant in (Variant.CHI, Variant.PLATT):
        report[f"{variant.value}:orderings"] = check_coefficient_orderings(variant, alphas)
        report[f"{variant.value}:sign_chart"] = check_sign_chart(variant, alphas)
        report[f"{variant.value}:auxiliary"] = check_auxiliary_chains(variant, alphas)
    report["oga:chains"] = check_oga_chains(ks)
    return report

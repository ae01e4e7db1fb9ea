"""
Bound Evaluation Service

Closed-form bounds of the chi, Platt and OGA families on connected molecular
(n, m)-graphs, their equality conditions and per-graph verdicts.

Every bound is the leading term of the census reduction plus a correction that
depends on the residue r = (m + n) mod 3 and on the parameter regime:

    residue | neg / mid / oga     | high
    --------+---------------------+--------------
       0    | 0                   | 0
       1    | 3 C34               | 2 C13 + C34
       2    | 2 C24               | C12 + C24

with C the reduction coefficients of the variant. The bound is a lower bound for
alpha < 0 and for OGA, an upper bound otherwise. alpha = 1 only has the leading form
(M1 <= 10m - 4n, Pl1 <= 8m - 4n); the refined chi bound at alpha = 1 exists for
residue 0 only, where it coincides with the leading form.

Key Functions:
- leading_bound / classical_bounds / tree_bound: residue-free forms
- make_case / refined_bound / correction: residue-aware forms
- extremal_condition: census configuration of the equality holders
- verdict: compare one graph against one case
"""

from fractions import Fraction
from typing import Optional, Tuple
import logging

from molex.config import get_settings
from molex.schemas import BoundCase, BoundForm, BoundReport, ClassicalBounds, Direction, Regime, Variant
from molex.services.graph_core import (
    DegreeCensus,
    EdgeCensus,
    MolecularGraph,
    degree_census,
    edge_census,
    is_connected,
)
from molex.services.graph_io import to_graph6
from molex.services.indices import evaluate, evaluate_exact, variant_spec
from molex.services.reduction import coefficient, coefficient_exact, leading_term, leading_term_exact
from molex.variants import get_variant_config

logger = logging.getLogger(__name__)


class DomainError(ValueError):
    """(n, m) or the parameter lies outside the range where the bounds are stated."""


class UnsupportedCaseError(ValueError):
    """No refined bound exists for this variant, parameter and residue."""


# ============================================================================
# Cases
# ============================================================================

def classify_regime(variant: Variant, parameter: float) -> Regime:
    """
    Regime of a parameter.

    The admissible range is PARAMETER_RANGE of the variant's configuration,
    closed at both ends, minus EXCLUDED_PARAMETERS.

    Raises:
        DomainError: alpha outside [-1, 0) U (0, 2] or k outside (0, 1]
    """
    variant = Variant(variant)
    config = get_variant_config(variant)
    lo, hi = config.PARAMETER_RANGE
    if not lo <= parameter <= hi or parameter in config.EXCLUDED_PARAMETERS:
        excluded = ", ".join(f"{x:g}" for x in config.EXCLUDED_PARAMETERS)
        raise DomainError(
            f"{config.PARAMETER_NAME}={parameter} is outside the {config.VARIANT_NAME} range "
            f"[{lo:g}, {hi:g}] minus {{{excluded}}}"
        )
    if variant == Variant.OGA:
        return Regime.OGA_K
    if parameter < 0:
        return Regime.NEG
    if parameter < 1:
        return Regime.MID
    if parameter == 1:
        return Regime.UNIT
    return Regime.HIGH


def _check_supported(case: BoundCase) -> None:
    if case.form == BoundForm.LEADING or case.regime != Regime.UNIT:
        return
    if case.variant == Variant.CHI and case.residue == 0:
        return
    raise UnsupportedCaseError(
        f"No refined {case.variant.value} bound at alpha = 1 for residue {case.residue}; "
        f"only the leading form is available there"
    )


def make_case(
    variant: Variant,
    parameter: float,
    residue: int,
    form: BoundForm = BoundForm.REFINED,
) -> BoundCase:
    """
    Build a BoundCase with regime and direction derived from the parameter.

    Raises:
        DomainError: parameter out of range or residue not in {0, 1, 2}
        UnsupportedCaseError: refined form at alpha = 1 other than chi residue 0
    """
    if residue not in (0, 1, 2):
        raise DomainError(f"residue={residue} is not in {{0, 1, 2}}")
    regime = classify_regime(variant, parameter)
    direction = Direction.LOWER if regime in (Regime.NEG, Regime.OGA_K) else Direction.UPPER
    case = BoundCase(
        variant=variant,
        parameter=parameter,
        residue=residue,
        regime=regime,
        direction=direction,
        form=form,
    )
    _check_supported(case)
    return case


def case_for_graph(G: MolecularGraph, variant: Variant, parameter: float,
                   form: BoundForm = BoundForm.REFINED) -> BoundCase:
    """The case of a graph: residue taken from its own n and m."""
    return make_case(variant, parameter, (G.n + G.m) % 3, form)


def _check_domain(n: int, m: int) -> None:
    if n < 5:
        raise DomainError(f"n={n} < 5")
    if not n - 1 <= m <= 2 * n:
        raise DomainError(f"m={m} is outside [n - 1, 2n] = [{n - 1}, {2 * n}]")


def _check_residue(case: BoundCase, n: int, m: int) -> None:
    if case.residue != (m + n) % 3:
        raise DomainError(f"residue {case.residue} does not match (m + n) mod 3 = {(m + n) % 3}")


# ============================================================================
# Residue-free forms
# ============================================================================

def leading_bound(n: int, m: int, alpha: float, variant: Variant = Variant.CHI) -> Tuple[float, Direction]:
    """
    Leading-form bound of a variant at (n, m).

    For chi this is (4/3)(5^a - 8^a) n - (1/3)(2 5^a - 5 8^a) m, a lower bound for
    alpha < 0 and an upper bound for alpha > 0. Equality holds exactly for the graphs
    with n2 = n3 = 0.

    Raises:
        DomainError: n < 5, m outside [n - 1, 2n] or alpha out of range
    """
    _check_domain(n, m)
    regime = classify_regime(variant, alpha)
    direction = Direction.LOWER if regime in (Regime.NEG, Regime.OGA_K) else Direction.UPPER
    return leading_term(variant, n, m, alpha), direction


def classical_bounds(n: int, m: int) -> ClassicalBounds:
    """
    M1 <= 10m - 4n, H >= (4n + 3m)/20 and the sum-connectivity lower bound.

    Raises:
        DomainError: n < 5
    """
    if n < 5:
        raise DomainError(f"n={n} < 5")
    return ClassicalBounds(
        m1_upper=10 * m - 4 * n,
        harmonic_lower=(4 * n + 3 * m) / 20,
        sum_connectivity_lower=leading_term(Variant.CHI, n, m, -0.5),
    )


def tree_bound(variant: Variant, n: int, parameter: float) -> float:
    """Leading form at m = n - 1: ((2 f14 + f44) n + 2 f14 - 5 f44) / 3."""
    classify_regime(variant, parameter)
    config = get_variant_config(variant)
    f14 = config.edge_weight(1, 4, parameter)
    f44 = config.edge_weight(4, 4, parameter)
    return ((2 * f14 + f44) * n + 2 * f14 - 5 * f44) / 3


# ============================================================================
# Refined forms
# ============================================================================

def _correction_pairs(case: BoundCase) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    if case.form == BoundForm.LEADING or case.residue == 0:
        return ()
    high = case.regime == Regime.HIGH
    if case.residue == 1:
        return (((1, 3), 2), ((3, 4), 1)) if high else (((3, 4), 3),)
    return (((1, 2), 1), ((2, 4), 1)) if high else (((2, 4), 2),)


def correction(case: BoundCase) -> float:
    """Correction term added to the leading term (0 for residue 0 and the leading form)."""
    _check_supported(case)
    return sum(c * coefficient(case.variant, pair, case.parameter) for pair, c in _correction_pairs(case))


def refined_bound(case: BoundCase, n: int, m: int) -> float:
    """
    Bound value of a case at (n, m).

    Raises:
        DomainError: (n, m) out of range or residue mismatch
        UnsupportedCaseError: refined form at alpha = 1 other than chi residue 0
    """
    _check_domain(n, m)
    _check_residue(case, n, m)
    _check_supported(case)
    return leading_term(case.variant, n, m, case.parameter) + correction(case)


def supports_exact(case: BoundCase) -> bool:
    """Chi and Platt cases with an integer parameter are compared in rationals."""
    return get_variant_config(case.variant).SUPPORTS_EXACT and float(case.parameter).is_integer()


def bound_value_exact(case: BoundCase, n: int, m: int) -> Fraction:
    """
    Rational bound value for chi/Platt cases with integer alpha.

    Raises:
        UnsupportedCaseError: OGA or a non-integer alpha
    """
    if not supports_exact(case):
        raise UnsupportedCaseError(f"Case {case.label} has no exact form")
    _check_domain(n, m)
    _check_residue(case, n, m)
    _check_supported(case)
    p = int(case.parameter)
    value = leading_term_exact(case.variant, n, m, p)
    for pair, c in _correction_pairs(case):
        value += c * coefficient_exact(case.variant, pair, p)
    return value


# ============================================================================
# Equality conditions
# ============================================================================

def extremal_condition_from_census(degrees: DegreeCensus, edges: EdgeCensus, case: BoundCase) -> bool:
    """Census-level equality configuration of a case."""
    if case.form == BoundForm.LEADING or case.residue == 0:
        return degrees.n2 == 0 and degrees.n3 == 0
    high = case.regime == Regime.HIGH
    if case.residue == 1:
        if not (degrees.n2 == 0 and degrees.n3 == 1):
            return False
        return (edges[1, 3], edges[3, 4]) == ((2, 1) if high else (0, 3))
    if not (degrees.n3 == 0 and degrees.n2 == 1):
        return False
    return (edges[1, 2], edges[2, 4]) == ((1, 1) if high else (0, 2))


def extremal_condition(G: MolecularGraph, case: BoundCase) -> bool:
    """
    Whether G has the census of the equality holders of a case.

    residue 0 (and the leading form): n2 = n3 = 0.
    residue 1: n2 = 0, n3 = 1 and (x13, x34) = (0, 3), or (2, 1) in the high regime.
    residue 2: n3 = 0, n2 = 1 and (x12, x24) = (0, 2), or (1, 1) in the high regime.
    """
    return extremal_condition_from_census(degree_census(G), edge_census(G), case)


# ============================================================================
# Verdicts
# ============================================================================

def verdict(G: MolecularGraph, case: BoundCase, tol: Optional[float] = None) -> BoundReport:
    """
    Check one graph against one bound.

    Integer-alpha chi and Platt cases are compared in rational arithmetic, so equality
    means a zero gap; every other case uses |gap| <= tol.

    Args:
        G: Connected molecular graph with n >= 5 and n - 1 <= m <= 2n
        case: Bound to check; its residue must match (m + n) mod 3
        tol: Equality tolerance, settings.tol when omitted

    Returns:
        BoundReport with gap >= 0 when the bound holds

    Raises:
        DomainError: disconnected graph, (n, m) out of range or residue mismatch
        UnsupportedCaseError: see refined_bound
    """
    tol = get_settings().tol if tol is None else tol
    n, m = G.n, G.m
    _check_domain(n, m)
    if not is_connected(G):
        raise DomainError("Bounds are stated for connected graphs only")
    _check_residue(case, n, m)
    spec = variant_spec(case.variant, case.parameter)
    lower = case.direction == Direction.LOWER

    exact = supports_exact(case)
    if exact:
        value_q = evaluate_exact(G, spec)
        bound_q = bound_value_exact(case, n, m)
        gap_q = value_q - bound_q if lower else bound_q - value_q
        value, bound, gap, equality = float(value_q), float(bound_q), float(gap_q), gap_q == 0
    else:
        value = evaluate(G, spec)
        bound = refined_bound(case, n, m)
        gap = value - bound if lower else bound - value
        equality = abs(gap) <= tol

    condition = extremal_condition(G, case)
    if equality != condition:
        logger.debug(f"Equality {equality} but condition {condition} for {case.label} at n={n}, m={m}")
    return BoundReport(
        graph6=to_graph6(G),
        n=n,
        m=m,
        case=case,
        index_value=value,
        bound_value=bound,
        gap=gap,
        equality=equality,
        extremal_condition_met=condition,
        exact=exact,
    )

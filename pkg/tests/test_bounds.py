from fractions import Fraction
import math

import pytest

from molex.config import DEFAULT_ALPHA_GRID, DEFAULT_K_GRID
from molex.schemas import BoundCase, BoundForm, Direction, Regime, Variant
from molex.services.bounds import (
    DomainError,
    UnsupportedCaseError,
    bound_value_exact,
    case_for_graph,
    classical_bounds,
    classify_regime,
    correction,
    extremal_condition,
    leading_bound,
    make_case,
    refined_bound,
    tree_bound,
    verdict,
)
from molex.services.graph_core import build
from molex.services.indices import evaluate, variant_spec
from molex.services.reduction import leading_term
from molex.variants import get_variant_config

HUB_TREE_BOUND = 5.158815778527303


def test_leading_bound_values_and_directions():
    value, direction = leading_bound(6, 6, -0.5)
    assert value == pytest.approx(2.4959611631863794, abs=1e-12)
    assert direction == Direction.LOWER
    value, direction = leading_bound(5, 4, -0.5)
    assert value == pytest.approx(4 / math.sqrt(5), abs=1e-12)
    _, direction = leading_bound(6, 6, 0.5)
    assert direction == Direction.UPPER
    _, direction = leading_bound(6, 6, 0.5, Variant.OGA)
    assert direction == Direction.LOWER


@pytest.mark.parametrize("n,m", [(4, 3), (6, 4), (6, 13)])
def test_leading_bound_domain(n, m):
    with pytest.raises(DomainError):
        leading_bound(n, m, -0.5)


def test_classical_bounds_are_attained_by_the_star(k14):
    bounds = classical_bounds(5, 4)
    assert bounds.m1_upper == 20
    assert bounds.harmonic_lower == pytest.approx(1.6)
    assert bounds.sum_connectivity_lower == pytest.approx(4 / math.sqrt(5))
    assert bounds.sum_connectivity_lower == pytest.approx(evaluate(k14, variant_spec(Variant.CHI, -0.5)))
    with pytest.raises(DomainError):
        classical_bounds(4, 3)


@pytest.mark.parametrize("variant,p", [(Variant.CHI, -0.5), (Variant.PLATT, 2.0), (Variant.OGA, 0.5)])
def test_tree_bound_is_the_leading_form_at_m_n_minus_1(variant, p):
    for n in (5, 9, 13):
        assert tree_bound(variant, n, p) == pytest.approx(leading_term(variant, n, n - 1, p), abs=1e-12)


def test_classify_regime():
    assert classify_regime(Variant.CHI, -1.0) == Regime.NEG
    assert classify_regime(Variant.CHI, 0.3) == Regime.MID
    assert classify_regime(Variant.PLATT, 1.0) == Regime.UNIT
    assert classify_regime(Variant.PLATT, 2.0) == Regime.HIGH
    assert classify_regime(Variant.OGA, 1.0) == Regime.OGA_K
    for variant, p in ((Variant.CHI, 0.0), (Variant.CHI, 2.5), (Variant.CHI, -1.5),
                       (Variant.OGA, 0.0), (Variant.OGA, 1.5)):
        with pytest.raises(DomainError):
            classify_regime(variant, p)


@pytest.mark.parametrize("variant", list(Variant))
def test_classify_regime_follows_the_variant_range(variant):
    config = get_variant_config(variant)
    lo, hi = config.PARAMETER_RANGE
    for p in config.EXCLUDED_PARAMETERS + (lo - 0.25, hi + 0.25):
        with pytest.raises(DomainError, match=config.PARAMETER_NAME):
            classify_regime(variant, p)
    if lo not in config.EXCLUDED_PARAMETERS:
        classify_regime(variant, lo)
    classify_regime(variant, hi)


def test_regime_representatives_are_admissible_and_skip_alpha_one():
    for variant in Variant:
        config = get_variant_config(variant)
        assert "unit" not in config.REGIME_REPRESENTATIVES
        for name, p in config.REGIME_REPRESENTATIVES.items():
            assert classify_regime(variant, p).value == name


def test_make_case_derives_regime_and_direction():
    case = make_case(Variant.CHI, -0.5, 1)
    assert (case.regime, case.direction) == (Regime.NEG, Direction.LOWER)
    case = make_case(Variant.PLATT, 1.5, 2)
    assert (case.regime, case.direction) == (Regime.HIGH, Direction.UPPER)
    case = make_case(Variant.OGA, 0.25, 0)
    assert (case.regime, case.direction) == (Regime.OGA_K, Direction.LOWER)
    assert case.label == "oga:0.25:refined:r0"
    with pytest.raises(DomainError):
        make_case(Variant.CHI, -0.5, 3)


def test_alpha_one_supports_only_the_leading_form_and_chi_residue_zero():
    assert make_case(Variant.CHI, 1.0, 0).regime == Regime.UNIT
    with pytest.raises(UnsupportedCaseError):
        make_case(Variant.PLATT, 1.0, 0)
    with pytest.raises(UnsupportedCaseError):
        make_case(Variant.CHI, 1.0, 1)
    case = make_case(Variant.PLATT, 1.0, 1, BoundForm.LEADING)
    assert correction(case) == 0.0


def test_bound_case_validator_rejects_contradictions():
    with pytest.raises(ValueError):
        BoundCase(variant=Variant.CHI, parameter=-0.5, residue=0, regime=Regime.NEG, direction=Direction.UPPER)
    with pytest.raises(ValueError):
        BoundCase(variant=Variant.CHI, parameter=0.5, residue=0, regime=Regime.OGA_K, direction=Direction.LOWER)


def test_refined_bound_of_hub_tree(hub_tree):
    case = make_case(Variant.CHI, -0.5, 1)
    bound = refined_bound(case, 13, 12)
    assert bound == pytest.approx(HUB_TREE_BOUND, abs=1e-12)
    assert evaluate(hub_tree, variant_spec(Variant.CHI, -0.5)) == pytest.approx(bound, abs=1e-10)


def test_exact_high_regime_bound():
    case = make_case(Variant.CHI, 2.0, 2)
    assert leading_term(Variant.CHI, 6, 5, 2.0) == pytest.approx(138)
    assert correction(case) == pytest.approx(-18)
    assert refined_bound(case, 6, 5) == pytest.approx(120)
    assert bound_value_exact(case, 6, 5) == Fraction(120)


def test_oga_bound_on_five_vertices():
    case = make_case(Variant.OGA, 1.0, 0)
    assert refined_bound(case, 5, 4) == pytest.approx(16 / 5, abs=1e-12)
    with pytest.raises(UnsupportedCaseError):
        bound_value_exact(case, 5, 4)


def test_refined_bound_rejects_residue_mismatch():
    with pytest.raises(DomainError):
        refined_bound(make_case(Variant.CHI, -0.5, 0), 13, 12)


def test_corrections_tighten_the_leading_form():
    cases = [(Variant.CHI, a) for a in DEFAULT_ALPHA_GRID] + [(Variant.PLATT, a) for a in DEFAULT_ALPHA_GRID] \
        + [(Variant.OGA, k) for k in DEFAULT_K_GRID]
    for variant, p in cases:
        for residue in (1, 2):
            case = make_case(variant, p, residue)
            c = correction(case)
            if case.direction == Direction.LOWER:
                assert c > 0, case.label
            else:
                assert c < 0, case.label
        assert correction(make_case(variant, p, 0)) == 0.0


def test_extremal_condition(k14, p5, hub_tree):
    assert extremal_condition(k14, make_case(Variant.CHI, -0.5, 0))
    assert not extremal_condition(p5, make_case(Variant.CHI, -0.5, 0))
    assert extremal_condition(hub_tree, make_case(Variant.CHI, -0.5, 1))
    assert extremal_condition(hub_tree, make_case(Variant.OGA, 1.0, 1))
    assert not extremal_condition(hub_tree, make_case(Variant.CHI, 2.0, 1))
    high = build(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    assert extremal_condition(high, make_case(Variant.CHI, 2.0, 2))
    assert not extremal_condition(high, make_case(Variant.CHI, -0.5, 2))


def test_verdict_star_attains_the_bound(k14):
    report = verdict(k14, case_for_graph(k14, Variant.CHI, -0.5))
    assert report.gap == pytest.approx(0.0, abs=1e-12)
    assert report.equality
    assert report.extremal_condition_met
    assert not report.exact
    exact = verdict(k14, case_for_graph(k14, Variant.CHI, 1.0))
    assert exact.exact
    assert exact.gap == 0.0
    assert exact.equality


def test_verdict_cycle_gap(c6):
    report = verdict(c6, case_for_graph(c6, Variant.CHI, -0.5))
    assert report.index_value == pytest.approx(3.0)
    assert report.gap == pytest.approx(0.5040388368136206, abs=1e-12)
    assert not report.equality
    assert not report.extremal_condition_met


def test_verdict_path_first_zagreb_is_exact(p5):
    report = verdict(p5, case_for_graph(p5, Variant.CHI, 1.0))
    assert report.exact
    assert report.index_value == 14
    assert report.bound_value == 20
    assert report.gap == 6
    assert report.graph6


def test_verdict_high_regime_holder():
    G = build(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    report = verdict(G, case_for_graph(G, Variant.CHI, 2.0))
    assert report.exact
    assert report.index_value == 120
    assert report.equality
    assert report.extremal_condition_met


def test_verdict_rejects_disconnected_graphs(two_triangles):
    with pytest.raises(DomainError):
        verdict(two_triangles, case_for_graph(two_triangles, Variant.CHI, -0.5))


def test_verdict_rejects_residue_mismatch(c6):
    with pytest.raises(DomainError):
        verdict(c6, make_case(Variant.CHI, -0.5, 1))


def test_verdict_rejects_small_graphs():
    G = build(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(DomainError):
        verdict(G, make_case(Variant.CHI, -0.5, 1))

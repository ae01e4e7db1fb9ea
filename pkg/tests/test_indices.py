from fractions import Fraction
import math
import random

import pytest

from molex.config import DEFAULT_ALPHA_GRID, DEFAULT_K_GRID
from molex.schemas import IndexKind, IndexSpec, PARAMETRIZED_KINDS, Variant
from molex.services.graph_core import build, canonical_key, edge_census, relabel
from molex.services.indices import (
    InvalidParameterError,
    UndefinedTermError,
    evaluate,
    evaluate_exact,
    evaluate_from_census,
    resolve,
    supports_exact,
    variant_spec,
)
from molex.services.search import enumerate_graphs


def spec(kind, parameter=None):
    return IndexSpec(kind=kind, parameter=parameter)


def test_sum_connectivity_of_star(k14):
    value = evaluate(k14, spec(IndexKind.GENERAL_SUM_CONNECTIVITY, -0.5))
    assert value == pytest.approx(4 / math.sqrt(5), abs=1e-12)
    assert evaluate(k14, spec(IndexKind.SUM_CONNECTIVITY)) == pytest.approx(value, abs=1e-12)


def test_oga_of_path(p5):
    value = evaluate(p5, spec(IndexKind.OGA, 1.0))
    assert value == pytest.approx(2 * (2 * math.sqrt(2) / 3) + 2, abs=1e-12)
    assert value == pytest.approx(3.885618083164127, abs=1e-12)


@pytest.mark.parametrize("kind,expected", [
    (IndexKind.PLATT, 6.0),
    (IndexKind.FIRST_ZAGREB, 14.0),
    (IndexKind.HARMONIC, 7 / 3),
    (IndexKind.RANDIC, math.sqrt(2) + 1),
    (IndexKind.HYPER_ZAGREB, 2 * 9 + 2 * 16),
    (IndexKind.REFORMULATED_ZAGREB, 2 * 1 + 2 * 4),
])
def test_named_indices_of_path(p5, kind, expected):
    assert evaluate(p5, spec(kind)) == pytest.approx(expected, abs=1e-12)


def test_named_indices_of_star(k14):
    assert evaluate(k14, spec(IndexKind.FIRST_ZAGREB)) == pytest.approx(20.0)
    assert evaluate(k14, spec(IndexKind.HARMONIC)) == pytest.approx(1.6)


def test_census_evaluation_matches_edge_sum(p5, k14, c6, hub_tree, two_p3):
    specs = [
        spec(IndexKind.GENERAL_SUM_CONNECTIVITY, 1.5),
        spec(IndexKind.GENERAL_PLATT, -0.7),
        spec(IndexKind.OGA, 0.25),
        spec(IndexKind.RANDIC),
    ]
    for G in (p5, k14, c6, hub_tree, two_p3):
        for s in specs:
            assert evaluate_from_census(edge_census(G), s) == pytest.approx(evaluate(G, s), rel=1e-12)


def test_edgeless_graph_has_zero_index():
    G = build(3, [])
    assert evaluate(G, spec(IndexKind.GENERAL_PLATT, -1.0)) == 0.0
    assert evaluate_from_census(edge_census(G), spec(IndexKind.RANDIC)) == 0.0


def test_platt_negative_power_of_zero_is_undefined():
    k2 = build(2, [(0, 1)])
    with pytest.raises(UndefinedTermError):
        evaluate(k2, spec(IndexKind.GENERAL_PLATT, -1.0))
    assert evaluate(k2, spec(IndexKind.GENERAL_PLATT, 2.0)) == 0.0


def test_exact_values(p5, k14):
    assert evaluate_exact(p5, spec(IndexKind.FIRST_ZAGREB)) == Fraction(14)
    assert evaluate_exact(k14, spec(IndexKind.HARMONIC)) == Fraction(8, 5)
    assert evaluate_exact(p5, spec(IndexKind.GENERAL_PLATT, 2.0)) == Fraction(10)
    assert evaluate_exact(p5, spec(IndexKind.GENERAL_SUM_CONNECTIVITY, -1.0)) == Fraction(2, 3) + Fraction(2, 4)


def test_exact_rejects_irrational_kinds(p5):
    assert not supports_exact(spec(IndexKind.OGA, 1.0))
    assert not supports_exact(spec(IndexKind.SUM_CONNECTIVITY))
    with pytest.raises(InvalidParameterError):
        evaluate_exact(p5, spec(IndexKind.GENERAL_SUM_CONNECTIVITY, 0.5))
    with pytest.raises(InvalidParameterError):
        evaluate_exact(p5, spec(IndexKind.RANDIC))


def test_resolve_named_kinds():
    assert resolve(spec(IndexKind.HARMONIC)) == (Variant.CHI, -1.0, 2)
    assert resolve(spec(IndexKind.REFORMULATED_ZAGREB)) == (Variant.PLATT, 2.0, 1)
    assert variant_spec(Variant.OGA, 0.5) == spec(IndexKind.OGA, 0.5)


def test_spec_validation():
    with pytest.raises(ValueError):
        IndexSpec(kind=IndexKind.GENERAL_SUM_CONNECTIVITY)
    with pytest.raises(ValueError):
        IndexSpec(kind=IndexKind.OGA, parameter=-1.0)
    with pytest.raises(ValueError):
        IndexSpec(kind=IndexKind.FIRST_ZAGREB, parameter=1.0)


def _grid_specs():
    specs = [spec(IndexKind.OGA, k) for k in DEFAULT_K_GRID]
    for a in DEFAULT_ALPHA_GRID:
        specs.append(spec(IndexKind.GENERAL_SUM_CONNECTIVITY, a))
        specs.append(spec(IndexKind.GENERAL_PLATT, a))
    specs.extend(spec(kind) for kind in IndexKind if kind not in PARAMETRIZED_KINDS)
    return specs


@pytest.fixture(scope="module")
def connected_graphs():
    return [G for n in range(3, 8) for G in enumerate_graphs(n)]


def test_census_evaluation_matches_edge_sum_on_every_graph(connected_graphs):
    specs = _grid_specs()
    for G in connected_graphs:
        census = edge_census(G)
        for s in specs:
            assert evaluate_from_census(census, s) == pytest.approx(evaluate(G, s), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("kind", [
    IndexKind.FIRST_ZAGREB,
    IndexKind.PLATT,
    IndexKind.HYPER_ZAGREB,
    IndexKind.REFORMULATED_ZAGREB,
])
def test_integer_kinds_are_exact_on_every_graph(connected_graphs, kind):
    for G in connected_graphs:
        exact = evaluate_exact(G, spec(kind))
        assert exact.denominator == 1
        assert float(exact) == evaluate(G, spec(kind))


def test_harmonic_exact_agrees_on_every_graph(connected_graphs):
    for G in connected_graphs:
        assert float(evaluate_exact(G, spec(IndexKind.HARMONIC))) == pytest.approx(
            evaluate(G, spec(IndexKind.HARMONIC)), rel=1e-12
        )


def test_values_are_relabeling_invariant(connected_graphs):
    rng = random.Random(11)
    specs = _grid_specs()
    for G in connected_graphs:
        permutation = list(range(G.n))
        rng.shuffle(permutation)
        H = relabel(G, permutation)
        assert canonical_key(H) == canonical_key(G)
        for s in specs:
            assert evaluate(H, s) == pytest.approx(evaluate(G, s), rel=1e-12, abs=1e-12)

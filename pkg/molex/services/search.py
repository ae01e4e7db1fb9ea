"""
Exhaustive Search Service

Isomorph-free enumeration of molecular graphs and the exhaustive checks built on it.

Connected graphs are generated by canonical augmentation: a graph on k + 1 vertices is
grown from a graph on k vertices by adding a vertex joined to 1..4 vertices with a free
valence. A child is kept only if the new vertex is its canonical deletion vertex:

- candidates are the vertices whose removal leaves the graph connected, restricted to
  the smallest invariant (degree, sorted neighbor degrees);
- with one candidate it must be the new vertex;
- otherwise the candidate with the largest canonical position is deleted, and the child
  is kept when deleting it gives the parent's isomorphism class again.

Every class therefore has exactly one parent class, and children of one parent are
deduplicated by canonical key. Edge counts outside the requested window are pruned per
level, and the last level is expanded in a process pool when jobs > 1.

Disconnected graphs are the multisets of connected components.

Key Functions:
- enumerate_graphs: one representative per isomorphism class
- exhaustive_verify: every bound case on every connected graph, aggregated
- graph_lemma_sweep: per-graph lemma predicates over every enumerated graph
"""

from functools import partial
from itertools import combinations
from multiprocessing import Pool
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

from molex.config import get_settings
from molex.schemas import (
    BoundCase,
    BoundForm,
    EnumerationSummary,
    EqualityHolder,
    LemmaSweepSummary,
    LemmaViolation,
    Variant,
)
from molex.services.bounds import UnsupportedCaseError, make_case, verdict
from molex.services.graph_core import (
    MAX_DEGREE,
    MolecularGraph,
    articulation_points,
    canonical_key,
    canonical_labeling,
    degree_census,
    disjoint_union,
    edge_census,
)
from molex.services.graph_io import to_graph6
from molex.services.lemmas import (
    check_oga_residual_gap,
    check_residual_gap,
    lemma_regime,
    residual_gap_target,
    structural_inequality,
)
from molex.services.reduction import coefficient, congruence, residual_from_census

logger = logging.getLogger(__name__)

K1 = MolecularGraph(1, ((),))


class EnumerationRangeError(ValueError):
    """n or m outside the range the enumerator accepts."""


# ============================================================================
# Canonical augmentation
# ============================================================================

def _invariant(adjacency, v: int) -> Tuple[int, Tuple[int, ...]]:
    return len(adjacency[v]), tuple(sorted(len(adjacency[u]) for u in adjacency[v]))


def _is_canonical_child(adjacency, parent_key: bytes) -> bool:
    """Whether the last vertex of a connected graph is its canonical deletion vertex."""
    n = len(adjacency)
    v = n - 1
    if n <= 2:
        return True
    cut = articulation_points(adjacency)
    invariants = {u: _invariant(adjacency, u) for u in range(n) if u not in cut}
    smallest = min(invariants.values())
    candidates = [u for u, inv in invariants.items() if inv == smallest]
    if v not in candidates:
        return False
    if len(candidates) == 1:
        return True
    _, order = canonical_labeling(adjacency)
    position = {u: i for i, u in enumerate(order)}
    chosen = max(candidates, key=position.__getitem__)
    if chosen == v:
        return True
    return canonical_key(_delete_vertex(adjacency, chosen)) == parent_key


def _delete_vertex(adjacency, v: int) -> MolecularGraph:
    rename = lambda u: u if u < v else u - 1
    rows = tuple(
        tuple(rename(u) for u in nb if u != v)
        for w, nb in enumerate(adjacency) if w != v
    )
    return MolecularGraph(len(rows), rows)


def _extend(parent: MolecularGraph, neighbors: Sequence[int]) -> MolecularGraph:
    n = parent.n
    new = set(neighbors)
    rows = [nb + ((n,) if u in new else ()) for u, nb in enumerate(parent.adjacency)]
    rows.append(tuple(neighbors))
    return MolecularGraph(n + 1, tuple(rows))


def expand(parent: MolecularGraph, m_window: Tuple[int, int]) -> List[MolecularGraph]:
    """
    Canonical children of a connected graph with edge count inside m_window.

    Children of one parent are pairwise non-isomorphic and appear in a fixed order.
    """
    parent_key = canonical_key(parent)
    free = [u for u in range(parent.n) if len(parent.adjacency[u]) < MAX_DEGREE]
    lo, hi = m_window
    children: Dict[bytes, MolecularGraph] = {}
    for size in range(1, min(MAX_DEGREE, len(free)) + 1):
        m = parent.m + size
        if not lo <= m <= hi:
            continue
        for subset in combinations(free, size):
            child = _extend(parent, subset)
            if not _is_canonical_child(child.adjacency, parent_key):
                continue
            key = canonical_key(child)
            if key not in children:
                children[key] = child
    return list(children.values())


def _edge_window(k: int, n: int, m_lo: int, m_hi: int) -> Tuple[int, int]:
    """Edge counts at level k from which (n, m_lo..m_hi) is still reachable."""
    remaining = n - k
    lo = max(k - 1, m_lo - MAX_DEGREE * remaining)
    hi = min(2 * k, m_hi - remaining)
    return lo, hi


def _connected(n: int, m_lo: int, m_hi: int, jobs: int) -> Iterator[MolecularGraph]:
    level: List[MolecularGraph] = [K1]
    for k in range(2, n + 1):
        window = _edge_window(k, n, m_lo, m_hi)
        if window[0] > window[1]:
            return
        worker = partial(expand, m_window=window)
        if k == n and jobs > 1 and len(level) > 1:
            with Pool(processes=jobs) as pool:
                batches = list(pool.imap(worker, level, chunksize=max(1, len(level) // (4 * jobs))))
        else:
            batches = [worker(parent) for parent in level]
        level = [child for batch in batches for child in batch]
        logger.debug(f"Level {k}: {len(level)} graphs with m in {window}")
    yield from level


def _all_connected(n: int) -> List[MolecularGraph]:
    return list(_connected(n, 0, 2 * n, 1)) if n > 1 else [K1]


def _disconnected(n: int, m_lo: int, m_hi: int, jobs: int) -> Iterator[MolecularGraph]:
    parts = {s: _all_connected(s) for s in range(1, n)}
    parts[n] = list(_connected(n, m_lo, m_hi, jobs)) if n > 1 else [K1]
    # components as (size, index) pairs in non-increasing order
    items = [(s, i) for s in range(n, 0, -1) for i in range(len(parts[s]))]

    def grow(start: int, remaining: int, edges: int, chosen: List[MolecularGraph]) -> Iterator[MolecularGraph]:
        if remaining == 0:
            if m_lo <= edges <= m_hi:
                yield disjoint_union(chosen)
            return
        for idx in range(start, len(items)):
            s, i = items[idx]
            if s > remaining:
                continue
            g = parts[s][i]
            if edges + g.m > m_hi:
                continue
            yield from grow(idx, remaining - s, edges + g.m, chosen + [g])

    yield from grow(0, n, 0, [])


def enumerate_graphs(
    n: int,
    m: Optional[int] = None,
    connected: bool = True,
    jobs: Optional[int] = None,
) -> Iterator[MolecularGraph]:
    """
    One representative per isomorphism class of molecular graphs on n vertices.

    Args:
        n: Vertex count, 1 <= n <= settings.max_order
        m: Edge count; every admissible m when omitted
        connected: Restrict to connected graphs
        jobs: Worker processes for the last level (settings.jobs when omitted)

    Yields:
        Graphs in a deterministic order

    Raises:
        EnumerationRangeError: n or m out of range
    """
    settings = get_settings()
    jobs = settings.jobs if jobs is None else jobs
    if not 1 <= n <= settings.max_order:
        raise EnumerationRangeError(f"n={n} is outside [1, {settings.max_order}]")
    if m is not None and not 0 <= m <= 2 * n:
        raise EnumerationRangeError(f"m={m} is outside [0, {2 * n}]")
    m_lo, m_hi = (0, 2 * n) if m is None else (m, m)
    if connected:
        if n == 1:
            if m_lo == 0:
                yield K1
            return
        yield from _connected(n, max(m_lo, n - 1), m_hi, jobs)
    else:
        yield from _disconnected(n, m_lo, m_hi, jobs)


# ============================================================================
# Exhaustive bound verification
# ============================================================================

def _cases_by_residue(
    cases: Sequence[Tuple[Variant, float]],
    form: BoundForm,
) -> Dict[int, List[BoundCase]]:
    """Cases per residue; (variant, parameter) pairs with no supported residue raise."""
    grouped: Dict[int, List[BoundCase]] = {0: [], 1: [], 2: []}
    for variant, parameter in cases:
        skipped: List[UnsupportedCaseError] = []
        for residue in (0, 1, 2):
            try:
                grouped[residue].append(make_case(variant, parameter, residue, form))
            except UnsupportedCaseError as e:
                skipped.append(e)
        if len(skipped) == 3:
            raise skipped[0]
        for e in skipped:
            logger.warning(f"Skipping {Variant(variant).value} at {parameter:g}: {e}")
    return grouped


def _holder(G: MolecularGraph, graph6: str) -> EqualityHolder:
    return EqualityHolder(
        graph6=graph6,
        canonical_key=canonical_key(G).hex(),
        degree_census=degree_census(G).as_dict(),
        edge_census=edge_census(G).as_dict(),
    )


def exhaustive_verify(
    n_range: Tuple[int, int],
    cases: Sequence[Tuple[Variant, float]],
    tol: Optional[float] = None,
    jobs: Optional[int] = None,
    form: BoundForm = BoundForm.REFINED,
) -> List[EnumerationSummary]:
    """
    Check every case on every connected molecular (n, m)-graph with n in n_range.

    A violation is a gap below -tol (below 0 for exact cases) or a graph where equality
    and the extremal condition disagree. Violations carry the graph6 witness.

    Args:
        n_range: Inclusive (n_lo, n_hi), n_lo >= 5
        cases: (variant, parameter) pairs; residues are derived per (n, m)
        tol: Equality tolerance, settings.tol when omitted
        jobs: Worker processes for enumeration
        form: Refined (default) or leading bounds

    Returns:
        One summary per (n, m, case), ordered by n, m and input case order

    Raises:
        EnumerationRangeError: n_lo < 5
        UnsupportedCaseError: a (variant, parameter) pair with no bound at all
    """
    tol = get_settings().tol if tol is None else tol
    n_lo, n_hi = n_range
    if n_lo < 5 or n_hi < n_lo:
        raise EnumerationRangeError(f"n range {n_range} must satisfy 5 <= n_lo <= n_hi")
    by_residue = _cases_by_residue(cases, form)
    summaries: List[EnumerationSummary] = []
    for n in range(n_lo, n_hi + 1):
        for m in range(n - 1, 2 * n + 1):
            graphs = list(enumerate_graphs(n, m, connected=True, jobs=jobs))
            ids = [to_graph6(G) for G in graphs]
            for case in by_residue[(n + m) % 3]:
                summaries.append(_verify_case(n, m, case, graphs, ids, tol))
        logger.info(f"Verified n={n}")
    unattained = sum(1 for s in summaries if s.graph_count and not s.attained)
    if unattained:
        logger.warning(f"{unattained} of {len(summaries)} bounds are unattained at their (n, m)")
    failures = sum(len(s.violations) for s in summaries)
    if failures:
        logger.error(f"{failures} violations found")
    return summaries


def _verify_case(
    n: int,
    m: int,
    case: BoundCase,
    graphs: List[MolecularGraph],
    ids: List[str],
    tol: float,
) -> EnumerationSummary:
    summary = EnumerationSummary(n=n, m=m, case=case, graph_count=len(graphs))
    values: List[float] = []
    for G, graph6 in zip(graphs, ids):
        report = verdict(G, case, tol)
        summary.bound_value = report.bound_value
        values.append(report.index_value)
        floor = 0.0 if report.exact else -tol
        if report.gap < floor:
            summary.violations.append(f"{graph6}: bound violated by {-report.gap:.3e}")
        if report.equality != report.extremal_condition_met:
            summary.violations.append(
                f"{graph6}: equality={report.equality} but extremal condition={report.extremal_condition_met}"
            )
        if report.equality:
            summary.equality_holders.append(_holder(G, graph6))
    if values:
        summary.min_value = min(values)
        summary.max_value = max(values)
    summary.attained = bool(summary.equality_holders)
    return summary


# ============================================================================
# Graph-level lemma sweep
# ============================================================================

def graph_lemma_sweep(
    n_range: Tuple[int, int],
    connected: bool = True,
    alpha_grid: Optional[Iterable[float]] = None,
    k_grid: Optional[Iterable[float]] = None,
    jobs: Optional[int] = None,
) -> LemmaSweepSummary:
    """
    Residual-gap checks, the structural inequality and the congruence on every graph.

    Graphs with n2 + n3 < 2 skip the residual-gap checks and graphs with n < 5 skip the
    structural inequality. alpha = 1 is dropped from the grid.
    """
    settings = get_settings()
    alphas = [a for a in (settings.alpha_grid if alpha_grid is None else alpha_grid) if a != 1]
    ks = list(settings.k_grid if k_grid is None else k_grid)
    for a in alphas:
        lemma_regime(Variant.CHI, a)
    n_lo, n_hi = n_range
    summary = LemmaSweepSummary(n_range=(n_lo, n_hi), connected_only=connected)
    checked: Dict[str, int] = {}

    def record(clause: str) -> None:
        checked[clause] = checked.get(clause, 0) + 1

    for n in range(n_lo, n_hi + 1):
        for G in enumerate_graphs(n, None, connected=connected, jobs=jobs):
            summary.graph_count += 1
            degrees = degree_census(G)
            edges = edge_census(G)
            found: List[LemmaViolation] = []

            _, consistent = congruence(G.n, G.m, degrees)
            record("congruence")
            if not consistent:
                found.append(LemmaViolation(
                    clause="congruence", parameter=0.0,
                    lhs=float((G.m + G.n) % 3), rhs=float((degrees.n3 - degrees.n2) % 3),
                ))

            if G.n >= 5:
                record("structural")
                if not structural_inequality(G):
                    found.append(LemmaViolation(
                        clause="structural", parameter=0.0,
                        lhs=float(edges[1, 2]), rhs=float(edges[2, 2] + edges[2, 3] + edges[2, 4]),
                    ))

            if degrees.n2 + degrees.n3 >= 2:
                for variant in (Variant.CHI, Variant.PLATT):
                    for a in alphas:
                        clause = f"residual-gap:{variant.value}"
                        record(clause)
                        if not check_residual_gap(G, variant, a):
                            target, _ = residual_gap_target(variant, a)
                            found.append(LemmaViolation(
                                clause=clause, parameter=a,
                                lhs=residual_from_census(edges, variant, a), rhs=target,
                            ))
                for k in ks:
                    record("residual-gap:oga")
                    if not check_oga_residual_gap(G, k):
                        found.append(LemmaViolation(
                            clause="residual-gap:oga", parameter=k,
                            lhs=residual_from_census(edges, Variant.OGA, k),
                            rhs=3 * coefficient(Variant.OGA, (3, 4), k),
                        ))

            if found:
                graph6 = to_graph6(G)
                summary.counterexamples.extend(v.model_copy(update={"graph6": graph6}) for v in found)
        logger.info(f"Lemma sweep n={n}: {summary.graph_count} graphs so far")
    summary.checked = checked
    if summary.counterexamples:
        level = logging.INFO if not connected else logging.ERROR
        logger.log(level, f"{len(summary.counterexamples)} lemma counterexamples (connected_only={connected})")
    return summary

"""
Census Realization Service

Builds connected molecular graphs with a prescribed degree census and, optionally,
prescribed edge counts x_ij, and uses them to construct the equality holders of the
bounds.

Both entry points follow the (result, error_message) convention: infeasibility is an
answer, returned as (None, reason), never raised.

Strategy:
1. Counting arguments reject impossible requests early (pigeonhole on x_ij, too many
   edges among the non-leaf vertices, too few edges for connectivity).
2. Censuses with at most one vertex of degree 2 or 3 are built directly: the special
   vertex s is joined to its degree-4 neighbors, the degree-4 vertices form a path
   plus extra chords, and leaves fill the remaining valences.
3. Anything the pattern does not produce goes to a bounded backtracking search over the
   residual degrees.
"""

from typing import Dict, List, Mapping, Optional, Set, Tuple
import logging

from molex.config import get_settings
from molex.schemas import BoundCase, BoundForm, Regime
from molex.services.bounds import DomainError, verdict
from molex.services.graph_core import (
    DegreeCensus,
    MolecularGraph,
    build,
    degree_census,
    edge_census,
    is_connected,
)

logger = logging.getLogger(__name__)

Constraints = Mapping[Tuple[int, int], int]


class _BudgetExhausted(Exception):
    pass


def _norm(pair: Tuple[int, int]) -> Tuple[int, int]:
    i, j = pair
    return (i, j) if i <= j else (j, i)


# ============================================================================
# Counting arguments
# ============================================================================

def _precheck(census: DegreeCensus, constraints: Dict[Tuple[int, int], int]) -> Optional[str]:
    """Reason the request is impossible, or None when no counting argument applies."""
    n = census.n
    if n == 0:
        return "empty census"
    if census.degree_sum % 2:
        return f"degree sum {census.degree_sum} is odd"
    if census.n0 and n > 1:
        return f"{census.n0} isolated vertices in a connected graph on {n} vertices"
    m = census.degree_sum // 2
    if m < n - 1:
        return f"{m} edges cannot connect {n} vertices"

    for (i, j), x in constraints.items():
        if x < 0:
            return f"x_{i},{j} = {x} is negative"
        if x == 0:
            continue
        ni, nj = census.count(i), census.count(j)
        if i == j:
            cap = min(ni * (ni - 1) // 2, i * ni // 2)
            if x > cap:
                return f"x_{i},{j} = {x} needs more than the {ni} vertices of degree {i} can carry"
        else:
            if x > ni * nj:
                return (
                    f"x_{i},{j} = {x} needs {x} distinct vertex pairs, only {ni * nj} exist with "
                    f"{ni} vertices of degree {i} and {nj} of degree {j}"
                )
            if x > i * ni or x > j * nj:
                return f"x_{i},{j} = {x} exceeds the valence of the degree-{i} or degree-{j} vertices"

    for d in range(1, 5):
        used = sum(x * (2 if i == j else 1) for (i, j), x in constraints.items() if d in (i, j))
        if used > d * census.count(d):
            return f"constraints use {used} edge ends at degree {d}, only {d * census.count(d)} exist"

    # leaves hang off non-leaf vertices, so the rest of the edges lie among those
    core = n - census.n1
    if n > 2 and core:
        core_edges = m - census.n1
        if core_edges > core * (core - 1) // 2:
            return (
                f"{core_edges} edges would lie among the {core} non-leaf vertices, "
                f"at most {core * (core - 1) // 2} fit"
            )
        if core_edges < core - 1:
            return f"{core_edges} edges cannot connect the {core} non-leaf vertices"
    if n > 2 and not core:
        return f"{n} vertices of degree 1 cannot form a connected graph"
    return None


def _matches(G: MolecularGraph, census: DegreeCensus, constraints: Dict[Tuple[int, int], int]) -> bool:
    if degree_census(G) != census or not is_connected(G):
        return False
    edges = edge_census(G)
    return all(edges[pair] == x for pair, x in constraints.items())


# ============================================================================
# Pattern construction
# ============================================================================

def _pattern(census: DegreeCensus, constraints: Dict[Tuple[int, int], int]) -> Optional[MolecularGraph]:
    """Special vertex s (degree 2 or 3, at most one) on a core of degree-4 vertices."""
    if census.n0 or census.n2 + census.n3 > 1 or census.n4 == 0:
        return None
    n1, q = census.n1, census.n4
    m = census.degree_sum // 2
    d = 2 if census.n2 else 3 if census.n3 else 0

    b = 0
    if d:
        if (1, d) in constraints:
            b = d - constraints[(1, d)]
        elif (d, 4) in constraints:
            b = constraints[(d, 4)]
        else:
            b = min(d, q)
        if not 1 <= b <= min(d, q):
            return None
    a = d - b

    # vertices: Q = 0..q-1, s = q when present, leaves after
    s = q if d else None
    core_edges = m - n1
    edges: List[Tuple[int, int]] = [(s, k) for k in range(b)] if d else []
    # s links Q[0..b-1]; a path from Q[b-1] reaches the rest
    edges += [(k, k + 1) for k in range(max(b - 1, 0), q - 1)]
    degree = [0] * q
    for u, v in edges:
        for w in (u, v):
            if w != s:
                degree[w] += 1
    adjacent: Set[Tuple[int, int]] = {(min(u, v), max(u, v)) for u, v in edges if s not in (u, v)}

    extra = core_edges - len(edges)
    if extra < 0:
        return None
    for _ in range(extra):
        free = [
            (degree[u] + degree[v], u, v)
            for u in range(q) for v in range(u + 1, q)
            if (u, v) not in adjacent and degree[u] < 4 and degree[v] < 4
        ]
        if not free:
            return None
        _, u, v = min(free)
        adjacent.add((u, v))
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1

    leaf = q + (1 if d else 0)
    for _ in range(a):
        edges.append((s, leaf))
        leaf += 1
    for k in range(q):
        for _ in range(4 - degree[k]):
            edges.append((k, leaf))
            leaf += 1
    if leaf != census.n:
        return None
    return build(census.n, edges)


# ============================================================================
# Backtracking
# ============================================================================

def _backtrack(census: DegreeCensus, constraints: Dict[Tuple[int, int], int], budget: int) -> Optional[MolecularGraph]:
    """Exhaustive search; raises _BudgetExhausted after budget nodes."""
    if census.n == 1:
        return build(1, []) if census.n0 == 1 else None
    target = [d for d in (4, 3, 2, 1) for _ in range(census.count(d))]
    n = len(target)
    remaining = list(target)
    adj: List[Set[int]] = [set() for _ in range(n)]
    counts: Dict[Tuple[int, int], int] = {}
    nodes = 0

    def closed_component(v: int) -> bool:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            if remaining[u]:
                return False
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) < n

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExhausted()
        v = next((u for u in range(n) if remaining[u]), None)
        if v is None:
            return all(counts.get(pair, 0) == x for pair, x in constraints.items())
        floor = max([u for u in adj[v] if u > v], default=v)
        tried_fresh: Set[int] = set()
        for u in range(floor + 1, n):
            if not remaining[u] or u in adj[v]:
                continue
            if not adj[u]:
                # untouched vertices of one degree are interchangeable
                if target[u] in tried_fresh:
                    continue
                tried_fresh.add(target[u])
            pair = _norm((target[v], target[u]))
            if pair in constraints and counts.get(pair, 0) >= constraints[pair]:
                continue
            adj[v].add(u)
            adj[u].add(v)
            remaining[v] -= 1
            remaining[u] -= 1
            counts[pair] = counts.get(pair, 0) + 1
            ok = not (
                (remaining[v] == 0 and closed_component(v))
                or (remaining[u] == 0 and closed_component(u))
            )
            if ok and search():
                return True
            counts[pair] -= 1
            remaining[v] += 1
            remaining[u] += 1
            adj[v].discard(u)
            adj[u].discard(v)
        return False

    found = search()
    logger.debug(f"Backtracking visited {nodes} nodes")
    if not found:
        return None
    return build(n, ((u, v) for u in range(n) for v in adj[u] if u < v))


# ============================================================================
# Public API
# ============================================================================

def realize_census(
    census: DegreeCensus,
    constraints: Optional[Constraints] = None,
    budget: Optional[int] = None,
) -> Tuple[Optional[MolecularGraph], Optional[str]]:
    """
    Connected molecular graph with a given degree census and edge counts.

    Args:
        census: Target n0..n4 (n0 must be 0 unless n = 1)
        constraints: Required x_ij per degree pair (either order)
        budget: Node budget of the backtracking search (settings.realize_node_budget)

    Returns:
        (graph, None) on success, (None, reason) when no such graph exists or the
        search budget ran out
    """
    budget = get_settings().realize_node_budget if budget is None else budget
    required = {_norm(pair): x for pair, x in (constraints or {}).items()}

    reason = _precheck(census, required)
    if reason:
        logger.info(f"Census {census.as_dict()} infeasible: {reason}")
        return None, reason

    G = _pattern(census, required)
    if G is not None and _matches(G, census, required):
        return G, None

    try:
        G = _backtrack(census, required, budget)
    except _BudgetExhausted:
        logger.warning(f"Realization budget of {budget} nodes exhausted for {census.as_dict()}")
        return None, f"search budget of {budget} nodes exhausted"
    if G is None:
        return None, "no connected graph has this census and these edge counts"
    return G, None


def extremal_target(n: int, m: int, case: BoundCase) -> Tuple[DegreeCensus, Dict[Tuple[int, int], int]]:
    """
    Degree census and edge counts of the equality configuration of a case at (n, m).

    Raises:
        DomainError: n < 5, m outside [n - 1, 2n] or residue mismatch
    """
    if n < 5 or not n - 1 <= m <= 2 * n:
        raise DomainError(f"(n, m) = ({n}, {m}) is outside n >= 5, n - 1 <= m <= 2n")
    residue = (m + n) % 3
    if case.residue != residue:
        raise DomainError(f"residue {case.residue} does not match (m + n) mod 3 = {residue}")
    if residue == 0:
        n4 = (2 * m - n) // 3
        return DegreeCensus(n1=n - n4, n4=n4), {}
    high = case.regime == Regime.HIGH
    if residue == 1:
        n4 = (2 * m - n - 2) // 3
        x13, x34 = (2, 1) if high else (0, 3)
        return DegreeCensus(n1=n - 1 - n4, n3=1, n4=n4), {(1, 3): x13, (3, 4): x34}
    n4 = (2 * m - n - 1) // 3
    x12, x24 = (1, 1) if high else (0, 2)
    return DegreeCensus(n1=n - 1 - n4, n2=1, n4=n4), {(1, 2): x12, (2, 4): x24}


def build_extremal(n: int, m: int, case: BoundCase) -> Tuple[Optional[MolecularGraph], Optional[str]]:
    """
    Graph attaining the bound of a case at (n, m).

    The graph is checked with verdict before it is returned: it must meet the extremal
    condition and sit on the bound.

    Returns:
        (graph, None), or (None, reason) when (n, m) admits no equality holder

    Raises:
        DomainError: see extremal_target
    """
    if case.form == BoundForm.LEADING and case.residue != 0:
        return None, "the leading form is attained only when m + n = 0 (mod 3)"
    census, constraints = extremal_target(n, m, case)
    G, reason = realize_census(census, constraints)
    if G is None:
        return None, reason
    report = verdict(G, case)
    if not (report.equality and report.extremal_condition_met):
        logger.error(f"Constructed graph {report.graph6} misses the bound of {case.label} by {report.gap}")
        return None, f"constructed graph {report.graph6} does not attain the bound"
    return G, None

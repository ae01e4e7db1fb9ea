"""
Molecular Graph Core

Representation, validation, censuses, connectivity and canonical labeling of molecular
graphs (simple undirected graphs with every degree at most 4).

Vertices are dense integers 0..n-1 and adjacency is stored as sorted neighbor tuples.
Graphs are immutable once built, so they can be hashed, cached and sent to worker
processes freely.

Usage Example:
    from molex.services.graph_core import build, degree_census, edge_census, canonical_key

    p5 = build(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    degree_census(p5)            # DegreeCensus(n0=0, n1=2, n2=3, n3=0, n4=0)
    edge_census(p5)[1, 2]        # 2
    canonical_key(p5)            # bytes, equal for every relabeling of P5

Canonical labeling:
    Vertices start partitioned by degree. The partition is refined by the multiset of
    neighbor cells until stable, then the first non-singleton cell is individualized
    vertex by vertex (skipping twins already tried). Each discrete leaf gives a sorted
    edge list under the induced order and the lexicographically largest one is the
    certificate. With degrees capped at 4 and n <= 12 the search stays small.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

import networkx as nx

logger = logging.getLogger(__name__)

MAX_DEGREE = 4

# All degree pairs (i, j), i <= j, of a molecular graph
DEGREE_PAIRS: Tuple[Tuple[int, int], ...] = tuple(
    (i, j) for i in range(1, MAX_DEGREE + 1) for j in range(i, MAX_DEGREE + 1)
)

Adjacency = Tuple[Tuple[int, ...], ...]


# ============================================================================
# Exceptions
# ============================================================================

class GraphError(ValueError):
    """Base class for invalid molecular graph input."""


class LoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same edge is listed twice."""


class DegreeOverflowError(GraphError):
    """Some vertex would have degree above 4."""


class VertexRangeError(GraphError):
    """An edge endpoint lies outside 0..n-1."""


# ============================================================================
# Domain types
# ============================================================================

@dataclass(frozen=True)
class MolecularGraph:
    """
    Simple undirected graph with maximum degree 4.

    Use build() to construct validated instances; the constructor itself trusts its
    input and is used directly only by the enumerator, whose graphs are valid by
    construction.
    """
    n: int
    adjacency: Adjacency

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(nb) for nb in self.adjacency)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v, in increasing order."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield u, v

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class DegreeCensus:
    """Vertex counts by degree. n0 counts isolated vertices."""
    n0: int = 0
    n1: int = 0
    n2: int = 0
    n3: int = 0
    n4: int = 0

    @property
    def n(self) -> int:
        return self.n0 + self.n1 + self.n2 + self.n3 + self.n4

    @property
    def degree_sum(self) -> int:
        return self.n1 + 2 * self.n2 + 3 * self.n3 + 4 * self.n4

    def count(self, degree: int) -> int:
        return (self.n0, self.n1, self.n2, self.n3, self.n4)[degree]

    def as_dict(self) -> Dict[str, int]:
        return {"n0": self.n0, "n1": self.n1, "n2": self.n2, "n3": self.n3, "n4": self.n4}


@dataclass(frozen=True)
class EdgeCensus:
    """
    Edge counts x_ij by end-vertex degrees, one entry per pair in DEGREE_PAIRS.

    Indexing accepts the pair in either order: census[3, 1] == census[1, 3].
    """
    counts: Tuple[int, ...] = (0,) * len(DEGREE_PAIRS)

    @classmethod
    def from_mapping(cls, counts: Dict[Tuple[int, int], int]) -> "EdgeCensus":
        values = [0] * len(DEGREE_PAIRS)
        for (i, j), x in counts.items():
            values[_pair_index(i, j)] = x
        return cls(tuple(values))

    def __getitem__(self, pair: Tuple[int, int]) -> int:
        return self.counts[_pair_index(*pair)]

    @property
    def m(self) -> int:
        return sum(self.counts)

    def items(self) -> Iterator[Tuple[Tuple[int, int], int]]:
        return zip(DEGREE_PAIRS, self.counts)

    def incidence(self, degree: int) -> int:
        """Edge ends at vertices of the given degree; equals degree * n_degree."""
        total = 0
        for (i, j), x in self.items():
            total += x * ((i == degree) + (j == degree))
        return total

    def as_dict(self, nonzero: bool = True) -> Dict[str, int]:
        return {f"{i},{j}": x for (i, j), x in self.items() if x or not nonzero}


_PAIR_INDEX: Dict[Tuple[int, int], int] = {pair: idx for idx, pair in enumerate(DEGREE_PAIRS)}


def _pair_index(i: int, j: int) -> int:
    return _PAIR_INDEX[(i, j) if i <= j else (j, i)]


# ============================================================================
# Construction
# ============================================================================

def build(n: int, edges: Iterable[Tuple[int, int]]) -> MolecularGraph:
    """
    Build and validate a molecular graph.

    Args:
        n: Vertex count (>= 1)
        edges: Vertex pairs, 0-indexed, in any order and orientation

    Returns:
        The validated MolecularGraph

    Raises:
        VertexRangeError: An endpoint is outside 0..n-1 (or n < 1)
        LoopError: A pair (u, u)
        DuplicateEdgeError: The same unordered pair appears twice
        DegreeOverflowError: Some vertex would get more than 4 neighbors
    """
    if n < 1:
        raise VertexRangeError(f"Vertex count must be at least 1, got {n}")
    neighbors: List[set] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopError(f"Loop at vertex {u}")
        if v in neighbors[u]:
            raise DuplicateEdgeError(f"Edge ({u}, {v}) listed twice")
        neighbors[u].add(v)
        neighbors[v].add(u)
        for w in (u, v):
            if len(neighbors[w]) > MAX_DEGREE:
                raise DegreeOverflowError(f"Vertex {w} would have degree {len(neighbors[w])} > {MAX_DEGREE}")
    return MolecularGraph(n, tuple(tuple(sorted(nb)) for nb in neighbors))


def from_networkx(g: nx.Graph) -> MolecularGraph:
    """
    Convert a networkx graph whose nodes are 0..n-1 (as produced by graph6 decoding).

    Raises:
        VertexRangeError: the graph has no vertices
    """
    nodes = sorted(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return build(len(nodes), ((index[u], index[v]) for u, v in g.edges()))


def relabel(G: MolecularGraph, permutation: Sequence[int]) -> MolecularGraph:
    """Graph with vertex v renamed permutation[v]."""
    return build(G.n, ((permutation[u], permutation[v]) for u, v in G.edges()))


def disjoint_union(graphs: Sequence[MolecularGraph]) -> MolecularGraph:
    """Components placed side by side, in the order given."""
    edges: List[Tuple[int, int]] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return build(offset, edges)


# ============================================================================
# Censuses
# ============================================================================

@lru_cache(maxsize=16384)
def degree_census(G: MolecularGraph) -> DegreeCensus:
    """Counts of vertices of degree 0..4."""
    counts = [0] * (MAX_DEGREE + 1)
    for d in G.degrees:
        counts[d] += 1
    return DegreeCensus(*counts)


@lru_cache(maxsize=16384)
def edge_census(G: MolecularGraph) -> EdgeCensus:
    """Counts x_ij of edges joining a degree-i vertex to a degree-j vertex."""
    deg = G.degrees
    values = [0] * len(DEGREE_PAIRS)
    for u, v in G.edges():
        values[_pair_index(deg[u], deg[v])] += 1
    return EdgeCensus(tuple(values))


# ============================================================================
# Connectivity
# ============================================================================

def is_connected(G: MolecularGraph) -> bool:
    """True iff one traversal reaches every vertex (a single vertex is connected)."""
    return nx.is_connected(G.to_networkx())


def components(G: MolecularGraph) -> List[List[int]]:
    """Vertex sets of the connected components, each sorted, ordered by smallest vertex."""
    return sorted((sorted(c) for c in nx.connected_components(G.to_networkx())), key=lambda c: c[0])


def articulation_points(adjacency: Adjacency) -> frozenset:
    """Cut vertices of the graph given by its adjacency tuples."""
    g = nx.Graph()
    g.add_nodes_from(range(len(adjacency)))
    g.add_edges_from((u, v) for u, nb in enumerate(adjacency) for v in nb if u < v)
    return frozenset(nx.articulation_points(g))


# ============================================================================
# Canonical labeling
# ============================================================================

def _refine(adjacency: Adjacency, cells: List[List[int]]) -> List[List[int]]:
    """Split cells by the sorted cell indices of each vertex's neighbors until stable."""
    while True:
        cell_of: Dict[int, int] = {}
        for idx, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = idx
        refined: List[List[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                signature = tuple(sorted(cell_of[u] for u in adjacency[v]))
                groups.setdefault(signature, []).append(v)
            if len(groups) == 1:
                refined.append(cell)
                continue
            changed = True
            for signature in sorted(groups):
                refined.append(groups[signature])
        cells = refined
        if not changed:
            return cells


def _certificate(adjacency: Adjacency, order: Sequence[int]) -> List[Tuple[int, int]]:
    position = {v: i for i, v in enumerate(order)}
    cert = []
    for u, nb in enumerate(adjacency):
        for v in nb:
            if u < v:
                a, b = position[u], position[v]
                cert.append((a, b) if a < b else (b, a))
    cert.sort()
    return cert


def canonical_labeling(adjacency: Adjacency) -> Tuple[bytes, Tuple[int, ...]]:
    """
    Canonical key and canonical order of a graph given by adjacency tuples.

    Args:
        adjacency: Sorted neighbor tuples, vertex ids 0..n-1

    Returns:
        (key, order) where order[i] is the vertex placed at canonical position i and
        key encodes n followed by the canonical edge list.
    """
    n = len(adjacency)
    by_degree: Dict[int, List[int]] = {}
    for v in range(n):
        by_degree.setdefault(len(adjacency[v]), []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]

    best: Optional[List[Tuple[int, int]]] = None
    best_order: Tuple[int, ...] = tuple(range(n))

    def search(cells: List[List[int]]) -> None:
        nonlocal best, best_order
        cells = _refine(adjacency, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            order = [cell[0] for cell in cells]
            cert = _certificate(adjacency, order)
            if best is None or cert > best:
                best, best_order = cert, tuple(order)
            return
        cell = cells[target]
        tried_open = set()
        tried_closed = set()
        for u in cell:
            open_nb = adjacency[u]
            closed_nb = tuple(sorted(open_nb + (u,)))
            # twins give isomorphic subtrees
            if open_nb in tried_open or closed_nb in tried_closed:
                continue
            tried_open.add(open_nb)
            tried_closed.add(closed_nb)
            rest = [w for w in cell if w != u]
            search(cells[:target] + [[u], rest] + cells[target + 1:])

    search(start)
    key = bytes([n] + [x for edge in (best or []) for x in edge])
    return key, best_order


def canonical_key(G: MolecularGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    return canonical_labeling(G.adjacency)[0]


def canonical_form(G: MolecularGraph) -> MolecularGraph:
    """The isomorphic copy of G with vertices renumbered by canonical position."""
    _, order = canonical_labeling(G.adjacency)
    position = [0] * G.n
    for i, v in enumerate(order):
        position[v] = i
    return relabel(G, position)

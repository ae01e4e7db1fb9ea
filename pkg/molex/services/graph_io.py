"""
Graph input/output.

Two text formats are supported:

- graph6, one graph per line, via networkx's encoder/decoder (optional ``>>graph6<<``
  header, lines starting with '>' are skipped);
- a plain adjacency format: a header line ``n m`` followed by ``m`` lines ``u v``
  (0-indexed, whitespace separated). Several graphs may follow one another in a file.

Blank lines and lines starting with '#' are ignored in both formats. Errors carry the
1-based line number of the offending line.
"""

from pathlib import Path
from typing import IO, Iterable, Iterator, List, Tuple, Union
import logging
import sys

import networkx as nx

from molex.services.graph_core import GraphError, MolecularGraph, build, from_networkx

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"


class ParseError(ValueError):
    """Malformed input line. ``line_number`` is 1-based."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


# ============================================================================
# graph6
# ============================================================================

def to_graph6(G: MolecularGraph) -> str:
    """graph6 string of G, without header or trailing newline."""
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(text: str) -> MolecularGraph:
    """
    Decode one graph6 string.

    Raises:
        ValueError: malformed graph6 (networkx error) or a graph that is not molecular
    """
    line = text.strip()
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    try:
        g = nx.from_graph6_bytes(line.encode("ascii"))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
        raise ValueError(f"invalid graph6 '{line}': {e}") from e
    return from_networkx(g)


# ============================================================================
# Readers
# ============================================================================

def _numbered_lines(lines: Iterable[str]) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _looks_like_adjacency(line: str) -> bool:
    tokens = line.split()
    return len(tokens) == 2 and all(t.lstrip("-").isdigit() for t in tokens)


def parse_graphs(lines: Iterable[str]) -> Iterator[MolecularGraph]:
    """
    Parse graphs from text lines, detecting the format from the first content line.

    Raises:
        ParseError: malformed line, wrong edge count, or a non-molecular graph
    """
    numbered = _numbered_lines(lines)
    first = next(numbered, None)
    if first is None:
        return
    if _looks_like_adjacency(first[1]):
        yield from _parse_adjacency(first, numbered)
    else:
        yield from _parse_graph6(first, numbered)


def _parse_graph6(first: Tuple[int, str], rest: Iterator[Tuple[int, str]]) -> Iterator[MolecularGraph]:
    for number, line in _chain(first, rest):
        if line.startswith(">") and not line.startswith(GRAPH6_HEADER):
            continue
        try:
            yield from_graph6(line)
        except ValueError as e:
            raise ParseError(str(e), number) from e


def _parse_adjacency(first: Tuple[int, str], rest: Iterator[Tuple[int, str]]) -> Iterator[MolecularGraph]:
    lines = _chain(first, rest)
    for number, header in lines:
        n, m = _two_ints(header, number)
        if n < 1 or m < 0:
            raise ParseError(f"header needs n >= 1 and m >= 0, got '{header}'", number)
        edges: List[Tuple[int, int]] = []
        last = number
        for _ in range(m):
            entry = next(lines, None)
            if entry is None:
                raise ParseError(f"expected {m} edges, found {len(edges)}", last)
            last, line = entry
            edges.append(_two_ints(line, last))
        try:
            yield build(n, edges)
        except GraphError as e:
            raise ParseError(str(e), last) from e


def _chain(first: Tuple[int, str], rest: Iterator[Tuple[int, str]]) -> Iterator[Tuple[int, str]]:
    yield first
    yield from rest


def _two_ints(line: str, number: int) -> Tuple[int, int]:
    tokens = line.split()
    if len(tokens) != 2:
        raise ParseError(f"expected two integers, got '{line}'", number)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError as e:
        raise ParseError(f"expected two integers, got '{line}'", number) from e


def read_graphs(source: Union[str, Path, IO[str]]) -> List[MolecularGraph]:
    """
    Read every graph from a path, an open text stream, or '-' for standard input.

    Returns:
        Graphs in file order
    """
    if hasattr(source, "read"):
        return list(parse_graphs(source))
    if str(source) == "-":
        return list(parse_graphs(sys.stdin))
    path = Path(source)
    with path.open("r", encoding="utf-8") as handle:
        graphs = list(parse_graphs(handle))
    logger.debug(f"Read {len(graphs)} graphs from {path}")
    return graphs


# ============================================================================
# Writers
# ============================================================================

def format_adjacency(G: MolecularGraph) -> str:
    """Plain adjacency text of G (header plus one edge per line)."""
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def write_graph6(graphs: Iterable[MolecularGraph], stream: IO[str]) -> int:
    """Write one graph6 line per graph; returns the number written."""
    count = 0
    for G in graphs:
        stream.write(to_graph6(G) + "\n")
        count += 1
    return count

"""Undirected simple AS-level graph built from link records."""

from __future__ import annotations

from typing import IO, Iterable, Iterator, Sequence

from .records import LinkRecord

EDGE_MODES = ("endpoints", "path-adjacent", "both")


class UnknownNodeError(KeyError):
    def __init__(self, node: int):
        super().__init__(node)
        self.node = node

    def __str__(self) -> str:
        return f"node {self.node} not in graph"


class AsGraph:
    """Immutable undirected simple graph over AS numbers.

    Adjacency is kept as sorted neighbor tuples for deterministic
    iteration, plus frozensets for O(1) membership tests. The ordered
    edge multiset (record direction, duplicates retained) is kept
    alongside for directional statistics.
    """

    __slots__ = ("_adj", "_adjset", "_ordered_edges", "_edge_count", "_sorted_nodes")

    def __init__(self, adjacency: dict[int, Iterable[int]], ordered_edges: Sequence[tuple[int, int]]):
        self._adj: dict[int, tuple[int, ...]] = {
            node: tuple(sorted(neigh)) for node, neigh in adjacency.items()
        }
        self._adjset: dict[int, frozenset[int]] = {
            node: frozenset(neigh) for node, neigh in self._adj.items()
        }
        self._ordered_edges: tuple[tuple[int, int], ...] = tuple(ordered_edges)
        self._edge_count = sum(len(n) for n in self._adj.values()) // 2
        self._sorted_nodes: tuple[int, ...] = tuple(sorted(self._adj))

    @property
    def nodes(self) -> tuple[int, ...]:
        return self._sorted_nodes

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def ordered_edges(self) -> tuple[tuple[int, int], ...]:
        return self._ordered_edges

    def __contains__(self, node: int) -> bool:
        return node in self._adj

    def degree(self, node: int) -> int:
        try:
            return len(self._adj[node])
        except KeyError:
            raise UnknownNodeError(node) from None

    def neighbors(self, node: int) -> tuple[int, ...]:
        try:
            return self._adj[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def neighbor_set(self, node: int) -> frozenset[int]:
        try:
            return self._adjset[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adjset.get(a, ())

    def edges(self) -> Iterator[tuple[int, int]]:
        """Undirected simple edges (a, b) with a < b, ascending."""
        for a in self._sorted_nodes:
            for b in self._adj[a]:
                if b > a:
                    yield a, b


def build_graph(records: Sequence[LinkRecord], mode: str = "endpoints") -> AsGraph:
    """Build the AS graph from parsed records.

    "endpoints": one edge per record from its source/destination pair.
    "path-adjacent": edges from consecutive AS_Path hop pairs.
    "both": union of the two.
    Self-pairs never produce edges; duplicate undirected edges collapse
    in adjacency while every ordered non-self pair is retained.
    """
    if mode not in EDGE_MODES:
        raise ValueError(f"unknown edge mode: {mode}")
    adj: dict[int, set[int]] = {}
    ordered: list[tuple[int, int]] = []

    def add_node(n: int) -> set[int]:
        s = adj.get(n)
        if s is None:
            s = set()
            adj[n] = s
        return s

    def add_edge(a: int, b: int) -> None:
        add_node(a).add(b)
        add_node(b).add(a)

    use_endpoints = mode in ("endpoints", "both")
    use_path = mode in ("path-adjacent", "both")
    for rec in records:
        if use_endpoints:
            if rec.source == rec.destination:
                add_node(rec.source)
            else:
                ordered.append((rec.source, rec.destination))
                add_edge(rec.source, rec.destination)
        if use_path:
            path = rec.path
            add_node(path[0])
            for a, b in zip(path, path[1:]):
                # normalized paths have no consecutive duplicates
                ordered.append((a, b))
                add_edge(a, b)
    return AsGraph(adj, ordered)


def write_edge_list(graph: AsGraph, sink: IO[str]) -> None:
    """Export "<asn> <asn>" lines (a < b), sorted lexicographically."""
    lines = [f"{a} {b}" for a, b in graph.edges()]
    lines.sort()
    for line in lines:
        sink.write(line + "\n")

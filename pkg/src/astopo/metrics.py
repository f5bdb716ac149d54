"""Degree distribution, joint degree distribution, clustering and triangles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import IO, Optional

from .graph import AsGraph


class UndefinedMetricError(ValueError):
    """Raised when a metric has no defined value (e.g. empty graph)."""


@dataclass(frozen=True)
class DegreeDistribution:
    frequency: dict[int, int]
    probability: dict[int, float]
    total_nodes: int

    def to_dict(self) -> dict:
        return {
            "total_nodes": self.total_nodes,
            "frequency": {str(k): v for k, v in sorted(self.frequency.items())},
            "probability": {str(k): v for k, v in sorted(self.probability.items())},
        }


def degree_distribution(graph: AsGraph) -> DegreeDistribution:
    """Degree -> node count, with probabilities P(k) = count / total nodes.

    Degree-0 nodes are covered like any other.
    """
    freq = Counter(graph.degree(n) for n in graph.nodes)
    total = graph.node_count
    prob = {k: c / total for k, c in freq.items()} if total else {}
    return DegreeDistribution(dict(freq), prob, total)


def degree_histogram(dist: DegreeDistribution) -> list[tuple[int, int, float]]:
    """(degree, count, probability) rows, ascending by degree."""
    return [
        (k, dist.frequency[k], dist.probability[k]) for k in sorted(dist.frequency)
    ]


def write_degree_histogram(dist: DegreeDistribution, sink: IO[str]) -> None:
    sink.write("degree,count,probability\n")
    for k, count, prob in degree_histogram(dist):
        sink.write(f"{k},{count},{round(prob, 6)}\n")


@dataclass(frozen=True)
class JointDegreeDistribution:
    probability: dict[tuple[int, int], float]
    total_edges: int
    ordered: bool

    def to_dict(self) -> dict:
        return {
            "ordered": self.ordered,
            "total_edges": self.total_edges,
            "probability": {
                f"{k},{kp}": p for (k, kp), p in sorted(self.probability.items())
            },
        }


def joint_degree_distribution(graph: AsGraph, ordered: bool = True) -> JointDegreeDistribution:
    """P(k, k') over edges.

    Ordered mode tallies (deg(source), deg(destination)) over the
    ordered edge multiset; unordered mode tallies canonical (min, max)
    degree pairs over undirected simple edges.
    """
    counts: Counter[tuple[int, int]] = Counter()
    if ordered:
        for s, d in graph.ordered_edges:
            counts[(graph.degree(s), graph.degree(d))] += 1
        total = len(graph.ordered_edges)
    else:
        for a, b in graph.edges():
            da, db = graph.degree(a), graph.degree(b)
            counts[(da, db) if da <= db else (db, da)] += 1
        total = graph.edge_count
    prob = {pair: c / total for pair, c in counts.items()} if total else {}
    return JointDegreeDistribution(prob, total, ordered)


def write_jdd(jdd: JointDegreeDistribution, sink: IO[str]) -> None:
    sink.write("k,k_prime,probability\n")
    for (k, kp), p in sorted(jdd.probability.items()):
        sink.write(f"{k},{kp},{round(p, 6)}\n")


def triangles_through(graph: AsGraph, node: int) -> int:
    """Number of edges among the node's neighbors (its triangle count)."""
    mine = graph.neighbor_set(node)
    total = 0
    for u in graph.neighbors(node):
        total += len(mine & graph.neighbor_set(u))
    return total // 2


def local_clustering(graph: AsGraph, node: int) -> float:
    """2*T(i) / (deg(i) * (deg(i) - 1)); 0 for nodes with degree < 2."""
    d = graph.degree(node)
    if d < 2:
        return 0.0
    return 2.0 * triangles_through(graph, node) / (d * (d - 1))


def count_triangles(graph: AsGraph) -> int:
    """Number of unordered node triples forming 3-cycles.

    Per edge, intersects the lower-degree endpoint's neighbor set with
    the other's; each triangle is seen once per edge, so the sum is
    divided by 3.
    """
    total = 0
    for a, b in graph.edges():
        sa, sb = graph.neighbor_set(a), graph.neighbor_set(b)
        if len(sa) > len(sb):
            sa, sb = sb, sa
        total += len(sa & sb)
    return total // 3


def global_clustering(graph: AsGraph, scope: str = "eligible-only") -> float:
    """Mean local clustering coefficient.

    "all-nodes" averages over every node (degree < 2 counted as 0);
    "eligible-only" averages over degree >= 2 nodes only.
    """
    if scope not in ("all-nodes", "eligible-only"):
        raise ValueError(f"unknown clustering scope: {scope}")
    if graph.node_count == 0:
        raise UndefinedMetricError("empty graph")
    if scope == "all-nodes":
        pool = graph.nodes
    else:
        pool = [n for n in graph.nodes if graph.degree(n) >= 2]
        if not pool:
            raise UndefinedMetricError("no nodes with degree >= 2")
    return sum(local_clustering(graph, n) for n in pool) / len(pool)


def transitivity(graph: AsGraph) -> Optional[float]:
    """3 * triangles / connected triples; None when no triples exist.

    A distinct statistic from the mean-of-locals global coefficient.
    """
    triples = sum(d * (d - 1) // 2 for d in (graph.degree(n) for n in graph.nodes))
    if triples == 0:
        return None
    return 3.0 * count_triangles(graph) / triples


def top_k_clustering(graph: AsGraph, k: int) -> list[tuple[int, float]]:
    """k highest local coefficients among degree >= 2 nodes.

    Descending coefficient, ties broken by ascending ASN.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    eligible = [
        (n, local_clustering(graph, n)) for n in graph.nodes if graph.degree(n) >= 2
    ]
    eligible.sort(key=lambda item: (-item[1], item[0]))
    return eligible[:k]


@dataclass(frozen=True)
class ClusteringReport:
    local: dict[int, float]
    global_average: float
    triangle_total: int
    eligible_nodes: int
    transitivity: Optional[float]
    scope: str
    top: list[tuple[int, float]]

    def to_dict(self) -> dict:
        return {
            "global_average": self.global_average,
            "scope": self.scope,
            "triangle_total": self.triangle_total,
            "eligible_nodes": self.eligible_nodes,
            "transitivity": self.transitivity,
            "top_local": [{"asn": n, "coefficient": c} for n, c in self.top],
        }


def clustering_report(
    graph: AsGraph, scope: str = "eligible-only", top_k: int = 10
) -> ClusteringReport:
    local = {n: local_clustering(graph, n) for n in graph.nodes}
    eligible = sum(1 for n in graph.nodes if graph.degree(n) >= 2)
    return ClusteringReport(
        local=local,
        global_average=global_clustering(graph, scope),
        triangle_total=count_triangles(graph),
        eligible_nodes=eligible,
        transitivity=transitivity(graph),
        scope=scope,
        top=top_k_clustering(graph, top_k),
    )

"""Connectivity metrics: components, redundancy, reachability, path lengths, diameter."""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import AsGraph
from .metrics import UndefinedMetricError
from .records import LinkRecord

# Full all-pairs sweeps switch to sampling at this node count.
EXACT_ALL_PAIRS_LIMIT = 10_000
DEFAULT_SAMPLE_SIZE = 100


@dataclass(frozen=True)
class ComponentInventory:
    components: list[frozenset[int]]
    component_count: int
    giant_fraction: float

    def sizes(self) -> list[int]:
        return [len(c) for c in self.components]


def connected_components(graph: AsGraph) -> ComponentInventory:
    """BFS component partition, size-descending then smallest-ASN order."""
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for start in graph.nodes:
        if start in seen:
            continue
        queue = deque([start])
        seen.add(start)
        members = [start]
        while queue:
            node = queue.popleft()
            for nb in graph.neighbors(node):
                if nb not in seen:
                    seen.add(nb)
                    members.append(nb)
                    queue.append(nb)
        comps.append(frozenset(members))
    comps.sort(key=lambda c: (-len(c), min(c)))
    total = graph.node_count
    giant = len(comps[0]) / total if comps else 0.0
    return ComponentInventory(comps, len(comps), giant)


def path_redundancy(records: Sequence[LinkRecord]) -> float:
    """Mean number of distinct observed paths per unordered AS pair.

    Self-records (source == destination) do not form an AS pair and are
    skipped.
    """
    groups: dict[tuple[int, int], set[tuple[int, ...]]] = {}
    for rec in records:
        if rec.is_self_link:
            continue
        key = (rec.source, rec.destination)
        if key[0] > key[1]:
            key = (key[1], key[0])
        groups.setdefault(key, set()).add(rec.path)
    if not groups:
        raise UndefinedMetricError("no AS pairs in record set")
    return sum(len(paths) for paths in groups.values()) / len(groups)


def reachability(graph: AsGraph) -> float:
    """Fraction of node pairs connected by some path, from component sizes."""
    n = graph.node_count
    if n < 2:
        raise UndefinedMetricError("reachability needs at least 2 nodes")
    inventory = connected_components(graph)
    connected_pairs = sum(s * (s - 1) // 2 for s in inventory.sizes())
    all_pairs = n * (n - 1) // 2
    return connected_pairs / all_pairs


def observed_path_length(records: Sequence[LinkRecord], hops: str = "ases") -> float:
    """Mean length of the observed (dataset) AS paths.

    hops "ases" counts the ASes in the normalized path; "edges" counts
    inter-AS links (ASes - 1).
    """
    if hops not in ("ases", "edges"):
        raise ValueError(f"unknown hop counting mode: {hops}")
    if not records:
        raise UndefinedMetricError("no records")
    offset = 0 if hops == "ases" else 1
    return sum(len(rec.path) - offset for rec in records) / len(records)


def bfs_distances(graph: AsGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        d = dist[node] + 1
        for nb in graph.neighbors(node):
            if nb not in dist:
                dist[nb] = d
                queue.append(nb)
    return dist


def _sweep_totals(graph: AsGraph, sources: Sequence[int]) -> tuple[int, int, int]:
    """(distance sum, reachable-pair count, max eccentricity) over sources."""
    total = 0
    pairs = 0
    ecc = 0
    for src in sources:
        dist = bfs_distances(graph, src)
        total += sum(dist.values())
        pairs += len(dist) - 1
        if len(dist) > 1:
            ecc = max(ecc, max(dist.values()))
    return total, pairs, ecc


def _partition(items: Sequence[int], parts: int) -> list[Sequence[int]]:
    chunk = max(1, -(-len(items) // parts))
    return [items[i : i + chunk] for i in range(0, len(items), chunk)]


def _parallel_sweep(
    graph: AsGraph, sources: Sequence[int], threads: int
) -> tuple[int, int, int]:
    if threads <= 1 or len(sources) < 2:
        return _sweep_totals(graph, sources)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(
            pool.map(lambda chunk: _sweep_totals(graph, chunk), _partition(sources, threads))
        )
    total = sum(r[0] for r in results)
    pairs = sum(r[1] for r in results)
    ecc = max(r[2] for r in results)
    return total, pairs, ecc


def average_shortest_path_length(
    graph: AsGraph,
    sample_size: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
) -> float:
    """Mean BFS distance over connected ordered pairs.

    When sample_size is given and the node count exceeds it, BFS runs
    from a seeded uniform sample of source nodes instead of all of them;
    unreachable pairs are always excluded.
    """
    if graph.edge_count == 0:
        raise UndefinedMetricError("graph has no edges")
    sources: Sequence[int] = graph.nodes
    if sample_size is not None and graph.node_count > sample_size:
        rng = random.Random(seed)
        sources = rng.sample(graph.nodes, sample_size)
    total, pairs, _ = _parallel_sweep(graph, sources, threads)
    if pairs == 0:
        raise UndefinedMetricError("no connected pairs among sampled sources")
    return total / pairs


def diameter(
    graph: AsGraph,
    exact: bool = True,
    seed: int = 0,
    threads: int = 1,
    sweeps: int = 8,
) -> int:
    """Maximum eccentricity within the largest component.

    Exact mode BFS-sweeps every node of that component; approximate mode
    runs seeded double-sweep heuristics and returns a lower bound.
    """
    if graph.edge_count == 0:
        raise UndefinedMetricError("graph has no edges")
    giant = max(connected_components(graph).components, key=len)
    members = sorted(giant)
    if exact:
        _, _, ecc = _parallel_sweep(graph, members, threads)
        return ecc
    rng = random.Random(seed)
    best = 0
    for _ in range(sweeps):
        start = members[rng.randrange(len(members))]
        dist = bfs_distances(graph, start)
        far = max(dist, key=dist.__getitem__)
        dist2 = bfs_distances(graph, far)
        best = max(best, max(dist2.values()))
    return best


@dataclass(frozen=True)
class ConnectivityReport:
    redundancy_R: Optional[float]
    reachability: Optional[float]
    observed_path_avg: Optional[float]
    graph_avg_shortest_path: Optional[float]
    diameter: Optional[int]
    diameter_exact: bool
    component_count: int
    component_sizes: list[int]
    unavailable: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "redundancy_R": self.redundancy_R,
            "reachability": self.reachability,
            "observed_path_avg": self.observed_path_avg,
            "graph_avg_shortest_path": self.graph_avg_shortest_path,
            "diameter": self.diameter,
            "diameter_exact": self.diameter_exact,
            "component_count": self.component_count,
            "component_sizes": self.component_sizes,
        }
        if self.unavailable:
            out["unavailable"] = dict(sorted(self.unavailable.items()))
        return out


def connectivity_report(
    graph: AsGraph,
    records: Sequence[LinkRecord],
    *,
    hops: str = "ases",
    exact_diameter: Optional[bool] = None,
    sample_size: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> ConnectivityReport:
    """Aggregate all connectivity metrics; undefined ones become absent
    fields with reasons instead of raising.

    Exact all-pairs sweeps are automatic below 10,000 nodes; larger
    graphs fall back to sampling, which requires an explicit seed.
    """
    unavailable: dict[str, str] = {}

    def attempt(name, fn):
        try:
            return fn()
        except UndefinedMetricError as exc:
            unavailable[name] = str(exc)
            return None

    big = graph.node_count > EXACT_ALL_PAIRS_LIMIT
    if big and seed is None:
        raise ValueError(
            f"graphs over {EXACT_ALL_PAIRS_LIMIT} nodes are sampled; an explicit seed is required"
        )
    eff_seed = seed if seed is not None else 0
    eff_sample = sample_size if sample_size is not None else (DEFAULT_SAMPLE_SIZE if big else None)
    eff_exact = exact_diameter if exact_diameter is not None else not big

    inventory = connected_components(graph)
    return ConnectivityReport(
        redundancy_R=attempt("redundancy_R", lambda: path_redundancy(records)),
        reachability=attempt("reachability", lambda: reachability(graph)),
        observed_path_avg=attempt(
            "observed_path_avg", lambda: observed_path_length(records, hops)
        ),
        graph_avg_shortest_path=attempt(
            "graph_avg_shortest_path",
            lambda: average_shortest_path_length(graph, eff_sample, eff_seed, threads),
        ),
        diameter=attempt(
            "diameter", lambda: diameter(graph, eff_exact, eff_seed, threads)
        ),
        diameter_exact=eff_exact,
        component_count=inventory.component_count,
        component_sizes=inventory.sizes(),
        unavailable=unavailable,
    )

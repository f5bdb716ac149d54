"""Synthetic AS-link corpus generation.

The paper-profile corpus realizes a fixed low-degree sequence exactly
(17,232 nodes, 10,000 edges) via a configuration model with
rejection-and-rewire, so analysis of the output reproduces the target
degree table verbatim.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import IO, Optional, Sequence

from .records import MAX_ASN, Ipv6Prefix, LinkRecord, write_records

PAPER_DEGREE_SEQUENCE = {1: 14757, 2: 2199, 3: 261, 4: 13, 5: 2}
PAPER_NODE_COUNT = 17_232
PAPER_EDGE_COUNT = 10_000

PROFILES = ("paper-profile", "random-uniform", "configuration-model")

REWIRE_BUDGET_FACTOR = 100


class GenerationError(ValueError):
    """Unrealizable generator configuration."""


@dataclass(frozen=True)
class GeneratorConfig:
    profile: str = "paper-profile"
    node_count: Optional[int] = None
    edge_count: Optional[int] = None
    degree_sequence: Optional[dict[int, int]] = None
    path_length_range: tuple[int, int] = (1, 5)
    seed: int = 0
    consistent_paths: bool = False

    def resolved(self) -> "GeneratorConfig":
        """Validate and fill in profile-implied parameters."""
        if self.profile not in PROFILES:
            raise GenerationError(f"unknown profile: {self.profile}")
        lo, hi = self.path_length_range
        if lo < 1 or hi < lo:
            raise GenerationError(f"bad path length range: {self.path_length_range}")
        if self.profile == "paper-profile":
            return GeneratorConfig(
                profile=self.profile,
                node_count=PAPER_NODE_COUNT,
                edge_count=PAPER_EDGE_COUNT,
                degree_sequence=dict(PAPER_DEGREE_SEQUENCE),
                path_length_range=self.path_length_range,
                seed=self.seed,
                consistent_paths=self.consistent_paths,
            )
        if self.profile == "configuration-model":
            if not self.degree_sequence:
                raise GenerationError("configuration-model requires a degree sequence")
            nodes = sum(self.degree_sequence.values())
            mass = sum(k * c for k, c in self.degree_sequence.items())
            if mass % 2 != 0:
                raise GenerationError(f"degree mass {mass} is odd (handshake violation)")
            edges = mass // 2
            if self.edge_count is not None and self.edge_count != edges:
                raise GenerationError(
                    f"edge_count {self.edge_count} inconsistent with degree mass {mass}"
                )
            if self.node_count is not None and self.node_count != nodes:
                raise GenerationError(
                    f"node_count {self.node_count} inconsistent with degree sequence ({nodes} nodes)"
                )
            return GeneratorConfig(
                profile=self.profile,
                node_count=nodes,
                edge_count=edges,
                degree_sequence=dict(self.degree_sequence),
                path_length_range=self.path_length_range,
                seed=self.seed,
                consistent_paths=self.consistent_paths,
            )
        # random-uniform
        if not self.node_count or not self.edge_count:
            raise GenerationError("random-uniform requires node_count and edge_count")
        max_edges = self.node_count * (self.node_count - 1) // 2
        if self.edge_count > max_edges:
            raise GenerationError(
                f"{self.edge_count} edges impossible on {self.node_count} nodes"
            )
        return self


def erdos_gallai_feasible(degrees: Sequence[int]) -> bool:
    """Check a degree sequence is realizable as a simple graph."""
    from bisect import bisect_left

    degs = sorted(degrees, reverse=True)
    n = len(degs)
    if n == 0:
        return True
    if degs[0] >= n or degs[-1] < 0:
        return False
    if sum(degs) % 2 != 0:
        return False
    cum = [0] * (n + 1)
    for i, d in enumerate(degs):
        cum[i + 1] = cum[i] + d
    asc = degs[::-1]
    prefix = 0
    for k in range(1, n + 1):
        prefix += degs[k - 1]
        # among degs[k:], elements >= k contribute k each, the rest their value
        ge_k = n - bisect_left(asc, k)
        count = max(0, ge_k - k)
        small_start = max(k, ge_k)
        tail = count * k + (cum[n] - cum[small_start])
        if prefix > k * (k - 1) + tail:
            return False
        if degs[k - 1] < k:
            break
    return True


def _realize_degree_sequence(
    degrees: Sequence[int], rng: random.Random
) -> list[tuple[int, int]]:
    """Pair degree stubs into a simple graph with the exact sequence.

    Self-loops and duplicate edges from the initial pairing are repaired
    by swapping with randomly chosen good edges, within a bounded
    attempt budget.
    """
    if not erdos_gallai_feasible(degrees):
        raise GenerationError("degree sequence fails Erdős–Gallai feasibility")
    stubs: list[int] = []
    for node, deg in enumerate(degrees):
        stubs.extend([node] * deg)
    rng.shuffle(stubs)
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    bad: list[tuple[int, int]] = []
    for i in range(0, len(stubs), 2):
        u, v = stubs[i], stubs[i + 1]
        key = (u, v) if u < v else (v, u)
        if u == v or key in seen:
            bad.append((u, v))
        else:
            seen.add(key)
            edges.append(key)
    budget = REWIRE_BUDGET_FACTOR * (len(stubs) // 2)
    attempts = 0
    while bad:
        attempts += 1
        if attempts > budget:
            raise GenerationError(
                "rewiring budget exhausted while realizing degree sequence"
            )
        u, v = bad.pop()
        if not edges:
            raise GenerationError("degree sequence not realizable by rewiring")
        j = rng.randrange(len(edges))
        x, y = edges[j]
        if rng.random() < 0.5:
            x, y = y, x
        # swap stub partners: (u,v),(x,y) -> (u,x),(v,y)
        k1 = (u, x) if u < x else (x, u)
        k2 = (v, y) if v < y else (y, v)
        if u == x or v == y or k1 in seen or k2 in seen or k1 == k2:
            bad.append((u, v))
            continue
        seen.discard((x, y) if x < y else (y, x))
        edges[j] = k1
        seen.add(k1)
        edges.append(k2)
        seen.add(k2)
    return edges


def _random_uniform_edges(
    n: int, m: int, rng: random.Random
) -> list[tuple[int, int]]:
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    return edges


def _path_lengths(count: int, lo: int, hi: int, rng: random.Random) -> list[int]:
    """Uniform lengths in [lo, hi], with every value guaranteed present
    when the corpus is large enough to cover the span."""
    lengths = [rng.randint(lo, hi) for _ in range(count)]
    span = list(range(lo, hi + 1))
    if count >= len(span):
        rng.shuffle(span)
        lengths[: len(span)] = span
    return lengths


def _random_path(
    length: int, rng: random.Random, source: int, destination: int, consistent: bool
) -> tuple[int, ...]:
    if consistent:
        length = max(length, 2)
        middle = []
        prev = source
        for _ in range(length - 2):
            hop = rng.randint(1, MAX_ASN)
            while hop == prev:
                hop = rng.randint(1, MAX_ASN)
            middle.append(hop)
            prev = hop
        if middle and middle[-1] == destination:
            middle[-1] = destination - 1 if destination > 1 else destination + 1
        return (source, *middle, destination)
    hops: list[int] = []
    prev = None
    for _ in range(length):
        hop = rng.randint(1, MAX_ASN)
        while hop == prev:
            hop = rng.randint(1, MAX_ASN)
        hops.append(hop)
        prev = hop
    return tuple(hops)


def generate(config: GeneratorConfig) -> list[LinkRecord]:
    """Generate one record per edge; fully determined by the seed."""
    cfg = config.resolved()
    rng = random.Random(cfg.seed)

    if cfg.profile == "random-uniform":
        n, m = cfg.node_count, cfg.edge_count
        index_edges = _random_uniform_edges(n, m, rng)
    else:
        degrees: list[int] = []
        for k in sorted(cfg.degree_sequence):
            degrees.extend([k] * cfg.degree_sequence[k])
        n = len(degrees)
        index_edges = _realize_degree_sequence(degrees, rng)
        m = len(index_edges)

    asns = rng.sample(range(1, MAX_ASN + 1), n)
    lo, hi = cfg.path_length_range
    lengths = _path_lengths(m, lo, hi, rng)

    prefixes: set[int] = set()
    records: list[LinkRecord] = []
    for (u, v), length in zip(index_edges, lengths):
        src, dst = asns[u], asns[v]
        if rng.random() < 0.5:
            src, dst = dst, src
        addr = rng.getrandbits(128)
        while addr in prefixes:
            addr = rng.getrandbits(128)
        prefixes.add(addr)
        path = _random_path(length, rng, src, dst, cfg.consistent_paths)
        records.append(
            LinkRecord(source=src, destination=dst, prefix=Ipv6Prefix(addr), path=path)
        )
    return records


def write_dataset(records: Sequence[LinkRecord], sink: IO[str]) -> None:
    """Header row plus one text row per record; parses back losslessly."""
    write_records(records, sink)

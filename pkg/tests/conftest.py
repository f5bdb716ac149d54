import random

import pytest

from astopo.graph import AsGraph
from astopo.records import Ipv6Prefix, LinkRecord

# the five sample rows of the reference dataset format
TABLE1_ROWS = """\
AS_Source,AS_Destination,IPv6_Prefix,AS_Path
63574,48603,817e:5f37:b85c:4c07:92a8:d19c:3668:d7cd,52821 17666 54520 21712 60977
1380,20972,752b:66ab:f5ff:fc37:fd73:4c0:4e9c:4e50,32431 51320 58325 23574
55690,10380,1a9b:6e0d:3fbb:f851:d50e:720:7074:7fb,18085 5945 18156 11599 5905
40447,5090,3c6:af39:ee53:5e3d:8429:90d0:a58a:5615,62279
28304,29994,919f:9c72:1ad4:eb4f:d05d:7588:d79a:2fe3,53053 16947 9854 38728 50542
"""


@pytest.fixture
def table1_lines():
    return TABLE1_ROWS.splitlines()


def graph_from_edges(edges, extra_nodes=()):
    """Build an AsGraph directly from an undirected edge list."""
    adj = {}
    ordered = []
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
        ordered.append((a, b))
    for n in extra_nodes:
        adj.setdefault(n, set())
    return AsGraph(adj, ordered)


def random_graph(seed, max_nodes=64):
    """Seeded Erdos-Renyi-style graph; returns (graph, edge set, nodes)."""
    rng = random.Random(seed)
    n = rng.randint(2, max_nodes)
    nodes = rng.sample(range(1, 100_000), n)
    p = rng.choice([0.02, 0.05, 0.1, 0.2, 0.4])
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((nodes[i], nodes[j]))
    return graph_from_edges(edges, extra_nodes=nodes), set(map(frozenset, edges)), nodes


def make_record(src, dst, path=None, prefix=None):
    return LinkRecord(
        source=src,
        destination=dst,
        prefix=prefix if prefix is not None else Ipv6Prefix((src << 32) | dst),
        path=tuple(path) if path else (src, dst),
    )

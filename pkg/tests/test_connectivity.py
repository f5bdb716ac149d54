import itertools
import math

import numpy as np
import pytest

from astopo.connectivity import (
    average_shortest_path_length,
    bfs_distances,
    connected_components,
    connectivity_report,
    diameter,
    observed_path_length,
    path_redundancy,
    reachability,
)
from astopo.metrics import UndefinedMetricError
from astopo.records import parse_records
from conftest import TABLE1_ROWS, graph_from_edges, make_record, random_graph


def closure_matrix(edge_set, nodes):
    """Transitive closure oracle via boolean matrix powers."""
    n = len(nodes)
    index = {node: i for i, node in enumerate(nodes)}
    mat = np.eye(n, dtype=bool)
    for e in edge_set:
        a, b = tuple(e)
        mat[index[a], index[b]] = mat[index[b], index[a]] = True
    reach = mat
    while True:
        nxt = reach | (reach @ reach)
        if (nxt == reach).all():
            return reach
        reach = nxt


def distance_matrix(edge_set, nodes):
    """All-pairs shortest paths oracle via repeated min-plus squaring."""
    n = len(nodes)
    index = {node: i for i, node in enumerate(nodes)}
    inf = float("inf")
    dist = np.full((n, n), inf)
    np.fill_diagonal(dist, 0.0)
    for e in edge_set:
        a, b = tuple(e)
        dist[index[a], index[b]] = dist[index[b], index[a]] = 1.0
    for _ in range(max(1, math.ceil(math.log2(max(n, 2))))):
        dist = np.minimum(dist, (dist[:, :, None] + dist[None, :, :]).min(axis=1))
    return dist


class TestConnectedComponents:
    def test_triangle_plus_isolated(self):
        g = graph_from_edges([(1, 2), (2, 3), (1, 3)], extra_nodes=[9])
        inv = connected_components(g)
        assert inv.component_count == 2
        assert inv.sizes() == [3, 1]
        assert inv.giant_fraction == 0.75

    def test_connected_path(self):
        g = graph_from_edges([(i, i + 1) for i in range(1, 10)])
        assert connected_components(g).component_count == 1

    def test_empty_graph(self):
        inv = connected_components(graph_from_edges([]))
        assert inv.component_count == 0
        assert inv.components == []

    def test_deterministic_ordering(self):
        g = graph_from_edges([(5, 6), (1, 2), (1, 3)], extra_nodes=[9])
        inv = connected_components(g)
        assert inv.sizes() == [3, 2, 1]
        assert min(inv.components[1]) == 5

    def test_components_partition_nodes(self):
        g, _, _ = random_graph(11)
        inv = connected_components(g)
        union = set()
        for comp in inv.components:
            assert not (union & comp)
            union |= comp
        assert union == set(g.nodes)

    @pytest.mark.parametrize("seed", range(15))
    def test_matches_closure_oracle(self, seed):
        g, edge_set, nodes = random_graph(seed + 100, max_nodes=50)
        reach = closure_matrix(edge_set, nodes)
        index = {node: i for i, node in enumerate(nodes)}
        oracle = set()
        for comp_row in {tuple(row) for row in reach}:
            oracle.add(frozenset(n for n in nodes if comp_row[index[n]]))
        assert set(connected_components(g).components) == oracle


class TestPathRedundancy:
    def test_every_pair_once(self):
        records = [make_record(1, 2), make_record(3, 4)]
        assert path_redundancy(records) == 1.0

    def test_two_paths_one_pair(self):
        records = [
            make_record(1, 2, path=[5]),
            make_record(1, 2, path=[6, 7]),
            make_record(3, 4, path=[8]),
        ]
        assert path_redundancy(records) == 1.5

    def test_duplicate_identical_paths_count_once(self):
        records = [make_record(1, 2, path=[5]), make_record(1, 2, path=[5])]
        assert path_redundancy(records) == 1.0

    def test_direction_ignored(self):
        records = [make_record(1, 2, path=[5]), make_record(2, 1, path=[6])]
        assert path_redundancy(records) == 2.0

    def test_order_invariant(self):
        records = [
            make_record(1, 2, path=[5]),
            make_record(1, 2, path=[6]),
            make_record(3, 4, path=[7]),
        ]
        assert path_redundancy(records) == path_redundancy(records[::-1])

    def test_empty_undefined(self):
        with pytest.raises(UndefinedMetricError):
            path_redundancy([])


class TestReachability:
    def test_connected_graph(self):
        g = graph_from_edges([(1, 2), (2, 3)])
        assert reachability(g) == 1.0

    def test_two_components_of_two(self):
        g = graph_from_edges([(1, 2), (3, 4)])
        assert reachability(g) == pytest.approx(1 / 3)

    def test_three_plus_one(self):
        g = graph_from_edges([(1, 2), (2, 3)], extra_nodes=[4])
        assert reachability(g) == 0.5

    def test_fewer_than_two_nodes(self):
        with pytest.raises(UndefinedMetricError):
            reachability(graph_from_edges([], extra_nodes=[1]))

    def test_adding_isolated_node_decreases(self):
        g = graph_from_edges([(1, 2), (2, 3)])
        g2 = graph_from_edges([(1, 2), (2, 3)], extra_nodes=[4])
        assert reachability(g2) < reachability(g)

    @pytest.mark.parametrize("seed", range(15))
    def test_equals_finite_pair_fraction(self, seed):
        g, edge_set, nodes = random_graph(seed + 200, max_nodes=50)
        dist = distance_matrix(edge_set, nodes)
        n = len(nodes)
        finite = sum(
            1 for i, j in itertools.combinations(range(n), 2) if dist[i, j] < math.inf
        )
        assert reachability(g) == pytest.approx(finite / (n * (n - 1) / 2))


class TestObservedPathLength:
    def test_table1_rows(self):
        records, _ = parse_records(TABLE1_ROWS.splitlines())
        assert observed_path_length(records) == 4.0

    def test_all_length_three(self):
        records = [make_record(i, i + 1, path=[7, 8, 9]) for i in range(1, 5)]
        assert observed_path_length(records) == 3.0

    def test_single_one_hop(self):
        assert observed_path_length([make_record(1, 2, path=[5])]) == 1.0

    def test_edges_mode(self):
        records = [make_record(1, 2, path=[7, 8, 9])]
        assert observed_path_length(records, "edges") == 2.0

    def test_empty_undefined(self):
        with pytest.raises(UndefinedMetricError):
            observed_path_length([])

    def test_hop_mass_identity(self):
        records, _ = parse_records(TABLE1_ROWS.splitlines())
        total = observed_path_length(records) * len(records)
        assert total == sum(len(r.path) for r in records)


class TestAverageShortestPath:
    def test_path_of_three(self):
        g = graph_from_edges([(1, 2), (2, 3)])
        assert average_shortest_path_length(g) == pytest.approx(4 / 3)

    def test_complete_graph(self):
        g = graph_from_edges(list(itertools.combinations(range(1, 6), 2)))
        assert average_shortest_path_length(g) == 1.0

    def test_star(self):
        g = graph_from_edges([(9, leaf) for leaf in (1, 2, 3)])
        assert average_shortest_path_length(g) == 1.5

    def test_unreachable_pairs_excluded(self):
        g = graph_from_edges([(1, 2), (3, 4)])
        assert average_shortest_path_length(g) == 1.0

    def test_no_edges_undefined(self):
        with pytest.raises(UndefinedMetricError):
            average_shortest_path_length(graph_from_edges([], extra_nodes=[1, 2]))

    def test_full_computation_seed_independent(self):
        g, _, _ = random_graph(7)
        assert average_shortest_path_length(g, seed=1) == average_shortest_path_length(
            g, seed=99
        )

    def test_sampling_deterministic(self):
        g, _, _ = random_graph(8, max_nodes=40)
        a = average_shortest_path_length(g, sample_size=5, seed=3)
        b = average_shortest_path_length(g, sample_size=5, seed=3)
        assert a == b

    def test_threads_do_not_change_result(self):
        g, _, _ = random_graph(9, max_nodes=50)
        assert average_shortest_path_length(g, threads=1) == average_shortest_path_length(
            g, threads=4
        )


class TestDiameter:
    def test_path_of_eight(self):
        g = graph_from_edges([(i, i + 1) for i in range(1, 8)])
        assert diameter(g) == 7

    def test_complete_graph(self):
        g = graph_from_edges(list(itertools.combinations(range(1, 5), 2)))
        assert diameter(g) == 1

    def test_largest_component_only(self):
        g = graph_from_edges([(1, 2), (2, 3), (3, 4), (10, 11)])
        assert diameter(g) == 3

    def test_no_edges_undefined(self):
        with pytest.raises(UndefinedMetricError):
            diameter(graph_from_edges([], extra_nodes=[1]))

    @pytest.mark.parametrize("seed", range(15))
    def test_exact_matches_all_pairs_oracle(self, seed):
        g, edge_set, nodes = random_graph(seed + 300, max_nodes=40)
        if g.edge_count == 0:
            return
        giant = max(connected_components(g).components, key=len)
        dist = distance_matrix(edge_set, nodes)
        index = {node: i for i, node in enumerate(nodes)}
        oracle = max(
            dist[index[a], index[b]] for a in giant for b in giant
        )
        assert diameter(g, exact=True) == int(oracle)

    @pytest.mark.parametrize("seed", range(10))
    def test_approximate_never_exceeds_exact(self, seed):
        g, _, _ = random_graph(seed + 400, max_nodes=40)
        if g.edge_count == 0:
            return
        assert diameter(g, exact=False, seed=seed) <= diameter(g, exact=True)


class TestBfsDistances:
    def test_simple_path(self):
        g = graph_from_edges([(1, 2), (2, 3)])
        assert bfs_distances(g, 1) == {1: 0, 2: 1, 3: 2}


class TestConnectivityReport:
    def test_single_edge_dataset(self):
        records = [make_record(1, 2, path=[5])]
        g = graph_from_edges([(1, 2)])
        rep = connectivity_report(g, records)
        assert rep.redundancy_R == 1.0
        assert rep.reachability == 1.0
        assert rep.observed_path_avg == 1.0
        assert rep.diameter == 1
        assert rep.component_count == 1
        assert not rep.unavailable

    def test_empty_dataset_absent_fields(self):
        rep = connectivity_report(graph_from_edges([]), [])
        assert rep.redundancy_R is None
        assert rep.reachability is None
        assert rep.diameter is None
        assert set(rep.unavailable) >= {"redundancy_R", "reachability", "diameter"}

    def test_diameter_at_least_floor_of_average(self):
        g, _, _ = random_graph(21)
        if g.edge_count == 0:
            return
        rep = connectivity_report(g, [])
        assert rep.diameter >= math.floor(rep.graph_avg_shortest_path)

    def test_to_dict_stable_keys(self):
        rep = connectivity_report(graph_from_edges([(1, 2)]), [make_record(1, 2)])
        assert list(rep.to_dict()) == [
            "redundancy_R",
            "reachability",
            "observed_path_avg",
            "graph_avg_shortest_path",
            "diameter",
            "diameter_exact",
            "component_count",
            "component_sizes",
        ]

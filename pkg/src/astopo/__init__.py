"""astopo: AS-level IPv6 topology analysis toolkit."""

__version__ = "0.1.0"

from .connectivity import (
    ComponentInventory,
    ConnectivityReport,
    average_shortest_path_length,
    connected_components,
    connectivity_report,
    diameter,
    observed_path_length,
    path_redundancy,
    reachability,
)
from .estimator import AsGraphBuilder, TopologyAnalyzer, check_records
from .generator import GenerationError, GeneratorConfig, generate, write_dataset
from .graph import AsGraph, UnknownNodeError, build_graph, write_edge_list
from .metrics import (
    ClusteringReport,
    DegreeDistribution,
    JointDegreeDistribution,
    UndefinedMetricError,
    clustering_report,
    count_triangles,
    degree_distribution,
    degree_histogram,
    global_clustering,
    joint_degree_distribution,
    local_clustering,
    top_k_clustering,
    transitivity,
)
from .records import (
    DatasetStats,
    FormatConfig,
    Ipv6Prefix,
    LinkRecord,
    RowError,
    StrictParseError,
    basic_stats,
    normalize_path,
    parse_records,
    serialize_record,
    write_records,
)

__all__ = [
    "AsGraph",
    "AsGraphBuilder",
    "ClusteringReport",
    "ComponentInventory",
    "ConnectivityReport",
    "DatasetStats",
    "DegreeDistribution",
    "FormatConfig",
    "GenerationError",
    "GeneratorConfig",
    "Ipv6Prefix",
    "JointDegreeDistribution",
    "LinkRecord",
    "RowError",
    "StrictParseError",
    "TopologyAnalyzer",
    "UndefinedMetricError",
    "UnknownNodeError",
    "average_shortest_path_length",
    "basic_stats",
    "build_graph",
    "check_records",
    "clustering_report",
    "connected_components",
    "connectivity_report",
    "count_triangles",
    "degree_distribution",
    "degree_histogram",
    "diameter",
    "generate",
    "global_clustering",
    "joint_degree_distribution",
    "local_clustering",
    "normalize_path",
    "observed_path_length",
    "parse_records",
    "path_redundancy",
    "reachability",
    "serialize_record",
    "top_k_clustering",
    "transitivity",
    "write_dataset",
    "write_edge_list",
    "write_records",
]

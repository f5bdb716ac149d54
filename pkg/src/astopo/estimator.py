"""Scikit-learn style estimators wrapping the topology analysis pipeline."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import connectivity as conn
from . import metrics
from .graph import EDGE_MODES, AsGraph, build_graph
from .records import Ipv6Prefix, LinkRecord, basic_stats, normalize_path, parse_asn


def check_records(X: Iterable) -> list[LinkRecord]:
    """Validate/coerce input into a list of LinkRecord.

    Accepts LinkRecord instances or (source, destination, prefix, path)
    tuples, where prefix may be a string and path a string or an ASN
    sequence.
    """
    out: list[LinkRecord] = []
    for i, item in enumerate(X):
        if isinstance(item, LinkRecord):
            out.append(item)
            continue
        try:
            src, dst, prefix, path = item
        except (TypeError, ValueError):
            raise TypeError(
                f"item {i}: expected LinkRecord or 4-tuple, got {type(item).__name__}"
            ) from None
        if isinstance(prefix, str):
            prefix = Ipv6Prefix.parse(prefix)
        if isinstance(path, str):
            hops = [parse_asn(p) for p in path.split()]
        else:
            hops = [int(h) for h in path]
        if not hops:
            raise ValueError(f"item {i}: empty AS path")
        out.append(
            LinkRecord(
                source=parse_asn(str(src)),
                destination=parse_asn(str(dst)),
                prefix=prefix,
                path=normalize_path(hops),
            )
        )
    return out


class AsGraphBuilder(TransformerMixin, BaseEstimator):
    """Transformer turning link records into an AsGraph."""

    def __init__(self, edge_mode: str = "endpoints"):
        self.edge_mode = edge_mode

    def fit(self, X, y=None):
        if self.edge_mode not in EDGE_MODES:
            raise ValueError(f"edge_mode must be one of {EDGE_MODES}")
        self.n_records_ = len(check_records(X))
        return self

    def transform(self, X) -> AsGraph:
        if self.edge_mode not in EDGE_MODES:
            raise ValueError(f"edge_mode must be one of {EDGE_MODES}")
        return build_graph(check_records(X), self.edge_mode)


class TopologyAnalyzer(BaseEstimator):
    """Fit on link records; expose every topology metric as an attribute.

    After fit: graph_, stats_, degree_distribution_,
    joint_degree_distribution_, clustering_, components_, connectivity_.
    """

    def __init__(
        self,
        edge_mode: str = "endpoints",
        as_count_mode: str = "endpoints",
        jdd_ordered: bool = True,
        clustering_scope: str = "eligible-only",
        hops: str = "ases",
        exact_diameter: Optional[bool] = None,
        sample_size: Optional[int] = None,
        seed: Optional[int] = None,
        threads: int = 1,
        top_k: int = 10,
    ):
        self.edge_mode = edge_mode
        self.as_count_mode = as_count_mode
        self.jdd_ordered = jdd_ordered
        self.clustering_scope = clustering_scope
        self.hops = hops
        self.exact_diameter = exact_diameter
        self.sample_size = sample_size
        self.seed = seed
        self.threads = threads
        self.top_k = top_k

    def fit(self, X, y=None):
        records = check_records(X)
        self.records_ = records
        self.graph_ = build_graph(records, self.edge_mode)
        self.stats_ = basic_stats(records, self.as_count_mode)
        self.degree_distribution_ = metrics.degree_distribution(self.graph_)
        self.joint_degree_distribution_ = metrics.joint_degree_distribution(
            self.graph_, self.jdd_ordered
        )
        if self.graph_.node_count:
            try:
                self.clustering_ = metrics.clustering_report(
                    self.graph_, self.clustering_scope, self.top_k
                )
            except metrics.UndefinedMetricError:
                self.clustering_ = None
        else:
            self.clustering_ = None
        self.components_ = conn.connected_components(self.graph_)
        self.connectivity_ = conn.connectivity_report(
            self.graph_,
            records,
            hops=self.hops,
            exact_diameter=self.exact_diameter,
            sample_size=self.sample_size,
            seed=self.seed,
            threads=self.threads,
        )
        return self

    def report(self) -> dict:
        """Full analysis as one JSON-serializable document."""
        check_is_fitted(self, "graph_")
        return {
            "stats": self.stats_.to_dict(),
            "graph": {
                "node_count": self.graph_.node_count,
                "edge_count": self.graph_.edge_count,
                "ordered_edge_count": len(self.graph_.ordered_edges),
            },
            "degree_distribution": self.degree_distribution_.to_dict(),
            "joint_degree_distribution": self.joint_degree_distribution_.to_dict(),
            "clustering": self.clustering_.to_dict() if self.clustering_ else None,
            "connectivity": self.connectivity_.to_dict(),
        }

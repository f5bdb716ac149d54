"""Command-line front end: stats, analyze, focused metrics, generate.

Exit codes: 0 success, 2 missing input, 3 strict-mode parse failure,
4 generation constraint failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .estimator import TopologyAnalyzer
from .generator import GenerationError, GeneratorConfig, generate, write_dataset
from .graph import write_edge_list
from .metrics import write_degree_histogram, write_jdd
from .records import StrictParseError, basic_stats, parse_records

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_STRICT_PARSE = 3
EXIT_GENERATION = 4


def _threads_from(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("ASTOPO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# threads (worker count) and output (report destination) never affect
# results, so they stay out of the manifest to keep reports reproducible
_MANIFEST_SKIP = ("func", "command", "threads", "output")


def _manifest(args, timings: dict[str, float]) -> dict:
    options = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in _MANIFEST_SKIP and not k.startswith("_")
    }
    return {
        "input_path": getattr(args, "input", None),
        "edge_mode": getattr(args, "edge_mode", None),
        "options": {k: v for k, v in options.items()},
        "tool_version": __version__,
        "seed": getattr(args, "seed", None),
        "timings": {stage: round(ms, 3) for stage, ms in timings.items()},
    }


def _load_records(args, timings: dict[str, float]):
    """Parse the input file; returns (records, errors) or an exit code."""
    path = Path(args.input)
    if not path.is_file():
        print(f"error: input file not found: {path}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    t0 = time.perf_counter()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            records, errors = parse_records(fh, strict=args.strict)
    except StrictParseError as exc:
        print(f"error: strict parse failure at {exc}", file=sys.stderr)
        return EXIT_STRICT_PARSE
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    timings["parse"] = (time.perf_counter() - t0) * 1000.0
    for err in errors:
        print(str(err), file=sys.stderr)
    return records, errors


def _emit(doc: dict, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")


def cmd_stats(args) -> int:
    timings: dict[str, float] = {}
    loaded = _load_records(args, timings)
    if isinstance(loaded, int):
        return loaded
    records, errors = loaded
    t0 = time.perf_counter()
    stats = basic_stats(records, args.as_count, rejected_count=len(errors))
    timings["stats"] = (time.perf_counter() - t0) * 1000.0
    if args.format == "table":
        d = stats.to_dict()
        width = max(len(k) for k in d)
        for k, v in d.items():
            print(f"{k:<{width}}  {'-' if v is None else v}")
    else:
        _emit({"manifest": _manifest(args, timings), "stats": stats.to_dict()}, args)
    return EXIT_OK


def _fit_analyzer(args, records) -> TopologyAnalyzer:
    return TopologyAnalyzer(
        edge_mode=args.edge_mode,
        as_count_mode=args.as_count,
        jdd_ordered=(args.jdd == "ordered"),
        clustering_scope=(
            "all-nodes" if args.clustering_scope == "all" else "eligible-only"
        ),
        hops=args.hops,
        exact_diameter=True if args.exact_diameter else None,
        sample_size=args.sample,
        seed=args.seed,
        threads=_threads_from(args),
        top_k=args.top,
    ).fit(records)


def cmd_analyze(args) -> int:
    timings: dict[str, float] = {}
    loaded = _load_records(args, timings)
    if isinstance(loaded, int):
        return loaded
    records, errors = loaded
    t0 = time.perf_counter()
    analyzer = _fit_analyzer(args, records)
    timings["analyze"] = (time.perf_counter() - t0) * 1000.0
    report = analyzer.report()
    report["stats"]["rejected_count"] = len(errors)
    if args.csv_dir:
        outdir = Path(args.csv_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / "degree_histogram.csv", "w", encoding="utf-8") as fh:
            write_degree_histogram(analyzer.degree_distribution_, fh)
        with open(outdir / "jdd.csv", "w", encoding="utf-8") as fh:
            write_jdd(analyzer.joint_degree_distribution_, fh)
    if args.export_edges:
        with open(args.export_edges, "w", encoding="utf-8") as fh:
            write_edge_list(analyzer.graph_, fh)
    _emit({"manifest": _manifest(args, timings), **report}, args)
    return EXIT_OK


def _focused(args, section: str) -> int:
    timings: dict[str, float] = {}
    loaded = _load_records(args, timings)
    if isinstance(loaded, int):
        return loaded
    records, _ = loaded
    t0 = time.perf_counter()
    analyzer = _fit_analyzer(args, records)
    timings["analyze"] = (time.perf_counter() - t0) * 1000.0
    report = analyzer.report()
    if section == "degrees" and args.format == "csv":
        write_degree_histogram(analyzer.degree_distribution_, sys.stdout)
        return EXIT_OK
    if section == "jdd" and args.format == "csv":
        write_jdd(analyzer.joint_degree_distribution_, sys.stdout)
        return EXIT_OK
    key = {
        "degrees": "degree_distribution",
        "jdd": "joint_degree_distribution",
        "clustering": "clustering",
        "connectivity": "connectivity",
    }[section]
    _emit({"manifest": _manifest(args, timings), key: report[key]}, args)
    return EXIT_OK


def _parse_degree_sequence(text: str) -> dict[int, int]:
    seq: dict[int, int] = {}
    for part in text.split(","):
        k, _, c = part.partition(":")
        seq[int(k)] = int(c)
    return seq


_PROFILE_ALIASES = {
    "paper": "paper-profile",
    "paper-profile": "paper-profile",
    "random": "random-uniform",
    "random-uniform": "random-uniform",
    "config": "configuration-model",
    "configuration-model": "configuration-model",
}


def _generator_config(args) -> GeneratorConfig:
    values: dict[str, str] = {}
    if args.config:
        path = Path(args.config)
        if not path.is_file():
            raise FileNotFoundError(path)
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    profile = args.profile or values.get("profile", "paper")
    if profile not in _PROFILE_ALIASES:
        raise GenerationError(f"unknown profile: {profile}")
    nodes = args.nodes if args.nodes is not None else values.get("nodes")
    edges = args.edges if args.edges is not None else values.get("edges")
    seq_text = args.degree_sequence or values.get("degree_sequence")
    lengths = args.path_lengths or values.get("path_lengths", "1:5")
    lo, _, hi = lengths.partition(":")
    seed = args.seed if args.seed is not None else int(values.get("seed", 0))
    consistent = args.consistent_paths or values.get("consistent_paths") == "true"
    return GeneratorConfig(
        profile=_PROFILE_ALIASES[profile],
        node_count=int(nodes) if nodes is not None else None,
        edge_count=int(edges) if edges is not None else None,
        degree_sequence=_parse_degree_sequence(seq_text) if seq_text else None,
        path_length_range=(int(lo), int(hi or lo)),
        seed=seed,
        consistent_paths=consistent,
    )


def cmd_generate(args) -> int:
    timings: dict[str, float] = {}
    try:
        config = _generator_config(args)
        t0 = time.perf_counter()
        records = generate(config)
        timings["generate"] = (time.perf_counter() - t0) * 1000.0
    except FileNotFoundError as exc:
        print(f"error: config file not found: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except (GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    with open(args.output, "w", encoding="utf-8") as fh:
        write_dataset(records, fh)
    manifest = _manifest(args, timings)
    manifest["seed"] = config.seed
    manifest["record_count"] = len(records)
    json.dump(manifest, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def _add_common_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="AS-link dataset file")
    p.add_argument("--strict", action="store_true", help="abort on first malformed row")
    p.add_argument("--output", help="write the JSON report here instead of stdout")


def _add_analysis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--edge-mode",
        choices=("endpoints", "path-adjacent", "both"),
        default="endpoints",
    )
    p.add_argument("--as-count", choices=("endpoints", "all-fields"), default="endpoints")
    p.add_argument("--jdd", choices=("ordered", "unordered"), default="ordered")
    p.add_argument("--clustering-scope", choices=("all", "eligible"), default="eligible")
    p.add_argument("--hops", choices=("ases", "edges"), default="ases")
    p.add_argument("--exact-diameter", action="store_true")
    p.add_argument("--sample", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--top", type=int, default=10, help="top-k clustering rows")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="astopo", description="AS-level IPv6 topology analysis toolkit"
    )
    parser.add_argument("--version", action="version", version=f"astopo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="basic dataset statistics")
    _add_common_input_flags(p)
    p.add_argument("--as-count", choices=("endpoints", "all-fields"), default="endpoints")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("analyze", help="full metric suite as one JSON report")
    _add_common_input_flags(p)
    _add_analysis_flags(p)
    p.add_argument("--csv-dir", help="also write degree/JDD CSV sidecars here")
    p.add_argument("--export-edges", help="write the simple-graph edge list here")
    p.set_defaults(func=cmd_analyze)

    for name, help_text in (
        ("degrees", "degree distribution only"),
        ("jdd", "joint degree distribution only"),
        ("clustering", "clustering metrics only"),
        ("connectivity", "connectivity metrics only"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_input_flags(p)
        _add_analysis_flags(p)
        p.set_defaults(func=_focused, _section=name)

    p = sub.add_parser("generate", help="write a synthetic AS-link corpus")
    p.add_argument("--output", required=True, help="dataset file to write")
    p.add_argument("--profile", choices=sorted(_PROFILE_ALIASES), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--edges", type=int, default=None)
    p.add_argument("--degree-sequence", metavar="K:COUNT,K:COUNT,...")
    p.add_argument("--path-lengths", metavar="MIN:MAX")
    p.add_argument("--consistent-paths", action="store_true")
    p.add_argument("--config", help="flat key=value config file")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.func is _focused:
        return _focused(args, args._section)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

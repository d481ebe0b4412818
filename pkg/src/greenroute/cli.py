"""Command-line pipeline: ingest, build, route, stats, export, serve, bench.

Exit codes: 0 success, 2 usage, 3 data error, 4 no path, 5 resource
limit.  Data goes to stdout, diagnostics to stderr.  The build honors
GREENROUTE_THREADS for the kernel's thread count.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from .errors import (
    DataError,
    GreenRouteError,
    IoFailureError,
    NoPathError,
    ResourceLimitError,
)
from .export import export_network_geojson, render_geojson, route_feature_collection
from .graph import DEFAULT_HEADING_TOLERANCE_DEG, AssignmentMode, WeightedGraph
from .gvi import GviBand, gvi_distribution, node_gvi
from .pipeline import build_and_save, ingest, load_workspace
from .routing import DEFAULT_BLOCK_SIZE, floyd_warshall, floyd_warshall_blocked, greenest_path
from .store import load_apsp

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NO_PATH = 4
EXIT_RESOURCE = 5

THREADS_ENV = "GREENROUTE_THREADS"


def _apply_thread_env() -> None:
    value = os.environ.get(THREADS_ENV)
    if value:
        import numba

        numba.set_num_threads(max(1, int(value)))


def _cmd_ingest(args: argparse.Namespace) -> int:
    summary = ingest(
        network_path=args.network,
        obs_path=args.obs,
        workspace=args.workspace,
        rasters_dir=args.rasters,
        classes_path=args.classes,
    )
    rep = summary.report_dict()
    print(f"nodes: {rep['nodes']}, edges: {rep['edges']}, dropped: {rep['dropped_edges']}")
    print(f"invalid nodes: {rep['invalid_nodes']}")
    print(f"duplicate edges collapsed: {rep['duplicate_edges_collapsed']}")
    print(f"observation rows: {rep['observation_rows']} (skipped: {rep['observation_rows_skipped']})")
    if rep["observation_rows_skipped"]:
        print(
            f"warning: {rep['observation_rows_skipped']} observation rows named unknown nodes",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_build(args: argparse.Namespace) -> int:
    _apply_thread_env()
    mode = AssignmentMode(args.mode)
    result = build_and_save(
        workspace=args.workspace,
        out_path=args.out,
        mode=mode,
        tolerance_deg=args.tolerance,
        block_size=args.block_size,
        build_timestamp=args.timestamp,
    )
    if result.assignment.dropped:
        print(
            f"warning: {len(result.assignment.dropped)} edges dropped (missing node GVI)",
            file=sys.stderr,
        )
    if result.assignment.fallbacks:
        print(
            f"warning: {len(result.assignment.fallbacks)} directed edges fell back to node averages",
            file=sys.stderr,
        )
    print(f"n: {result.graph.n}")
    print(f"mode: {mode.value}")
    print(f"build seconds: {result.seconds:.3f}")
    print(f"archive: {args.out}")
    return EXIT_OK


def _resolve_external(bundle, raw: str) -> int:
    for i, ext in enumerate(bundle.external_ids):
        if str(ext) == raw:
            return i
    raise DataError(f"unknown node id: {raw!r}")


def _cmd_route(args: argparse.Namespace) -> int:
    bundle = load_apsp(args.archive)
    start = _resolve_external(bundle, args.from_id)
    dest = _resolve_external(bundle, args.to_id)
    plan = greenest_path(bundle.apsp, bundle.graph, start, dest)
    if args.format == "geojson":
        text = render_geojson(route_feature_collection(plan, bundle.network))
        if args.out:
            try:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise IoFailureError(f"cannot write {args.out}: {exc}") from exc
        else:
            print(text)
        return EXIT_OK
    names = " ".join(str(bundle.external_ids[u]) for u in plan.nodes)
    print(f"route: {names}")
    print(f"avg_gvi: {plan.avg_gvi:.2f}%")
    print(f"band: {plan.band.label}")
    print(f"nodes: {plan.node_count}")
    print(f"total_weight: {plan.total_weight:.2f}")
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    if args.archive:
        bundle = load_apsp(args.archive)
        values = list(bundle.node_gvis.values())
    else:
        network, observations = load_workspace(args.workspace)
        values = [node_gvi(obs).gvi_avg for obs in observations.values() if obs]
    dist = gvi_distribution(values)
    for band in GviBand:
        print(f"{band.label:<10} {dist.counts[band]:>8}  ({dist.percents[band]:.2f}%)")
    print(f"{'total':<10} {dist.total:>8}")
    return EXIT_OK


def _cmd_export(args: argparse.Namespace) -> int:
    bundle = load_apsp(args.archive)
    export_network_geojson(
        bundle.network, bundle.node_gvis, bundle.graph.edge_entries(), args.out
    )
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app_from_path

    app = create_app_from_path(args.archive, cors=args.cors)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def random_dense_graph(n: int, seed: int = 0, density: float = 1.0) -> "WeightedGraph":
    """Random undirected benchmark graph with integer GVIs in [0, 100]."""
    rng = np.random.default_rng(seed)
    gvi = rng.integers(0, 101, size=(n, n)).astype(np.float64)
    gvi = np.triu(gvi, k=1)
    gvi = gvi + gvi.T
    present = np.triu(rng.random((n, n)) < density, k=1)
    present = present | present.T
    gvi[~present] = np.nan
    weight = np.where(present, 100.0 - gvi, np.inf)
    np.fill_diagonal(weight, 0.0)
    return WeightedGraph(n=n, directed=False, weight=weight, gvi=gvi)


def _cmd_bench(args: argparse.Namespace) -> int:
    _apply_thread_env()
    n = args.n
    graph = random_dense_graph(n, seed=args.seed, density=args.density)
    edges = int(np.isfinite(graph.weight[np.triu_indices(n, k=1)]).sum())
    # warm the jit so the timing reflects the kernel, not compilation
    floyd_warshall_blocked(random_dense_graph(2, seed=0), args.block_size)
    t0 = time.perf_counter()
    if args.naive:
        floyd_warshall(graph, max_nodes=max(n, 1))
    else:
        floyd_warshall_blocked(graph, args.block_size, max_nodes=max(n, 1))
    seconds = time.perf_counter() - t0
    kernel = "naive" if args.naive else f"blocked (block_size={args.block_size})"
    print(f"n: {n}")
    print(f"kernel: {kernel}")
    print(f"edges: {edges}")
    print(f"seconds: {seconds:.3f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenroute",
        description="Greenest-route engine over street-level greenery data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate raw inputs into a workspace")
    p.add_argument("--network", required=True, help="network document (JSON)")
    p.add_argument("--obs", help="observation table (CSV)")
    p.add_argument("--rasters", help="directory of segmented rasters named <node>_<heading>.txt")
    p.add_argument("--classes", help="class table mapping index to name")
    p.add_argument("--workspace", required=True, help="output workspace directory")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("build", help="assign edge GVIs, run the all-pairs build, save archive")
    p.add_argument("--workspace", required=True)
    p.add_argument("--mode", choices=[m.value for m in AssignmentMode], default="undirected")
    p.add_argument("--tolerance", type=float, default=DEFAULT_HEADING_TOLERANCE_DEG)
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--timestamp", type=int, default=0, help="build timestamp recorded in the archive")
    p.add_argument("--out", required=True, help="archive path (.gvip)")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("route", help="query the greenest path between two nodes")
    p.add_argument("--archive", required=True)
    p.add_argument("--from", dest="from_id", required=True)
    p.add_argument("--to", dest="to_id", required=True)
    p.add_argument("--format", choices=["text", "geojson"], default="text")
    p.add_argument("--out", help="write GeoJSON here instead of stdout")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("stats", help="band distribution of node GVIs")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--archive")
    group.add_argument("--workspace")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("export", help="write the network GeoJSON from an archive")
    p.add_argument("--archive", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="serve route and stats queries over HTTP")
    p.add_argument("--archive", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--cors", action="store_true", help="enable permissive cross-origin headers")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("bench", help="time the all-pairs kernel on a random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--naive", action="store_true", help="time the reference kernel instead")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PATH
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DataError, IoFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except GreenRouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

"""Ingestion workspace and build orchestration shared by the CLI and tests.

A workspace directory holds the validated, normalized inputs so the
expensive all-pairs build can be re-run without touching raw files:

    workspace/
      network.json       normalized network document
      observations.csv   resolved observation rows (external node ids)
      report.json        ingestion bookkeeping
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

from . import gvi as gvi_mod
from .errors import IoFailureError, MalformedDocumentError, UnknownNodeError
from .graph import (
    DEFAULT_HEADING_TOLERANCE_DEG,
    AssignmentMode,
    EdgeGviTable,
    WeightedGraph,
    assign_edge_gvi_directional,
    assign_edge_gvi_undirected,
    build_adjacency_matrix,
)
from .gvi import (
    GreeneryClassSet,
    NodeGvi,
    ObservationRow,
    ViewObservation,
    node_gvi,
    parse_class_table,
    parse_observation_table,
    parse_raster,
)
from .network import NodeId, StreetNetwork, parse_network, serialize_network
from .routing import DEFAULT_BLOCK_SIZE, ApspResult, floyd_warshall_blocked
from .store import save_apsp

NETWORK_FILE = "network.json"
OBSERVATIONS_FILE = "observations.csv"
REPORT_FILE = "report.json"


@dataclass
class IngestSummary:
    network: StreetNetwork
    rows: list[ObservationRow]
    skipped_rows: int

    def report_dict(self) -> dict:
        rep = self.network.report
        return {
            "nodes": self.network.n,
            "edges": len(self.network.edges),
            "dropped_edges": rep.edges_dropped_invalid_node,
            "invalid_nodes": rep.invalid_nodes,
            "duplicate_edges_collapsed": rep.duplicate_edges_collapsed,
            "observation_rows": len(self.rows),
            "observation_rows_skipped": self.skipped_rows,
        }


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc


def resolve_node_id(network: StreetNetwork, raw: str) -> NodeId:
    """Map a document id written as text back to the dense node id."""
    try:
        return network.node_index(raw)
    except UnknownNodeError:
        if raw.lstrip("-").isdigit():
            return network.node_index(int(raw))
        raise


def rows_to_observations(
    network: StreetNetwork, rows: list[ObservationRow]
) -> tuple[dict[NodeId, list[ViewObservation]], int]:
    """Resolve rows against the network; rows naming unknown nodes are skipped."""
    observations: dict[NodeId, list[ViewObservation]] = {}
    skipped = 0
    for row in rows:
        try:
            node = resolve_node_id(network, row.node_id)
        except UnknownNodeError:
            skipped += 1
            continue
        observations.setdefault(node, []).append(
            ViewObservation(
                node=node,
                heading_deg=row.heading_deg,
                greenery_pixels=row.greenery_pixels,
                total_pixels=row.total_pixels,
                gvi_percent=row.gvi_percent,
            )
        )
    return observations, skipped


def rasters_to_rows(rasters_dir: str | Path, classes_path: str | Path | None) -> list[ObservationRow]:
    """Turn a directory of segmented rasters into observation rows.

    Files are named "<node_id>_<heading>.txt"; greenery classes come from
    the class table (vegetation and terrain by default).
    """
    table = (
        parse_class_table(_read_text(classes_path))
        if classes_path is not None
        else gvi_mod.DEFAULT_CLASS_TABLE
    )
    greenery = GreeneryClassSet.from_class_table(table)
    rows: list[ObservationRow] = []
    for path in sorted(Path(rasters_dir).glob("*.txt")):
        stem = path.stem
        if "_" not in stem:
            raise MalformedDocumentError(
                f"raster file name {path.name} is not <node_id>_<heading>.txt"
            )
        node_id, _, heading_text = stem.rpartition("_")
        try:
            heading = float(heading_text)
        except ValueError:
            raise MalformedDocumentError(
                f"raster file name {path.name} has a bad heading"
            ) from None
        raster = parse_raster(_read_text(path))
        rows.append(
            ObservationRow(
                node_id=node_id,
                heading_deg=heading,
                greenery_pixels=gvi_mod.count_greenery_pixels(raster, greenery),
                total_pixels=raster.total_pixels,
                gvi_percent=None,
            )
        )
    return rows


def ingest(
    network_path: str | Path,
    obs_path: str | Path | None,
    workspace: str | Path,
    rasters_dir: str | Path | None = None,
    classes_path: str | Path | None = None,
) -> IngestSummary:
    """Validate raw inputs and write the normalized workspace."""
    network = parse_network(_read_text(network_path))
    rows: list[ObservationRow] = []
    if obs_path is not None:
        rows.extend(parse_observation_table(_read_text(obs_path)))
    if rasters_dir is not None:
        rows.extend(rasters_to_rows(rasters_dir, classes_path))
    _, skipped = rows_to_observations(network, rows)
    kept = [row for row in rows if _known_node(network, row.node_id)]

    ws = Path(workspace)
    try:
        ws.mkdir(parents=True, exist_ok=True)
        (ws / NETWORK_FILE).write_text(serialize_network(network), encoding="utf-8")
        (ws / OBSERVATIONS_FILE).write_text(
            gvi_mod.format_observation_table(kept), encoding="utf-8"
        )
        summary = IngestSummary(network=network, rows=kept, skipped_rows=skipped)
        (ws / REPORT_FILE).write_text(
            json.dumps(summary.report_dict(), indent=2), encoding="utf-8"
        )
    except OSError as exc:
        raise IoFailureError(f"cannot write workspace {workspace}: {exc}") from exc
    return summary


def _known_node(network: StreetNetwork, raw: str) -> bool:
    try:
        resolve_node_id(network, raw)
        return True
    except UnknownNodeError:
        return False


def load_workspace(workspace: str | Path) -> tuple[StreetNetwork, dict[NodeId, list[ViewObservation]]]:
    ws = Path(workspace)
    network = parse_network(_read_text(ws / NETWORK_FILE))
    rows = parse_observation_table(_read_text(ws / OBSERVATIONS_FILE))
    observations, _ = rows_to_observations(network, rows)
    return network, observations


@dataclass
class BuildResult:
    apsp: ApspResult
    graph: WeightedGraph
    node_gvis: dict[NodeId, float]
    assignment: EdgeGviTable
    seconds: float


def build_bundle(
    network: StreetNetwork,
    observations: dict[NodeId, list[ViewObservation]],
    mode: AssignmentMode,
    tolerance_deg: float = DEFAULT_HEADING_TOLERANCE_DEG,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> BuildResult:
    """Assignment -> adjacency matrix -> blocked all-pairs build."""
    per_node: dict[NodeId, NodeGvi] = {
        node: node_gvi(obs) for node, obs in observations.items() if obs
    }
    if mode is AssignmentMode.UNDIRECTED_AVERAGE:
        assignment = assign_edge_gvi_undirected(network, per_node)
        directed = False
    else:
        assignment = assign_edge_gvi_directional(network, observations, tolerance_deg)
        directed = True
    graph = build_adjacency_matrix(network.n, assignment.entries, directed)
    t0 = time.perf_counter()
    apsp = floyd_warshall_blocked(graph, block_size)
    seconds = time.perf_counter() - t0
    node_gvis = {node: ng.gvi_avg for node, ng in per_node.items()}
    return BuildResult(
        apsp=apsp, graph=graph, node_gvis=node_gvis, assignment=assignment, seconds=seconds
    )


def build_and_save(
    workspace: str | Path,
    out_path: str | Path,
    mode: AssignmentMode,
    tolerance_deg: float = DEFAULT_HEADING_TOLERANCE_DEG,
    block_size: int = DEFAULT_BLOCK_SIZE,
    build_timestamp: int = 0,
) -> BuildResult:
    network, observations = load_workspace(workspace)
    result = build_bundle(network, observations, mode, tolerance_deg, block_size)
    save_apsp(
        result.apsp,
        result.graph,
        network,
        result.node_gvis,
        out_path,
        build_timestamp=build_timestamp,
    )
    return result

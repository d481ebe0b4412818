"""Street-network ingestion: parsing, validation, and edge bearings.

The network document is a JSON object with a "nodes" array
({"id", "lat", "lon", "valid"?}) and an "edges" array
({"u", "v", "length_m"?}).  Node ids may be strings or integers and are
re-indexed densely (0..N-1, input order) at ingestion; the original ids
are kept in a side table for export and query interfaces.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import (
    CoincidentNodesError,
    CoordinateOutOfRangeError,
    DanglingEndpointError,
    MalformedDocumentError,
    SelfLoopError,
    UnknownNodeError,
)

NodeId = int

ExternalId = str | int


@dataclass(frozen=True)
class GeoNode:
    id: NodeId
    lat: float
    lon: float
    valid: bool = True


@dataclass(frozen=True)
class StreetEdge:
    u: NodeId
    v: NodeId
    length_m: float | None = None


@dataclass
class IngestionReport:
    """Bookkeeping for silent fixes applied while parsing a document."""

    duplicate_edges_collapsed: int = 0
    edges_dropped_invalid_node: int = 0
    invalid_nodes: int = 0


@dataclass
class StreetNetwork:
    nodes: list[GeoNode]
    edges: list[StreetEdge]
    external_ids: list[ExternalId]
    report: IngestionReport = field(default_factory=IngestionReport)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def node_index(self, external_id: ExternalId) -> NodeId:
        """Resolve an original document id to the dense node id."""
        try:
            return self._index[external_id]
        except AttributeError:
            self._index = {ext: i for i, ext in enumerate(self.external_ids)}
            return self.node_index(external_id)
        except KeyError:
            raise UnknownNodeError(f"unknown node id: {external_id!r}") from None


def _require_number(value: object, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocumentError(f"{what} must be a number, got {value!r}")
    return float(value)


def parse_network(text: str) -> StreetNetwork:
    """Parse and validate a network document.

    Node ids are re-indexed densely in input order.  Duplicate undirected
    edges collapse to the first occurrence, edges touching invalid nodes
    are dropped; both are counted in the ingestion report.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocumentError("top level must be an object")
    raw_nodes = doc.get("nodes")
    raw_edges = doc.get("edges")
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise MalformedDocumentError('document needs "nodes" and "edges" arrays')

    report = IngestionReport()
    nodes: list[GeoNode] = []
    external_ids: list[ExternalId] = []
    index: dict[ExternalId, NodeId] = {}
    for i, raw in enumerate(raw_nodes):
        if not isinstance(raw, dict) or "id" not in raw:
            raise MalformedDocumentError(f"node #{i} is not an object with an id")
        ext = raw["id"]
        if isinstance(ext, bool) or not isinstance(ext, (str, int)):
            raise MalformedDocumentError(f"node id must be string or integer: {ext!r}")
        if ext in index:
            raise MalformedDocumentError(f"duplicate node id: {ext!r}")
        lat = _require_number(raw.get("lat"), f"node {ext!r} lat")
        lon = _require_number(raw.get("lon"), f"node {ext!r} lon")
        if not -90.0 <= lat <= 90.0 or not -180.0 <= lon <= 180.0:
            raise CoordinateOutOfRangeError(
                f"node {ext!r} coordinates out of range: ({lat}, {lon})"
            )
        valid = raw.get("valid", True)
        if not isinstance(valid, bool):
            raise MalformedDocumentError(f"node {ext!r} valid flag must be boolean")
        if not valid:
            report.invalid_nodes += 1
        index[ext] = len(nodes)
        external_ids.append(ext)
        nodes.append(GeoNode(id=len(nodes), lat=lat, lon=lon, valid=valid))

    edges: list[StreetEdge] = []
    seen_pairs: set[tuple[NodeId, NodeId]] = set()
    for i, raw in enumerate(raw_edges):
        if not isinstance(raw, dict):
            raise MalformedDocumentError(f"edge #{i} is not an object")
        try:
            u = index[raw["u"]]
            v = index[raw["v"]]
        except KeyError as exc:
            raise DanglingEndpointError(f"edge #{i} references unknown node {exc}") from None
        if u == v:
            raise SelfLoopError(f"edge #{i} is a self-loop on node {raw['u']!r}")
        length_m = raw.get("length_m")
        if length_m is not None:
            length_m = _require_number(length_m, f"edge #{i} length_m")
            if length_m < 0:
                raise MalformedDocumentError(f"edge #{i} has negative length_m")
        if not (nodes[u].valid and nodes[v].valid):
            report.edges_dropped_invalid_node += 1
            continue
        pair = (u, v) if u < v else (v, u)
        if pair in seen_pairs:
            report.duplicate_edges_collapsed += 1
            continue
        seen_pairs.add(pair)
        edges.append(StreetEdge(u=u, v=v, length_m=length_m))

    return StreetNetwork(nodes=nodes, edges=edges, external_ids=external_ids, report=report)


def serialize_network(network: StreetNetwork) -> str:
    """Write a network back to document form (original ids preserved).

    parse_network(serialize_network(net)) reproduces net exactly.
    """
    doc = {
        "nodes": [
            {
                "id": network.external_ids[node.id],
                "lat": node.lat,
                "lon": node.lon,
                "valid": node.valid,
            }
            for node in network.nodes
        ],
        "edges": [
            {"u": network.external_ids[e.u], "v": network.external_ids[e.v]}
            | ({"length_m": e.length_m} if e.length_m is not None else {})
            for e in network.edges
        ],
    }
    return json.dumps(doc, ensure_ascii=False, indent=2)


def edge_bearing(from_node: GeoNode, to_node: GeoNode) -> float:
    """Compass bearing of the segment from_node -> to_node.

    Forward azimuth on a sphere: 0 degrees is due north, increasing
    clockwise, result in [0, 360).
    """
    if from_node.lat == to_node.lat and from_node.lon == to_node.lon:
        raise CoincidentNodesError(
            f"nodes {from_node.id} and {to_node.id} have identical coordinates"
        )
    phi1 = math.radians(from_node.lat)
    phi2 = math.radians(to_node.lat)
    dlam = math.radians(to_node.lon - from_node.lon)
    y = math.sin(dlam) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlam)
    return math.degrees(math.atan2(y, x)) % 360.0

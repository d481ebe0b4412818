"""Binary persistence of APSP builds (.gvip archives).

The all-pairs build is the expensive step, so its outputs are saved
bit-exactly and reloaded for instant route queries.  Layout: a 48-byte
header (magic, version, flags, n, edge count, build timestamp, payload
checksum) followed by little-endian payload sections in fixed order:
dist (n*n f64), parents (n*n i32), node gvi (n f64, NaN absent), node
lat/lon (n f64 each), node valid flags (n u8), external ids, edge table
(u32 u, u32 v, f64 gvi).  Saves of identical inputs are byte-identical.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ChecksumMismatchError, IoFailureError, VersionUnsupportedError
from .graph import WeightedGraph, build_adjacency_matrix
from .network import ExternalId, GeoNode, IngestionReport, NodeId, StreetEdge, StreetNetwork
from .routing import ApspResult

MAGIC = b"GVIPARC\x01"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<8sIIQQQ8s")
_EDGE = struct.Struct("<IId")
_FLAG_DIRECTED = 1

_ID_STR = 0
_ID_INT = 1


@dataclass(frozen=True)
class LoadedArchive:
    """Everything a query interface needs, reconstructed from one file."""

    apsp: ApspResult
    node_gvis: dict[NodeId, float]
    external_ids: list[ExternalId]
    network: StreetNetwork
    graph: WeightedGraph
    directed: bool
    build_timestamp: int


def _encode_ids(external_ids: list[ExternalId]) -> bytes:
    parts = []
    for ext in external_ids:
        tag = _ID_INT if isinstance(ext, int) else _ID_STR
        raw = str(ext).encode("utf-8")
        parts.append(struct.pack("<BI", tag, len(raw)) + raw)
    return b"".join(parts)


def _payload(
    apsp: ApspResult,
    graph: WeightedGraph,
    network: StreetNetwork,
    node_gvis: dict[NodeId, float],
) -> tuple[bytes, int]:
    n = apsp.n
    gvi_row = np.full(n, np.nan, dtype=np.float64)
    for node, value in node_gvis.items():
        gvi_row[node] = value
    lat = np.array([node.lat for node in network.nodes], dtype=np.float64)
    lon = np.array([node.lon for node in network.nodes], dtype=np.float64)
    valid = np.array([node.valid for node in network.nodes], dtype=np.uint8)
    edges = graph.edge_entries()
    sections = [
        np.ascontiguousarray(apsp.dist, dtype=np.float64).tobytes(),
        np.ascontiguousarray(apsp.parents, dtype=np.int32).tobytes(),
        gvi_row.tobytes(),
        lat.tobytes(),
        lon.tobytes(),
        valid.tobytes(),
        _encode_ids(network.external_ids),
        b"".join(_EDGE.pack(u, v, g) for u, v, g in edges),
    ]
    return b"".join(sections), len(edges)


def save_apsp(
    apsp: ApspResult,
    graph: WeightedGraph,
    network: StreetNetwork,
    node_gvis: dict[NodeId, float],
    path: str | Path,
    *,
    build_timestamp: int = 0,
) -> None:
    """Write the archive; repeated saves of the same build are byte-identical."""
    if not (apsp.n == graph.n == network.n):
        raise ValueError(
            f"inconsistent sizes: apsp n={apsp.n}, graph n={graph.n}, network n={network.n}"
        )
    payload, edge_count = _payload(apsp, graph, network, node_gvis)
    checksum = hashlib.blake2b(payload, digest_size=8).digest()
    flags = _FLAG_DIRECTED if graph.directed else 0
    header = _HEADER.pack(
        MAGIC, FORMAT_VERSION, flags, apsp.n, edge_count, build_timestamp, checksum
    )
    try:
        Path(path).write_bytes(header + payload)
    except OSError as exc:
        raise IoFailureError(f"cannot write archive {path}: {exc}") from exc


class _Cursor:
    """Sequential payload reader; running past the end means truncation."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        end = self.pos + size
        if end > len(self.data):
            raise ChecksumMismatchError("payload shorter than the header promises")
        chunk = self.data[self.pos : end]
        self.pos = end
        return chunk

    def array(self, dtype: str, count: int) -> np.ndarray:
        item = np.dtype(dtype).itemsize
        return np.frombuffer(self.take(item * count), dtype=dtype).copy()


def load_apsp(path: str | Path) -> LoadedArchive:
    """Reload an archive, verifying version and payload checksum."""
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailureError(f"cannot read archive {path}: {exc}") from exc
    if len(blob) < _HEADER.size:
        raise VersionUnsupportedError("file too short to be a gvip archive")
    magic, version, flags, n, edge_count, build_timestamp, checksum = _HEADER.unpack(
        blob[: _HEADER.size]
    )
    if magic != MAGIC:
        raise VersionUnsupportedError("not a gvip archive (bad magic)")
    if version != FORMAT_VERSION:
        raise VersionUnsupportedError(f"unsupported archive version {version}")
    payload = blob[_HEADER.size :]
    if hashlib.blake2b(payload, digest_size=8).digest() != checksum:
        raise ChecksumMismatchError("archive payload checksum mismatch")

    cur = _Cursor(payload)
    dist = cur.array("<f8", n * n).reshape(n, n)
    parents = cur.array("<i4", n * n).reshape(n, n)
    gvi_row = cur.array("<f8", n)
    lat = cur.array("<f8", n)
    lon = cur.array("<f8", n)
    valid = cur.array("u1", n)
    external_ids: list[ExternalId] = []
    for _ in range(n):
        tag, size = struct.unpack("<BI", cur.take(5))
        text = cur.take(size).decode("utf-8")
        external_ids.append(int(text) if tag == _ID_INT else text)
    entries: list[tuple[int, int, float]] = []
    for _ in range(edge_count):
        u, v, g = _EDGE.unpack(cur.take(_EDGE.size))
        entries.append((u, v, g))
    if cur.pos != len(payload):
        raise ChecksumMismatchError("archive has trailing bytes beyond its sections")

    directed = bool(flags & _FLAG_DIRECTED)
    nodes = [
        GeoNode(id=i, lat=float(lat[i]), lon=float(lon[i]), valid=bool(valid[i]))
        for i in range(n)
    ]
    pairs = sorted({(u, v) if u < v else (v, u) for u, v, _ in entries})
    street_edges = [StreetEdge(u=u, v=v) for u, v in pairs]
    network = StreetNetwork(
        nodes=nodes,
        edges=street_edges,
        external_ids=external_ids,
        report=IngestionReport(),
    )
    graph = build_adjacency_matrix(n, entries, directed, max_nodes=max(n, 1))
    node_gvis = {i: float(gvi_row[i]) for i in range(n) if not np.isnan(gvi_row[i])}
    return LoadedArchive(
        apsp=ApspResult(n=n, dist=dist, parents=parents),
        node_gvis=node_gvis,
        external_ids=external_ids,
        network=network,
        graph=graph,
        directed=directed,
        build_timestamp=build_timestamp,
    )

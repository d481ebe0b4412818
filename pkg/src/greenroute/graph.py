"""Dense weighted-graph construction over street edges.

Edge GVIs come either from endpoint averages (undirected mode) or from
the origin node's view facing the edge bearing (directional mode).  The
adjacency matrix stores the transformed weight 100 - GVI, with a zero
diagonal and +inf for absent edges; a parallel matrix keeps the raw edge
GVI for route reporting.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateEdgeConflictError,
    GraphTooLargeError,
    IndexOutOfBoundsError,
    MalformedDocumentError,
    NoObservationsError,
    OutOfRangeError,
    SelfLoopError,
)
from .gvi import NodeGvi, ViewObservation
from .network import NodeId, StreetNetwork, edge_bearing

# n*n float64 matrices are the real limit; fail loudly past this.
DEFAULT_NODE_CAP = 20_000

DEFAULT_HEADING_TOLERANCE_DEG = 30.0


class AssignmentMode(enum.Enum):
    UNDIRECTED_AVERAGE = "undirected"
    DIRECTIONAL_HEADING = "directional"


@dataclass(frozen=True)
class EdgeGviAssignment:
    mode: AssignmentMode
    heading_tolerance_deg: float = DEFAULT_HEADING_TOLERANCE_DEG

    def __post_init__(self) -> None:
        if not 0.0 < self.heading_tolerance_deg <= 90.0:
            raise OutOfRangeError(
                f"heading tolerance {self.heading_tolerance_deg} outside (0, 90]"
            )


@dataclass
class EdgeGviTable:
    """Edge GVI assignments plus what was dropped or approximated."""

    entries: list[tuple[NodeId, NodeId, float]] = field(default_factory=list)
    dropped: list[tuple[NodeId, NodeId]] = field(default_factory=list)
    fallbacks: list[tuple[NodeId, NodeId]] = field(default_factory=list)


@dataclass(frozen=True)
class WeightedGraph:
    """Adjacency matrix of transformed weights with its edge-GVI twin.

    weight[i][j] = 100 - gvi[i][j] for present edges, +inf when absent,
    0 on the diagonal.  gvi is NaN wherever no edge exists.
    """

    n: int
    directed: bool
    weight: np.ndarray
    gvi: np.ndarray

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return u != v and math.isfinite(self.weight[u, v])

    def edge_entries(self) -> list[tuple[NodeId, NodeId, float]]:
        """Finite off-diagonal cells as (u, v, gvi); one per pair when undirected."""
        us, vs = np.nonzero(np.isfinite(self.gvi))
        out = []
        for u, v in zip(us.tolist(), vs.tolist()):
            if not self.directed and u > v:
                continue
            out.append((u, v, float(self.gvi[u, v])))
        return out


def transform_weight(gvi_percent: float) -> float:
    """Map edge GVI to routing weight: higher greenery, strictly lower cost."""
    if not 0.0 <= gvi_percent <= 100.0:
        raise OutOfRangeError(f"gvi {gvi_percent} outside [0, 100]")
    return 100.0 - gvi_percent


def assign_edge_gvi_undirected(
    network: StreetNetwork, node_gvis: dict[NodeId, NodeGvi]
) -> EdgeGviTable:
    """Edge GVI as the mean of its endpoints' node averages.

    Edges with an endpoint missing GVI data are dropped and reported, not
    defaulted to zero greenery.
    """
    table = EdgeGviTable()
    for edge in network.edges:
        gu = node_gvis.get(edge.u)
        gv = node_gvis.get(edge.v)
        if gu is None or gv is None:
            table.dropped.append((edge.u, edge.v))
            continue
        table.entries.append((edge.u, edge.v, (gu.gvi_avg + gv.gvi_avg) / 2.0))
    return table


def angular_difference(a_deg: float, b_deg: float) -> float:
    d = abs(a_deg - b_deg) % 360.0
    return min(d, 360.0 - d)


def assign_edge_gvi_directional(
    network: StreetNetwork,
    observations: dict[NodeId, list[ViewObservation]],
    tolerance_deg: float = DEFAULT_HEADING_TOLERANCE_DEG,
) -> EdgeGviTable:
    """Directed edge GVI from the origin's view facing the edge bearing.

    Each undirected street edge yields two directed entries.  For u -> v
    the observation of u whose heading is angularly nearest the bearing
    (within tolerance) supplies the GVI; with no heading close enough the
    origin's average GVI is used and the fallback recorded.
    """
    EdgeGviAssignment(AssignmentMode.DIRECTIONAL_HEADING, tolerance_deg)
    table = EdgeGviTable()
    for edge in network.edges:
        for a, b in ((edge.u, edge.v), (edge.v, edge.u)):
            obs = observations.get(a)
            if not obs:
                raise NoObservationsError(f"node {a} has edges but no observations")
            bearing = edge_bearing(network.nodes[a], network.nodes[b])
            nearest = min(obs, key=lambda o: (angular_difference(o.heading_deg, bearing), o.heading_deg))
            if angular_difference(nearest.heading_deg, bearing) <= tolerance_deg:
                table.entries.append((a, b, nearest.gvi))
            else:
                avg = math.fsum(o.gvi for o in obs) / len(obs)
                table.entries.append((a, b, avg))
                table.fallbacks.append((a, b))
    return table


def build_adjacency_matrix(
    n: int,
    entries: list[tuple[NodeId, NodeId, float]],
    directed: bool = False,
    *,
    max_nodes: int = DEFAULT_NODE_CAP,
) -> WeightedGraph:
    """Fill the dense matrix pair from (u, v, gvi) entries.

    Initialization is a zero diagonal and +inf elsewhere; every entry sets
    weight[u][v] = 100 - gvi (and the mirror cell when undirected).
    """
    if n > max_nodes:
        raise GraphTooLargeError(f"n={n} exceeds the configured cap of {max_nodes}")
    weight = np.full((n, n), np.inf, dtype=np.float64)
    np.fill_diagonal(weight, 0.0)
    gvi = np.full((n, n), np.nan, dtype=np.float64)
    for u, v, g in entries:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfBoundsError(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"edge table contains self-loop on node {u}")
        if not 0.0 <= g <= 100.0:
            raise OutOfRangeError(f"edge ({u}, {v}) gvi {g} outside [0, 100]")
        pairs = ((u, v), (v, u)) if not directed else ((u, v),)
        for a, b in pairs:
            existing = gvi[a, b]
            if not np.isnan(existing):
                if existing != g:
                    raise DuplicateEdgeConflictError(
                        f"edge ({a}, {b}) assigned both gvi {existing} and {g}"
                    )
                continue
            gvi[a, b] = g
            weight[a, b] = transform_weight(g)
    return WeightedGraph(n=n, directed=directed, weight=weight, gvi=gvi)


def parse_edge_table(text: str) -> list[tuple[int, int, float]]:
    """Read the adjacency-table CSV: u,v,gvi_percent with a header row."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MalformedDocumentError("empty adjacency table") from None
    if header != ["u", "v", "gvi_percent"]:
        raise MalformedDocumentError("adjacency table header must be u,v,gvi_percent")
    entries: list[tuple[int, int, float]] = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        if len(rec) != 3:
            raise MalformedDocumentError(f"adjacency row {lineno} needs 3 fields")
        try:
            entries.append((int(rec[0]), int(rec[1]), float(rec[2])))
        except ValueError as exc:
            raise MalformedDocumentError(f"adjacency row {lineno}: {exc}") from None
    return entries

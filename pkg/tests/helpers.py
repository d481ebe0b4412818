"""Shared fixture builders and independent oracles for the test suite."""

from __future__ import annotations

import json
import math

import numpy as np

from greenroute.graph import WeightedGraph, build_adjacency_matrix
from greenroute.network import parse_network
from greenroute.routing import floyd_warshall

# Triangle: two green hops (GVI 80 each) vs one direct gray edge (GVI 30).
TRIANGLE_ENTRIES = [(0, 1, 80.0), (1, 2, 80.0), (0, 2, 30.0)]


def triangle_graph() -> WeightedGraph:
    return build_adjacency_matrix(3, TRIANGLE_ENTRIES, directed=False)


def random_connected_graph(
    rng: np.random.Generator,
    n: int,
    extra_edges: int | None = None,
    integer: bool = True,
) -> WeightedGraph:
    """Random spanning tree plus extra chords; connected by construction."""
    if extra_edges is None:
        extra_edges = int(rng.integers(0, n + 1))
    order = rng.permutation(n)
    pairs: set[tuple[int, int]] = set()
    for i in range(1, n):
        u = int(order[i])
        v = int(order[rng.integers(0, i)])
        pairs.add((min(u, v), max(u, v)))
    for _ in range(extra_edges):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u != v:
            pairs.add((min(u, v), max(u, v)))
    entries = []
    for u, v in sorted(pairs):
        g = float(rng.integers(0, 101)) if integer else float(rng.uniform(0, 100))
        entries.append((u, v, g))
    return build_adjacency_matrix(n, entries, directed=False)


def brute_force_min_path(graph: WeightedGraph, start: int, dest: int):
    """Exhaustive min-weight simple path with sound cost pruning.

    Independent of the package's own enumeration: used to check routes on
    graphs above the library's brute-force cap.  Returns (path, cost) or
    (None, inf) when unreachable.
    """
    n = graph.n
    weight = graph.weight
    neighbors = [
        [v for v in range(n) if v != u and math.isfinite(weight[u, v])] for u in range(n)
    ]
    best_cost = math.inf
    best_path: list[int] | None = None
    on_path = [False] * n
    on_path[start] = True
    path = [start]

    def visit(u: int, cost: float) -> None:
        nonlocal best_cost, best_path
        if cost >= best_cost:
            return
        if u == dest:
            best_cost = cost
            best_path = path.copy()
            return
        for v in neighbors[u]:
            if not on_path[v]:
                on_path[v] = True
                path.append(v)
                visit(v, cost + weight[u, v])
                path.pop()
                on_path[v] = False

    visit(start, 0.0)
    return best_path, best_cost


def all_simple_path_costs(graph: WeightedGraph, start: int, dest: int) -> list[float]:
    """Costs of every simple start->dest path (small graphs only)."""
    n = graph.n
    weight = graph.weight
    costs: list[float] = []
    on_path = [False] * n
    on_path[start] = True

    def visit(u: int, cost: float) -> None:
        if u == dest:
            costs.append(cost)
            return
        for v in range(n):
            if v != u and not on_path[v] and math.isfinite(weight[u, v]):
                on_path[v] = True
                visit(v, cost + weight[u, v])
                on_path[v] = False

    visit(start, 0.0)
    return costs


def grid_network_document(rows: int, cols: int, *, origin=(34.60, 135.50), step=0.001) -> dict:
    """Rectangular street grid; row index grows southward, column eastward."""
    lat0, lon0 = origin
    nodes = []
    for r in range(rows):
        for c in range(cols):
            nodes.append(
                {"id": f"g{r}{c}", "lat": lat0 - r * step, "lon": lon0 + c * step}
            )
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append({"u": f"g{r}{c}", "v": f"g{r}{c + 1}"})
            if r + 1 < rows:
                edges.append({"u": f"g{r}{c}", "v": f"g{r + 1}{c}"})
    return {"nodes": nodes, "edges": edges}


FIVE_NODE_DOC = {
    "nodes": [
        {"id": "A", "lat": 34.6000, "lon": 135.5000},
        {"id": "B", "lat": 34.6010, "lon": 135.5000},
        {"id": "C", "lat": 34.6010, "lon": 135.5010},
        {"id": "D", "lat": 34.6000, "lon": 135.5010},
        {"id": 7, "lat": 34.6005, "lon": 135.5005},
    ],
    "edges": [
        {"u": "A", "v": "B"},
        {"u": "B", "v": "C"},
        {"u": "C", "v": "D"},
        {"u": "D", "v": "A"},
        {"u": "A", "v": 7},
        {"u": 7, "v": "C"},
    ],
}

FIVE_NODE_GVIS = {0: 7.47, 1: 12.0, 2: 20.5, 3: 31.0, 4: 55.25}

FIVE_NODE_ENTRIES = [
    (0, 1, 9.735),
    (1, 2, 16.25),
    (2, 3, 25.75),
    (3, 0, 19.235),
    (0, 4, 31.36),
    (4, 2, 37.875),
]


def five_node_bundle():
    """Network, graph, APSP, and node GVIs sharing one 5-node fixture.

    Edge GVIs are the endpoint averages of FIVE_NODE_GVIS.
    """
    network = parse_network(json.dumps(FIVE_NODE_DOC))
    graph = build_adjacency_matrix(network.n, FIVE_NODE_ENTRIES, directed=False)
    apsp = floyd_warshall(graph)
    return apsp, graph, network, dict(FIVE_NODE_GVIS)


def grid_observation_rows(rows: int, cols: int, gvi_for) -> list[str]:
    """CSV rows (direct-percent form) for 4-heading observations per node."""
    lines = ["node_id,heading_deg,greenery_pixels,total_pixels,gvi_percent"]
    for r in range(rows):
        for c in range(cols):
            for heading in (0.0, 90.0, 180.0, 270.0):
                lines.append(f"g{r}{c},{heading},,,{gvi_for(r, c, heading)}")
    return lines

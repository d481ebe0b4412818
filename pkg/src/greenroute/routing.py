"""All-pairs shortest paths over transformed greenery weights.

floyd_warshall is the reference kernel (vectorized per k, strict-less
relaxation, deterministic for the fixed k order 0..n-1).
floyd_warshall_blocked is the cache-tiled production kernel: per k-block
it runs the dependent diagonal tile, then the row/column panels, then
the independent remainder tiles (parallelizable).  Both produce the
predecessor matrix that makes later route queries a pure matrix walk.

dijkstra and the exhaustive searches exist as independent oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .errors import (
    GraphTooLargeError,
    NoPathError,
    SameNodeError,
    TooLargeForBruteForceError,
)
from .graph import DEFAULT_NODE_CAP, WeightedGraph
from .gvi import GviBand, classify_band
from .network import NodeId

NO_PARENT = -1

DEFAULT_BLOCK_SIZE = 64

# Simple-path enumeration is factorial; keep it a test-scale tool.
BRUTE_FORCE_CAP = 12


@dataclass(frozen=True)
class ApspResult:
    """Distance and predecessor matrices for every node pair.

    parents[i][j] is the node preceding j on a best i -> j path, NO_PARENT
    when j is unreachable from i or i == j.
    """

    n: int
    dist: np.ndarray
    parents: np.ndarray


@dataclass(frozen=True)
class RoutePlan:
    """A reconstructed route with its greenery evaluation."""

    nodes: list[NodeId]
    edge_gvis: list[float]
    total_weight: float
    avg_gvi: float
    band: GviBand

    def __post_init__(self) -> None:
        if len(self.nodes) < 2 or len(self.edge_gvis) != len(self.nodes) - 1:
            raise ValueError("route needs >= 2 nodes and one GVI per edge")

    @property
    def node_count(self) -> int:
        return len(self.nodes)


def _init_state(graph: WeightedGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = graph.n
    dist = np.ascontiguousarray(graph.weight, dtype=np.float64).copy()
    parents = np.full((n, n), NO_PARENT, dtype=np.int32)
    direct = np.isfinite(dist)
    np.fill_diagonal(direct, False)
    sources = np.broadcast_to(np.arange(n, dtype=np.int32)[:, None], (n, n))
    parents[direct] = sources[direct]
    return dist, parents, direct


def floyd_warshall(graph: WeightedGraph, *, max_nodes: int = DEFAULT_NODE_CAP) -> ApspResult:
    """Reference Floyd-Warshall with predecessor tracking.

    Each k step applies graph[i][j] <- graph[i][k] + graph[k][j] under a
    strict-less test; row k and column k cannot improve within their own
    step, so the vectorized update equals the sequential triple loop.
    """
    if graph.n > max_nodes:
        raise GraphTooLargeError(f"n={graph.n} exceeds the configured cap of {max_nodes}")
    dist, parents, _ = _init_state(graph)
    n = graph.n
    for k in range(n):
        alt = dist[:, [k]] + dist[[k], :]
        improved = alt < dist
        if improved.any():
            dist[improved] = alt[improved]
            parents[improved] = np.broadcast_to(parents[k, :], (n, n))[improved]
    return ApspResult(n=n, dist=dist, parents=parents)


@njit(cache=True, inline="always")
def _relax_tile(dist, parents, hops, k0, k1, i0, i1, j0, j1):  # pragma: no cover - jitted
    # Ties on distance resolve toward fewer hops.  The (dist, hops) pair
    # then has one order-independent fixed point, and every stored parent
    # sits on a path whose hop count drops by exactly 1 per step, so the
    # backward walk cannot cycle regardless of the tile schedule.
    for k in range(k0, k1):
        for i in range(i0, i1):
            dik = dist[i, k]
            if dik == np.inf:
                continue
            hik = hops[i, k]
            for j in range(j0, j1):
                nd = dik + dist[k, j]
                dij = dist[i, j]
                if nd < dij:
                    dist[i, j] = nd
                    parents[i, j] = parents[k, j]
                    hops[i, j] = hik + hops[k, j]
                elif nd == dij and nd != np.inf:
                    nh = hik + hops[k, j]
                    if nh < hops[i, j]:
                        parents[i, j] = parents[k, j]
                        hops[i, j] = nh


@njit(cache=True, parallel=True)
def _fw_blocked_kernel(dist, parents, hops, block_size):  # pragma: no cover - jitted
    n = dist.shape[0]
    nb = (n + block_size - 1) // block_size
    for kb in range(nb):
        k0 = kb * block_size
        k1 = min(k0 + block_size, n)
        # dependent phase: the diagonal tile relaxes against itself
        _relax_tile(dist, parents, hops, k0, k1, k0, k1, k0, k1)
        # panel phase: tiles sharing row kb or column kb (independent of each other)
        for b in prange(nb):
            if b != kb:
                p0 = b * block_size
                p1 = min(p0 + block_size, n)
                _relax_tile(dist, parents, hops, k0, k1, k0, k1, p0, p1)
                _relax_tile(dist, parents, hops, k0, k1, p0, p1, k0, k1)
        # remainder phase: all other tiles, fully independent
        for t in prange(nb * nb):
            ib = t // nb
            jb = t % nb
            if ib != kb and jb != kb:
                i0 = ib * block_size
                i1 = min(i0 + block_size, n)
                j0 = jb * block_size
                j1 = min(j0 + block_size, n)
                _relax_tile(dist, parents, hops, k0, k1, i0, i1, j0, j1)


def floyd_warshall_blocked(
    graph: WeightedGraph,
    block_size: int = DEFAULT_BLOCK_SIZE,
    *,
    max_nodes: int = DEFAULT_NODE_CAP,
) -> ApspResult:
    """Tiled Floyd-Warshall; same distances as the reference kernel.

    Predecessors may differ among equal-cost paths but reconstruct routes
    of equal total weight.
    """
    if graph.n > max_nodes:
        raise GraphTooLargeError(f"n={graph.n} exceeds the configured cap of {max_nodes}")
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    dist, parents, direct = _init_state(graph)
    hops = np.zeros((graph.n, graph.n), dtype=np.int32)
    hops[direct] = 1
    _fw_blocked_kernel(dist, parents, hops, block_size)
    return ApspResult(n=graph.n, dist=dist, parents=parents)


def reconstruct_path(apsp: ApspResult, start: NodeId, dest: NodeId) -> list[NodeId]:
    """Walk the predecessor matrix backward from dest to start."""
    if start == dest:
        raise SameNodeError("start and destination are the same node")
    if not 0 <= start < apsp.n or not 0 <= dest < apsp.n:
        raise NoPathError(f"node out of range for n={apsp.n}")
    if not math.isfinite(apsp.dist[start, dest]):
        raise NoPathError(f"no path from {start} to {dest}")
    path = [dest]
    cur = dest
    while cur != start:
        cur = int(apsp.parents[start, cur])
        if cur == NO_PARENT or len(path) > apsp.n:
            raise RuntimeError("inconsistent predecessor matrix")
        path.append(cur)
    path.reverse()
    return path


def greenest_path(
    apsp: ApspResult, graph: WeightedGraph, start: NodeId, dest: NodeId
) -> RoutePlan:
    """Best-GVI route: reconstruct the min-sum path and evaluate its greenery."""
    nodes = reconstruct_path(apsp, start, dest)
    edge_gvis = [float(graph.gvi[a, b]) for a, b in zip(nodes, nodes[1:])]
    total_weight = math.fsum(graph.weight[a, b] for a, b in zip(nodes, nodes[1:]))
    avg_gvi = math.fsum(edge_gvis) / len(edge_gvis)
    return RoutePlan(
        nodes=nodes,
        edge_gvis=edge_gvis,
        total_weight=total_weight,
        avg_gvi=avg_gvi,
        band=classify_band(avg_gvi),
    )


def dijkstra(
    graph: WeightedGraph, start: NodeId, *, max_nodes: int = DEFAULT_NODE_CAP
) -> tuple[np.ndarray, np.ndarray]:
    """Single-source shortest paths; the row-level oracle for Floyd-Warshall.

    Dense O(n^2) variant (argmin selection), appropriate for adjacency
    matrices.  Returns (distances, predecessors).
    """
    if graph.n > max_nodes:
        raise GraphTooLargeError(f"n={graph.n} exceeds the configured cap of {max_nodes}")
    n = graph.n
    weight = graph.weight
    dist = np.full(n, np.inf, dtype=np.float64)
    dist[start] = 0.0
    parents = np.full(n, NO_PARENT, dtype=np.int32)
    visited = np.zeros(n, dtype=bool)
    for _ in range(n):
        candidate = np.where(visited, np.inf, dist)
        u = int(np.argmin(candidate))
        if not math.isfinite(candidate[u]):
            break
        visited[u] = True
        alt = dist[u] + weight[u]
        improved = alt < dist
        if improved.any():
            dist[improved] = alt[improved]
            parents[improved] = u
    return dist, parents


def _check_brute_force_size(graph: WeightedGraph, max_nodes: int) -> None:
    if graph.n > max_nodes:
        raise TooLargeForBruteForceError(
            f"exhaustive search capped at n={max_nodes}, got n={graph.n}"
        )


def enumerate_best_path(
    graph: WeightedGraph,
    start: NodeId,
    dest: NodeId,
    *,
    max_nodes: int = BRUTE_FORCE_CAP,
) -> tuple[list[NodeId], float]:
    """Exhaustive min-weight simple path; the small-instance oracle.

    Prunes branches whose partial cost already meets the best found, which
    is sound for non-negative weights.
    """
    _check_brute_force_size(graph, max_nodes)
    if start == dest:
        raise SameNodeError("start and destination are the same node")
    n = graph.n
    weight = graph.weight
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
        row = weight[u]
        for v in range(n):
            if v != u and not on_path[v] and math.isfinite(row[v]):
                on_path[v] = True
                path.append(v)
                visit(v, cost + row[v])
                path.pop()
                on_path[v] = False

    visit(start, 0.0)
    if best_path is None:
        raise NoPathError(f"no path from {start} to {dest}")
    return best_path, best_cost


def max_average_gvi_path(
    graph: WeightedGraph,
    start: NodeId,
    dest: NodeId,
    *,
    max_nodes: int = BRUTE_FORCE_CAP,
) -> tuple[list[NodeId], float]:
    """Exhaustive max-mean-GVI simple path (contrast objective).

    The mean is not monotone along a path, so every simple path is
    enumerated.  Ties break toward fewer edges, then lexicographic order.
    """
    _check_brute_force_size(graph, max_nodes)
    if start == dest:
        raise SameNodeError("start and destination are the same node")
    n = graph.n
    gvi = graph.gvi
    best_key: tuple[float, int, tuple[int, ...]] | None = None
    best: tuple[list[int], float] | None = None
    on_path = [False] * n
    on_path[start] = True
    path = [start]
    gvis: list[float] = []

    def visit(u: int) -> None:
        nonlocal best_key, best
        if u == dest:
            avg = math.fsum(gvis) / len(gvis)
            key = (-avg, len(gvis), tuple(path))
            if best_key is None or key < best_key:
                best_key = key
                best = (path.copy(), avg)
            return
        for v in range(n):
            if v != u and not on_path[v] and graph.has_edge(u, v):
                on_path[v] = True
                path.append(v)
                gvis.append(float(gvi[u, v]))
                visit(v)
                gvis.pop()
                path.pop()
                on_path[v] = False

    visit(start)
    if best is None:
        raise NoPathError(f"no path from {start} to {dest}")
    return best

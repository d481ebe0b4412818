"""GeoJSON export of GVI node maps, line maps, and routes.

Documents are rendered with a fixed construction order and compact
separators so identical inputs produce identical bytes across the CLI
and the HTTP service.  Numeric GVI properties are rounded to two
decimals (percent scale); coordinates keep full precision.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import IoFailureError, UnknownNodeError
from .gvi import GviBand, classify_band
from .network import NodeId, StreetNetwork
from .routing import RoutePlan

# Fixed 4-band color ramp (red -> deep green) for any GeoJSON viewer.
BAND_COLORS: dict[GviBand, str] = {
    GviBand.LOW: "#d73027",
    GviBand.MODERATE: "#fdae61",
    GviBand.GOOD: "#a6d96a",
    GviBand.SATISFIED: "#1a9850",
}


def _point(lon: float, lat: float, properties: dict) -> dict:
    return {
        "type": "Feature",
        "geometry": {"type": "Point", "coordinates": [lon, lat]},
        "properties": properties,
    }


def _line(coords: list[list[float]], properties: dict) -> dict:
    return {
        "type": "Feature",
        "geometry": {"type": "LineString", "coordinates": coords},
        "properties": properties,
    }


def _band_props(gvi_value: float | None) -> dict:
    if gvi_value is None:
        return {"band": None, "color": None}
    band = classify_band(gvi_value)
    return {"band": band.label, "color": BAND_COLORS[band]}


def network_feature_collection(
    network: StreetNetwork,
    node_gvis: dict[NodeId, float],
    edge_table: list[tuple[NodeId, NodeId, float]],
) -> dict:
    """Node map plus line map: one point per valid node, one line per edge entry."""
    features: list[dict] = []
    for node in network.nodes:
        if not node.valid:
            continue
        value = node_gvis.get(node.id)
        props = {"id": network.external_ids[node.id]}
        props["gvi_avg"] = None if value is None else round(value, 2)
        props.update(_band_props(value))
        features.append(_point(node.lon, node.lat, props))
    for u, v, gvi in edge_table:
        a, b = network.nodes[u], network.nodes[v]
        props = {
            "u": network.external_ids[u],
            "v": network.external_ids[v],
            "gvi": round(gvi, 2),
        }
        props.update(_band_props(gvi))
        features.append(_line([[a.lon, a.lat], [b.lon, b.lat]], props))
    return {"type": "FeatureCollection", "features": features}


def route_feature_collection(route: RoutePlan, network: StreetNetwork) -> dict:
    """One line through the route plus start and destination points."""
    for node in route.nodes:
        if not 0 <= node < network.n:
            raise UnknownNodeError(f"route node {node} not in network")
    coords = [[network.nodes[u].lon, network.nodes[u].lat] for u in route.nodes]
    line_props = {
        "avg_gvi": round(route.avg_gvi, 2),
        "node_count": route.node_count,
        "band": route.band.label,
        "color": BAND_COLORS[route.band],
    }
    start, dest = route.nodes[0], route.nodes[-1]
    features = [
        _line(coords, line_props),
        _point(
            network.nodes[start].lon,
            network.nodes[start].lat,
            {"id": network.external_ids[start], "role": "start"},
        ),
        _point(
            network.nodes[dest].lon,
            network.nodes[dest].lat,
            {"id": network.external_ids[dest], "role": "destination"},
        ),
    ]
    return {"type": "FeatureCollection", "features": features}


def render_geojson(document: dict) -> str:
    return json.dumps(document, ensure_ascii=False, separators=(",", ":"))


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc


def export_network_geojson(
    network: StreetNetwork,
    node_gvis: dict[NodeId, float],
    edge_table: list[tuple[NodeId, NodeId, float]],
    path: str | Path,
) -> str:
    text = render_geojson(network_feature_collection(network, node_gvis, edge_table))
    _write(path, text)
    return text


def export_route_geojson(route: RoutePlan, network: StreetNetwork, path: str | Path) -> str:
    text = render_geojson(route_feature_collection(route, network))
    _write(path, text)
    return text

"""Read-only HTTP query service over a loaded archive.

The archive is loaded once at startup and never mutated, so any number
of concurrent readers can share it without locking.  Responses keep a
stable field order; GeoJSON endpoints return the exact bytes the CLI
export produces for the same archive.
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import NoPathError, UnknownNodeError
from .export import network_feature_collection, render_geojson, route_feature_collection
from .gvi import GviBand, classify_band, gvi_distribution
from .routing import greenest_path
from .store import LoadedArchive, load_apsp

GEOJSON_MEDIA_TYPE = "application/geo+json"


def create_app(archive: LoadedArchive | None = None, *, cors: bool = False) -> FastAPI:
    app = FastAPI(title="greenroute service")
    if cors:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=["*"],
            allow_methods=["GET"],
            allow_headers=["*"],
        )
    state = {"archive": archive}
    id_index: dict[str, int] = (
        {} if archive is None else {str(ext): i for i, ext in enumerate(archive.external_ids)}
    )

    def loaded() -> LoadedArchive | None:
        return state["archive"]

    def resolve(raw: str) -> int:
        node = id_index.get(raw)
        if node is None:
            raise UnknownNodeError(f"unknown node id: {raw!r}")
        return node

    def empty_response() -> JSONResponse:
        return JSONResponse(status_code=503, content={"code": "empty", "error": "no archive loaded"})

    @app.get("/health")
    def health() -> dict:
        bundle = loaded()
        if bundle is None:
            return {"status": "empty"}
        return {
            "status": "ok",
            "n": bundle.apsp.n,
            "directed": bundle.directed,
            "build_timestamp": bundle.build_timestamp,
        }

    @app.get("/nodes")
    def nodes():
        bundle = loaded()
        if bundle is None:
            return empty_response()
        out = []
        for node in bundle.network.nodes:
            if not node.valid:
                continue
            value = bundle.node_gvis.get(node.id)
            out.append(
                {
                    "id": bundle.external_ids[node.id],
                    "lat": node.lat,
                    "lon": node.lon,
                    "gvi_avg": None if value is None else round(value, 2),
                    "band": None if value is None else classify_band(value).label,
                }
            )
        return out

    @app.get("/route")
    def route(
        from_id: str | None = Query(None, alias="from"),
        to_id: str | None = Query(None, alias="to"),
    ):
        bundle = loaded()
        if bundle is None:
            return empty_response()
        if not from_id or not to_id:
            return JSONResponse(
                status_code=400,
                content={"code": "missing_params", "error": "from and to are required"},
            )
        if from_id == to_id:
            return JSONResponse(
                status_code=400,
                content={"code": "same_node", "error": "from and to must differ"},
            )
        try:
            start = resolve(from_id)
            dest = resolve(to_id)
        except UnknownNodeError as exc:
            return JSONResponse(status_code=404, content={"code": "unknown_node", "error": str(exc)})
        try:
            plan = greenest_path(bundle.apsp, bundle.graph, start, dest)
        except NoPathError as exc:
            return JSONResponse(status_code=409, content={"code": "no_path", "error": str(exc)})
        doc = route_feature_collection(plan, bundle.network)
        doc["summary"] = {
            "from": bundle.external_ids[start],
            "to": bundle.external_ids[dest],
            "nodes": [bundle.external_ids[u] for u in plan.nodes],
            "node_count": plan.node_count,
            "avg_gvi": round(plan.avg_gvi, 2),
            "band": plan.band.label,
            "total_weight": round(plan.total_weight, 2),
        }
        return Response(content=render_geojson(doc), media_type=GEOJSON_MEDIA_TYPE)

    @app.get("/stats")
    def stats():
        bundle = loaded()
        if bundle is None or not bundle.node_gvis:
            return empty_response()
        dist = gvi_distribution(list(bundle.node_gvis.values()))
        return {
            "total": dist.total,
            "bands": [
                {
                    "band": band.label,
                    "range": band.range_label,
                    "count": dist.counts[band],
                    "percent": round(dist.percents[band], 2),
                }
                for band in GviBand
            ],
        }

    @app.get("/network.geojson")
    def network_geojson():
        bundle = loaded()
        if bundle is None:
            return empty_response()
        doc = network_feature_collection(
            bundle.network, bundle.node_gvis, bundle.graph.edge_entries()
        )
        return Response(content=render_geojson(doc), media_type=GEOJSON_MEDIA_TYPE)

    return app


def create_app_from_path(archive_path: str, *, cors: bool = False) -> FastAPI:
    return create_app(load_apsp(archive_path), cors=cors)

"""Greenest-route engine: street-level greenery indexing and best-GVI paths."""

from .errors import (
    ChecksumMismatchError,
    CoincidentNodesError,
    CoordinateOutOfRangeError,
    DanglingEndpointError,
    DataError,
    DimensionMismatchError,
    DuplicateEdgeConflictError,
    DuplicateHeadingError,
    EmptyInputError,
    EmptyObservationSetError,
    GraphTooLargeError,
    GreenRouteError,
    IndexOutOfBoundsError,
    IoFailureError,
    MalformedDocumentError,
    MissingNodeGviError,
    MixedNodeIdsError,
    NoClassesPresentError,
    NoObservationsError,
    NoPathError,
    OutOfRangeError,
    ResourceLimitError,
    SameNodeError,
    SelfLoopError,
    TooLargeForBruteForceError,
    UnknownNodeError,
    VersionUnsupportedError,
)
from .export import (
    BAND_COLORS,
    export_network_geojson,
    export_route_geojson,
    network_feature_collection,
    route_feature_collection,
)
from .graph import (
    AssignmentMode,
    EdgeGviAssignment,
    EdgeGviTable,
    WeightedGraph,
    assign_edge_gvi_directional,
    assign_edge_gvi_undirected,
    build_adjacency_matrix,
    parse_edge_table,
    transform_weight,
)
from .gvi import (
    BandDistribution,
    ClassRaster,
    ConfusionCounts,
    GreeneryClassSet,
    GviBand,
    NodeGvi,
    ViewObservation,
    classify_band,
    compute_iou,
    compute_view_gvi,
    confusion_counts,
    gvi_distribution,
    mean_iou,
    node_gvi,
    parse_class_table,
    parse_observation_table,
    parse_raster,
)
from .network import (
    GeoNode,
    StreetEdge,
    StreetNetwork,
    edge_bearing,
    parse_network,
    serialize_network,
)
from .routing import (
    ApspResult,
    RoutePlan,
    dijkstra,
    enumerate_best_path,
    floyd_warshall,
    floyd_warshall_blocked,
    greenest_path,
    max_average_gvi_path,
    reconstruct_path,
)
from .store import LoadedArchive, load_apsp, save_apsp

__version__ = "0.1.0"

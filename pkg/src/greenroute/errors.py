"""Exception taxonomy shared by all greenroute modules.

The grouping mirrors the CLI exit-code contract: DataError -> 3,
NoPathError -> 4, ResourceLimitError -> 5.
"""


class GreenRouteError(Exception):
    """Base class for all errors raised by this package."""


class DataError(GreenRouteError):
    """Invalid, inconsistent, or unreadable input data."""


# -- network ingestion ------------------------------------------------------

class MalformedDocumentError(DataError):
    pass


class DanglingEndpointError(DataError):
    pass


class SelfLoopError(DataError):
    pass


class CoordinateOutOfRangeError(DataError):
    pass


class CoincidentNodesError(DataError):
    pass


class UnknownNodeError(DataError):
    pass


# -- greenery index ---------------------------------------------------------

class EmptyObservationSetError(DataError):
    pass


class MixedNodeIdsError(DataError):
    pass


class DuplicateHeadingError(DataError):
    pass


class OutOfRangeError(DataError):
    pass


class EmptyInputError(DataError):
    pass


class DimensionMismatchError(DataError):
    pass


class NoClassesPresentError(DataError):
    pass


# -- graph construction -----------------------------------------------------

class MissingNodeGviError(DataError):
    pass


class NoObservationsError(DataError):
    pass


class IndexOutOfBoundsError(DataError):
    pass


class DuplicateEdgeConflictError(DataError):
    pass


# -- routing ----------------------------------------------------------------

class NoPathError(GreenRouteError):
    pass


class SameNodeError(DataError):
    pass


class ResourceLimitError(GreenRouteError):
    pass


class GraphTooLargeError(ResourceLimitError):
    pass


class TooLargeForBruteForceError(ResourceLimitError):
    pass


# -- persistence ------------------------------------------------------------

class IoFailureError(GreenRouteError):
    pass


class ChecksumMismatchError(DataError):
    pass


class VersionUnsupportedError(DataError):
    pass

"""Green View Index computation and segmentation metrics.

Per-view GVI is the greenery-pixel share of a segmented street image,
per-node GVI the arithmetic mean over that node's view headings.  Node
values classify into four satisfaction bands.  IoU metrics evaluate
segmentation rasters against labels.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatchError,
    DuplicateHeadingError,
    EmptyInputError,
    EmptyObservationSetError,
    MalformedDocumentError,
    MixedNodeIdsError,
    NoClassesPresentError,
    OutOfRangeError,
)
from .network import NodeId

DEFAULT_CLASS_COUNT = 19

# Index -> name table shipped with the raster format (19 landscape classes).
DEFAULT_CLASS_NAMES: tuple[str, ...] = (
    "road",
    "sidewalk",
    "building",
    "wall",
    "fence",
    "pole",
    "traffic light",
    "traffic sign",
    "vegetation",
    "terrain",
    "sky",
    "person",
    "rider",
    "car",
    "truck",
    "bus",
    "train",
    "motorcycle",
    "bicycle",
)

DEFAULT_GREENERY_NAMES = ("vegetation", "terrain")


class GviBand(enum.IntEnum):
    """Satisfaction bands partitioning [0, 100]: [0,10), [10,18), [18,25), [25,100]."""

    LOW = 0
    MODERATE = 1
    GOOD = 2
    SATISFIED = 3

    @property
    def label(self) -> str:
        return _BAND_LABELS[self]

    @property
    def range_label(self) -> str:
        return _BAND_RANGES[self]


_BAND_LABELS = {
    GviBand.LOW: "Low",
    GviBand.MODERATE: "Moderate",
    GviBand.GOOD: "Good",
    GviBand.SATISFIED: "Satisfied",
}

_BAND_RANGES = {
    GviBand.LOW: "0-10%",
    GviBand.MODERATE: "10-18%",
    GviBand.GOOD: "18-25%",
    GviBand.SATISFIED: "25%+",
}

_BAND_UPPER_BOUNDS = ((10.0, GviBand.LOW), (18.0, GviBand.MODERATE), (25.0, GviBand.GOOD))


@dataclass(frozen=True)
class ClassRaster:
    """Segmented image: a grid of class indices in [0, num_classes)."""

    width: int
    height: int
    pixels: np.ndarray
    num_classes: int = DEFAULT_CLASS_COUNT

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise MalformedDocumentError("raster dimensions must be positive")
        px = np.asarray(self.pixels)
        if px.shape != (self.height, self.width):
            raise DimensionMismatchError(
                f"pixel grid shape {px.shape} != (height={self.height}, width={self.width})"
            )
        if px.size and (px.min() < 0 or px.max() >= self.num_classes):
            raise OutOfRangeError(
                f"pixel class indices must lie in [0, {self.num_classes})"
            )
        object.__setattr__(self, "pixels", px)

    @property
    def total_pixels(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class GreeneryClassSet:
    """Class indices counted as greenery (vegetation and terrain by default)."""

    classes: frozenset[int]

    def __post_init__(self) -> None:
        if not self.classes:
            raise NoClassesPresentError("greenery class set is empty")
        object.__setattr__(self, "classes", frozenset(int(c) for c in self.classes))

    @classmethod
    def from_class_table(
        cls, table: dict[int, str], names: tuple[str, ...] = DEFAULT_GREENERY_NAMES
    ) -> "GreeneryClassSet":
        wanted = {n.lower() for n in names}
        return cls(frozenset(i for i, name in table.items() if name.lower() in wanted))


DEFAULT_CLASS_TABLE: dict[int, str] = dict(enumerate(DEFAULT_CLASS_NAMES))

DEFAULT_GREENERY_CLASSES = GreeneryClassSet.from_class_table(DEFAULT_CLASS_TABLE)


@dataclass(frozen=True)
class ViewObservation:
    """One heading's greenery measurement: pixel counts or a direct percent."""

    node: NodeId
    heading_deg: float
    greenery_pixels: int | None = None
    total_pixels: int | None = None
    gvi_percent: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.heading_deg < 360.0:
            raise OutOfRangeError(f"heading {self.heading_deg} outside [0, 360)")
        has_counts = self.greenery_pixels is not None or self.total_pixels is not None
        has_percent = self.gvi_percent is not None
        if has_counts == has_percent:
            raise MalformedDocumentError(
                "observation needs either pixel counts or a direct percent, not both"
            )
        if has_counts:
            if self.greenery_pixels is None or self.total_pixels is None:
                raise MalformedDocumentError("pixel counts need both greenery and total")
            if self.total_pixels < 1 or self.greenery_pixels < 0:
                raise OutOfRangeError("pixel counts out of range")
            if self.greenery_pixels > self.total_pixels:
                raise OutOfRangeError("greenery pixels exceed total pixels")
        elif not 0.0 <= self.gvi_percent <= 100.0:
            raise OutOfRangeError(f"gvi percent {self.gvi_percent} outside [0, 100]")

    @property
    def gvi(self) -> float:
        """The view's GVI percent, from whichever form was supplied."""
        if self.gvi_percent is not None:
            return self.gvi_percent
        return (100 * self.greenery_pixels) / self.total_pixels


@dataclass(frozen=True)
class NodeGvi:
    """Per-node aggregate: heading -> GVI percent, plus their mean."""

    node: NodeId
    per_heading: dict[float, float]
    gvi_avg: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.per_heading:
            raise EmptyObservationSetError(f"node {self.node} has no headings")
        avg = math.fsum(self.per_heading.values()) / len(self.per_heading)
        object.__setattr__(self, "gvi_avg", avg)


@dataclass(frozen=True)
class ConfusionCounts:
    """Single-class pixel confusion against a label raster."""

    tp: int
    fp: int
    fn: int


def compute_view_gvi(raster: ClassRaster, greenery: GreeneryClassSet) -> float:
    """GVI percent of one segmented view: 100 * greenery pixels / all pixels."""
    count = count_greenery_pixels(raster, greenery)
    # 100*count is exact in int; the single division rounds correctly.
    return (100 * count) / raster.total_pixels


def count_greenery_pixels(raster: ClassRaster, greenery: GreeneryClassSet) -> int:
    return int(np.isin(raster.pixels, sorted(greenery.classes)).sum())


def node_gvi(observations: list[ViewObservation]) -> NodeGvi:
    """Aggregate one node's view observations into its average GVI.

    The mean uses exact summation (math.fsum), so the result is invariant
    under observation order.
    """
    if not observations:
        raise EmptyObservationSetError("no observations given")
    node = observations[0].node
    if any(o.node != node for o in observations):
        raise MixedNodeIdsError("observations span multiple nodes")
    per_heading: dict[float, float] = {}
    for obs in observations:
        if obs.heading_deg in per_heading:
            raise DuplicateHeadingError(
                f"node {node} has duplicate heading {obs.heading_deg}"
            )
        per_heading[obs.heading_deg] = obs.gvi
    return NodeGvi(node=node, per_heading=per_heading)


def classify_band(gvi_percent: float) -> GviBand:
    """Band for a GVI percent; boundaries are low-inclusive half-open."""
    if not 0.0 <= gvi_percent <= 100.0:
        raise OutOfRangeError(f"gvi {gvi_percent} outside [0, 100]")
    for upper, band in _BAND_UPPER_BOUNDS:
        if gvi_percent < upper:
            return band
    return GviBand.SATISFIED


@dataclass(frozen=True)
class BandDistribution:
    counts: dict[GviBand, int]
    total: int

    @property
    def percents(self) -> dict[GviBand, float]:
        return {band: 100.0 * c / self.total for band, c in self.counts.items()}


def gvi_distribution(node_gvis: list) -> BandDistribution:
    """Band counts and percentages over node GVI values.

    Accepts NodeGvi records or bare percent values.
    """
    if not node_gvis:
        raise EmptyInputError("no node GVI values")
    counts = {band: 0 for band in GviBand}
    for item in node_gvis:
        value = item.gvi_avg if isinstance(item, NodeGvi) else float(item)
        counts[classify_band(value)] += 1
    return BandDistribution(counts=counts, total=len(node_gvis))


def confusion_counts(pred: ClassRaster, label: ClassRaster, class_index: int) -> ConfusionCounts:
    if pred.pixels.shape != label.pixels.shape:
        raise DimensionMismatchError(
            f"raster shapes differ: {pred.pixels.shape} vs {label.pixels.shape}"
        )
    in_pred = pred.pixels == class_index
    in_label = label.pixels == class_index
    tp = int((in_pred & in_label).sum())
    fp = int((in_pred & ~in_label).sum())
    fn = int((~in_pred & in_label).sum())
    return ConfusionCounts(tp=tp, fp=fp, fn=fn)


def compute_iou(pred: ClassRaster, label: ClassRaster, class_index: int) -> float:
    """Intersection-over-union TP / (TP + FP + FN) for one class.

    A class absent from both rasters scores 1.0 (empty masks are identical).
    """
    c = confusion_counts(pred, label, class_index)
    denom = c.tp + c.fp + c.fn
    if denom == 0:
        return 1.0
    return c.tp / denom


def mean_iou(pred: ClassRaster, label: ClassRaster, classes: set[int]) -> float:
    """Mean per-class IoU over the classes present in either raster."""
    ious = []
    for class_index in sorted(classes):
        c = confusion_counts(pred, label, class_index)
        if c.tp + c.fp + c.fn > 0:
            ious.append(c.tp / (c.tp + c.fp + c.fn))
    if not ious:
        raise NoClassesPresentError("none of the classes appear in either raster")
    return math.fsum(ious) / len(ious)


# -- document formats --------------------------------------------------------

def parse_raster(text: str) -> ClassRaster:
    """Read the raster document: header "W H C", then H rows of W indices."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedDocumentError("empty raster document")
    header = lines[0].split()
    if len(header) != 3:
        raise MalformedDocumentError('raster header must be "W H C"')
    try:
        width, height, num_classes = (int(tok) for tok in header)
    except ValueError as exc:
        raise MalformedDocumentError(f"bad raster header: {exc}") from None
    rows = lines[1:]
    if len(rows) != height:
        raise MalformedDocumentError(f"expected {height} pixel rows, got {len(rows)}")
    grid = []
    for row in rows:
        try:
            values = [int(tok) for tok in row.split()]
        except ValueError as exc:
            raise MalformedDocumentError(f"bad pixel value: {exc}") from None
        if len(values) != width:
            raise MalformedDocumentError(f"expected {width} pixels per row")
        grid.append(values)
    return ClassRaster(
        width=width,
        height=height,
        pixels=np.array(grid, dtype=np.int64),
        num_classes=num_classes,
    )


def format_raster(raster: ClassRaster) -> str:
    lines = [f"{raster.width} {raster.height} {raster.num_classes}"]
    lines += [" ".join(str(int(p)) for p in row) for row in raster.pixels]
    return "\n".join(lines) + "\n"


def parse_class_table(text: str) -> dict[int, str]:
    """Read the class-table document: one "index name" pair per line."""
    table: dict[int, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise MalformedDocumentError(f"class table line {lineno} needs index and name")
        try:
            idx = int(parts[0])
        except ValueError:
            raise MalformedDocumentError(f"class table line {lineno}: bad index") from None
        if idx in table:
            raise MalformedDocumentError(f"class table repeats index {idx}")
        table[idx] = parts[1].strip()
    if not table:
        raise MalformedDocumentError("empty class table")
    return table


@dataclass(frozen=True)
class ObservationRow:
    """One observation-table row; node id still in document (external) form."""

    node_id: str
    heading_deg: float
    greenery_pixels: int | None
    total_pixels: int | None
    gvi_percent: float | None


_OBS_COLUMNS = ["node_id", "heading_deg", "greenery_pixels", "total_pixels", "gvi_percent"]


def parse_observation_table(text: str) -> list[ObservationRow]:
    """Read the observation CSV (header required).

    Rows carry pixel counts, or leave them empty and give gvi_percent.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedDocumentError("empty observation table") from None
    header = [h.strip() for h in header]
    if header[: len(_OBS_COLUMNS)] != _OBS_COLUMNS and header != _OBS_COLUMNS[:4]:
        raise MalformedDocumentError(
            f"observation header must be {','.join(_OBS_COLUMNS)}"
        )
    rows: list[ObservationRow] = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not f.strip() for f in rec):
            continue
        rec = [f.strip() for f in rec]
        rec += [""] * (len(_OBS_COLUMNS) - len(rec))
        try:
            heading = float(rec[1])
            greenery = int(rec[2]) if rec[2] else None
            total = int(rec[3]) if rec[3] else None
            percent = float(rec[4]) if rec[4] else None
        except ValueError as exc:
            raise MalformedDocumentError(f"observation row {lineno}: {exc}") from None
        rows.append(
            ObservationRow(
                node_id=rec[0],
                heading_deg=heading,
                greenery_pixels=greenery,
                total_pixels=total,
                gvi_percent=percent,
            )
        )
    return rows


def format_observation_table(rows: list[ObservationRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_OBS_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.node_id,
                r.heading_deg,
                "" if r.greenery_pixels is None else r.greenery_pixels,
                "" if r.total_pixels is None else r.total_pixels,
                "" if r.gvi_percent is None else r.gvi_percent,
            ]
        )
    return out.getvalue()

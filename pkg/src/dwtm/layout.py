"""Feature box sizing and canvas packing.

A feature's weight buys it target_area = weight * m * n pixels.  With
square monospace cells the box height (== font size) is the largest integer
whose height x (height * chars) footprint stays within the target, so
height = floor(sqrt(target_area / chars)) and length = height * chars.

Boxes are packed largest-first by a row-major first-fit scan.  A box that
fits nowhere is trimmed: font size down by one, length down by one cell
width.  Trimmed boxes are re-sorted and re-attempted against the already
marked grid until everything is placed or shrinks away entirely.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

import numpy as np

from .association import WeightTable
from .packing import find_first_fit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanvasConfig:
    width_m: int
    height_n: int

    def __post_init__(self):
        if self.width_m < 1 or self.height_n < 1:
            raise ValueError("canvas dimensions must be positive")


@dataclass(frozen=True)
class FeatureBox:
    """The rectangle a feature has earned, before or during packing.

    length == height * chars always; height + trims recovers the initial
    height, and height 0 means the feature has been trimmed out of
    existence.  weight and order ride along purely for tie-breaking.
    """

    feature: str
    chars: int
    target_area: float
    height: int
    length: int
    trims: int = 0
    weight: float = 0.0
    order: int = 0

    def __post_init__(self):
        if self.chars < 1:
            raise ValueError("chars must be >= 1")
        if self.length != self.height * self.chars:
            raise ValueError("length must equal height * chars")

    @property
    def area(self) -> int:
        return self.height * self.length


@dataclass(frozen=True)
class Placement:
    feature: str
    row: int
    col: int
    height: int
    length: int
    font_size: int
    trims: int = 0


@dataclass(frozen=True)
class Layout:
    canvas: CanvasConfig
    placements: tuple[Placement, ...]
    dropped: tuple[str, ...]


class CanvasGrid:
    """Boolean occupancy mirror of a Layout, for independent validation."""

    def __init__(self, canvas: CanvasConfig):
        self.canvas = canvas
        self.occupancy = np.zeros((canvas.height_n, canvas.width_m), dtype=bool)

    def paint(self, p: Placement) -> None:
        n, m = self.occupancy.shape
        if not (0 <= p.row and p.row + p.height <= n and 0 <= p.col and p.col + p.length <= m):
            raise ValueError(f"placement {p.feature!r} out of canvas bounds")
        block = self.occupancy[p.row : p.row + p.height, p.col : p.col + p.length]
        if block.any():
            raise ValueError(f"placement {p.feature!r} overlaps an earlier placement")
        block[:] = True

    @classmethod
    def from_layout(cls, layout: Layout) -> "CanvasGrid":
        grid = cls(layout.canvas)
        for p in layout.placements:
            grid.paint(p)
        return grid


def _sort_key(box: FeatureBox):
    # Largest realized area first; ties broken by weight, then stable order.
    return (-box.area, -box.weight, box.order)


def compute_boxes(
    weights: WeightTable,
    chars: Mapping[str, int],
    canvas: CanvasConfig,
) -> list[FeatureBox]:
    """Size one box per weighted feature and sort largest-area first.

    Features with weight 0 (degenerate) get no box at all.  A positive
    weight so small that the height floors to 0 still yields a box; the
    insertion pass sends it straight to the dropped set.
    """
    pixels = canvas.width_m * canvas.height_n
    boxes = []
    for order, (score, weight) in enumerate(zip(weights.scores, weights.weights)):
        if weight == 0.0:
            logger.warning("feature %r has zero weight; excluded from layout", score.feature)
            continue
        c = chars[score.feature]
        target_area = weight * pixels
        height = int(math.sqrt(target_area / c))
        if height == 0:
            logger.warning(
                "feature %r: weight %.3g yields no drawable height; it will be dropped",
                score.feature, weight,
            )
        boxes.append(
            FeatureBox(
                feature=score.feature,
                chars=c,
                target_area=target_area,
                height=height,
                length=height * c,
                weight=weight,
                order=order,
            )
        )
    boxes.sort(key=_sort_key)
    return boxes


def trim_box(box: FeatureBox) -> FeatureBox:
    """Shrink the font by one: height - 1, length - chars.  Height 0 is a no-op."""
    if box.height == 0:
        return box
    return replace(
        box,
        height=box.height - 1,
        length=box.length - box.chars,
        trims=box.trims + 1,
    )


def insert_boxes(boxes: Sequence[FeatureBox], canvas: CanvasConfig) -> Layout:
    """Pack boxes (pre-sorted largest first) into the canvas.

    Each pass scans the grid row-major and places every box that fits at
    the first free position.  Boxes left over are all trimmed by one,
    re-sorted by area, and retried against the unchanged grid; placed boxes
    never move.  Height strictly decreases for unplaced boxes, so the loop
    terminates with everything placed or dropped.
    """
    occ = np.zeros((canvas.height_n, canvas.width_m), dtype=np.uint8)
    placements: list[Placement] = []
    dropped: list[str] = []
    queue = list(boxes)
    while queue:
        pending: list[FeatureBox] = []
        for box in queue:
            if box.height == 0:
                dropped.append(box.feature)
                continue
            pos = find_first_fit(occ, box.height, box.length)
            if pos is None:
                pending.append(box)
                continue
            row, col = pos
            occ[row : row + box.height, col : col + box.length] = 1
            placements.append(
                Placement(
                    feature=box.feature,
                    row=row,
                    col=col,
                    height=box.height,
                    length=box.length,
                    font_size=box.height,
                    trims=box.trims,
                )
            )
        if not pending:
            break
        queue = sorted((trim_box(b) for b in pending), key=_sort_key)
    return Layout(canvas=canvas, placements=tuple(placements), dropped=tuple(dropped))


def plan_layout(weights: WeightTable, chars: Mapping[str, int], canvas: CanvasConfig) -> Layout:
    """compute_boxes + insert_boxes in one step."""
    return insert_boxes(compute_boxes(weights, chars, canvas), canvas)


def layout_to_manifest(layout: Layout, weights: Optional[WeightTable] = None) -> dict:
    """The JSON document that is the contract between layout and render."""
    return {
        "canvas": {"width": layout.canvas.width_m, "height": layout.canvas.height_n},
        "placements": [
            {
                "feature": p.feature,
                "row": p.row,
                "col": p.col,
                "height": p.height,
                "length": p.length,
                "font_size": p.font_size,
                "trims": p.trims,
            }
            for p in layout.placements
        ],
        "dropped": list(layout.dropped),
        "weights": weights.as_mapping() if weights is not None else {},
    }


def layout_from_manifest(doc: Mapping) -> Layout:
    canvas = CanvasConfig(width_m=doc["canvas"]["width"], height_n=doc["canvas"]["height"])
    placements = tuple(
        Placement(
            feature=p["feature"],
            row=p["row"],
            col=p["col"],
            height=p["height"],
            length=p["length"],
            font_size=p["font_size"],
            trims=p.get("trims", 0),
        )
        for p in doc["placements"]
    )
    return Layout(canvas=canvas, placements=placements, dropped=tuple(doc.get("dropped", ())))

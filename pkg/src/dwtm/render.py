"""Rasterize data rows into grayscale images and write the dataset tree.

Every placed feature's formatted value is drawn left-aligned inside its
placement rectangle, one square height x height glyph cell per character.
The emitted tree is <out>/<split>/<label>/<row_index>.png plus a manifest
that extends the layout manifest with per-file records.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Union

import numpy as np
from PIL import Image

from .association import WeightTable
from .errors import FormatError
from .font import glyph, scale_glyph
from .ingest import Dataset, FeatureSpec, Kind, numeric_text
from .layout import CanvasConfig, Layout, layout_to_manifest


@dataclass(frozen=True)
class RenderConfig:
    canvas: CanvasConfig
    background: int = 0
    foreground: int = 255

    def __post_init__(self):
        for level in (self.background, self.foreground):
            if not 0 <= level <= 255:
                raise ValueError("gray levels must be in 0..255")
        if self.background == self.foreground:
            raise ValueError("background and foreground must differ")


@dataclass(frozen=True)
class RenderJob:
    """One data row bound to a layout: the strings to draw, and where."""

    row_index: int
    values: Mapping[str, str]
    label: int
    layout: Layout


def format_value(value: Union[float, str], spec: FeatureSpec) -> str:
    """Render one cell as text within the feature's character budget.

    Categorical tokens pass through verbatim.  Numeric values use the
    shortest exact decimal when it fits; otherwise the fraction is rounded
    away from the right, never touching the sign or integer part (a carry
    that would change the integer part falls back to plain truncation).
    """
    if spec.kind is Kind.CATEGORICAL:
        text = str(value)
        if len(text) > spec.max_chars:
            raise FormatError(
                f"token {text!r} exceeds max_chars={spec.max_chars} for {spec.name!r}"
            )
        return text

    text = numeric_text(float(value))
    if len(text) <= spec.max_chars:
        return text
    head = text.split(".", 1)[0] if "." in text else text
    if len(head) > spec.max_chars:
        raise FormatError(
            f"integer part of {text!r} exceeds max_chars={spec.max_chars} for {spec.name!r}"
        )
    decimals = spec.max_chars - len(head) - 1
    if decimals < 1:
        return head
    rounded = f"{float(value):.{decimals}f}"
    if len(rounded) <= spec.max_chars and rounded.split(".", 1)[0] == head:
        return rounded
    return text[: spec.max_chars]  # rounding carried into the integer part


def render_row(job: RenderJob, config: RenderConfig) -> np.ndarray:
    """Draw one row onto a fresh canvas; returns a height_n x width_m uint8 array."""
    canvas = config.canvas
    img = np.full((canvas.height_n, canvas.width_m), config.background, dtype=np.uint8)
    for p in job.layout.placements:
        value = job.values[p.feature]
        cells = p.length // p.height if p.height else 0
        if len(value) > cells:
            raise FormatError(
                f"value {value!r} needs {len(value)} cells but {p.feature!r} has {cells}"
            )
        size = p.height
        for i, ch in enumerate(value):
            mask = scale_glyph(glyph(ch), size)
            block = img[p.row : p.row + size, p.col + i * size : p.col + (i + 1) * size]
            block[mask] = config.foreground
    return img


def format_row(dataset: Dataset, row_index: int) -> dict[str, str]:
    return {
        spec.name: format_value(dataset.columns[spec.name][row_index], spec)
        for spec in dataset.schema.features
    }


_UNSAFE = re.compile(r"[^A-Za-z0-9._-]")


def _dirname(label: str) -> str:
    safe = _UNSAFE.sub("_", label)
    return safe or "_"


def split_rows(row_count: int, fraction: float, seed: int) -> tuple[set[int], set[int]]:
    """Seeded shuffle, then the first round(row_count * fraction) rows train."""
    if not 0.0 < fraction <= 1.0:
        raise ValueError("split fraction must be in (0, 1]")
    perm = np.random.default_rng(seed).permutation(row_count)
    n_train = int(math.floor(row_count * fraction + 0.5))
    return set(map(int, perm[:n_train])), set(map(int, perm[n_train:]))


def emit_dataset(
    dataset: Dataset,
    layout: Layout,
    config: RenderConfig,
    split: float,
    seed: int,
    out_dir: Union[str, Path],
    weights: Optional[WeightTable] = None,
) -> dict:
    """Render every row to PNG under out_dir and write manifest.json.

    Deterministic end to end: the same dataset, layout, config, and seed
    produce a byte-identical file tree.  Returns the manifest document.
    """
    out = Path(out_dir)
    train_rows, _ = split_rows(dataset.row_count, split, seed)
    (out / "train").mkdir(parents=True, exist_ok=True)
    (out / "test").mkdir(parents=True, exist_ok=True)

    files = []
    for i in range(dataset.row_count):
        which = "train" if i in train_rows else "test"
        label = dataset.schema.class_labels[dataset.labels[i]]
        job = RenderJob(row_index=i, values=format_row(dataset, i), label=dataset.labels[i], layout=layout)
        img = render_row(job, config)
        rel = Path(which) / _dirname(label) / f"{i}.png"
        path = out / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        try:
            Image.fromarray(img, mode="L").save(path, format="PNG")
        except OSError as exc:
            raise OSError(f"failed writing {path}: {exc}") from exc
        files.append(
            {"path": rel.as_posix(), "row_index": i, "label": label, "split": which}
        )

    manifest = layout_to_manifest(layout, weights)
    manifest["files"] = files
    manifest_path = out / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return manifest

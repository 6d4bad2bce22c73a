"""Command-line orchestrator: ingest -> weights -> layout -> encode.

Flag precedence is CLI > config file > defaults.  The manifest JSON written
by `layout` is the only contract `encode`'s rendering stage relies on.

Exit codes: 0 success, 2 CSV parse error, 3 schema/config error,
4 no usable association signal, 5 I/O failure.
"""

from __future__ import annotations

import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .association import WeightTable, compute_weights
from .errors import DwtmError, SchemaError
from .ingest import Dataset, load_dataset
from .layout import CanvasConfig, compute_boxes, insert_boxes, layout_to_manifest
from .render import RenderConfig, emit_dataset

logger = logging.getLogger(__name__)

EXIT_IO = 5

EPILOG = (
    "Exit codes: 0 ok, 2 CSV parse error, 3 schema/config error, "
    "4 no association signal, 5 I/O failure."
)


@dataclass
class PipelineConfig:
    input: Optional[str] = None
    target: Optional[str] = None
    width: int = 128
    height: int = 128
    split: float = 0.8
    seed: int = 0
    out: str = "out"
    kinds: Optional[dict] = None
    missing: str = "drop"
    collapse_labels: Optional[dict] = None
    background: int = 0
    foreground: int = 255

    def validate(self) -> None:
        if self.input is None:
            raise SchemaError("no input file given (--input or config)")
        if self.target is None:
            raise SchemaError("no target column given (--target or config)")
        if not 0.0 < self.split <= 1.0:
            raise SchemaError(f"split must be in (0, 1], got {self.split}")
        if self.width < 8 or self.height < 8:
            raise SchemaError("canvas dimensions must be at least 8 pixels")


def resolve_config(config_path: Optional[str], **cli_values) -> PipelineConfig:
    """Merge defaults, config-file values, and CLI flags (CLI wins)."""
    cfg = PipelineConfig()
    if config_path:
        try:
            doc = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SchemaError(f"cannot read config {config_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"config {config_path} is not valid JSON: {exc}") from exc
        known = {f.name for f in fields(PipelineConfig)}
        for key, value in doc.items():
            if key not in known:
                raise SchemaError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for key, value in cli_values.items():
        if value is not None:
            setattr(cfg, key, value)
    cfg.validate()
    return cfg


def _load(cfg: PipelineConfig) -> Dataset:
    try:
        data = Path(cfg.input).read_bytes()
    except OSError as exc:
        raise click.exceptions.Exit(_fail(f"cannot read {cfg.input}: {exc}", EXIT_IO))
    return load_dataset(
        data,
        target=cfg.target,
        kinds=cfg.kinds,
        missing=cfg.missing,
        collapse_labels=cfg.collapse_labels,
    )


def _plan(cfg: PipelineConfig, dataset: Dataset):
    weights = compute_weights(dataset)
    canvas = CanvasConfig(width_m=cfg.width, height_n=cfg.height)
    chars = {f.name: f.max_chars for f in dataset.schema.features}
    boxes = compute_boxes(weights, chars, canvas)
    return weights, canvas, insert_boxes(boxes, canvas)


def _fail(message: str, code: int) -> int:
    click.echo(f"error: {message}", err=True)
    return code


_shared_options = [
    click.option("--input", "input_", type=str, help="CSV file to read."),
    click.option("--target", type=str, help="Name of the class column."),
    click.option("--width", type=int, help="Canvas width in pixels."),
    click.option("--height", type=int, help="Canvas height in pixels."),
    click.option("--split", type=float, help="Training fraction in (0, 1]."),
    click.option("--seed", type=int, help="Seed for the split shuffle."),
    click.option("--out", type=str, help="Output directory."),
    click.option("--config", "config_path", type=str, help="JSON config file."),
]


def shared_options(fn):
    for opt in reversed(_shared_options):
        fn = opt(fn)
    return fn


@click.group(epilog=EPILOG)
@click.version_option(version=__version__, prog_name="dwtm")
def main():
    """Turn a tabular CSV into per-row images sized by feature association."""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


def _run(fn):
    try:
        fn()
    except DwtmError as exc:
        raise click.exceptions.Exit(_fail(str(exc), exc.exit_code))
    except OSError as exc:
        raise click.exceptions.Exit(_fail(str(exc), EXIT_IO))


@main.command()
@shared_options
@click.option("--json", "as_json", is_flag=True, help="Emit the table as JSON.")
def weights(input_, target, width, height, split, seed, out, config_path, as_json):
    """Print each feature's association score and normalized weight."""

    def go():
        cfg = resolve_config(
            config_path, input=input_, target=target, width=width,
            height=height, split=split, seed=seed, out=out,
        )
        dataset = _load(cfg)
        table = compute_weights(dataset)
        if as_json:
            doc = [
                {
                    "feature": s.feature,
                    "method": s.method,
                    "raw": s.raw,
                    "magnitude": s.magnitude,
                    "weight": w,
                    "degenerate": s.degenerate,
                }
                for s, w in zip(table.scores, table.weights)
            ]
            click.echo(json.dumps({"features": doc, "total": table.total}, indent=2))
            return
        header = f"{'feature':<24} {'method':<10} {'raw':>10} {'magnitude':>10} {'weight':>8}"
        click.echo(header)
        click.echo("-" * len(header))
        for s, w in zip(table.scores, table.weights):
            click.echo(
                f"{s.feature:<24} {s.method:<10} {s.raw:>10.6f} {s.magnitude:>10.6f} {w:>8.4f}"
            )

    _run(go)


@main.command()
@shared_options
def layout(input_, target, width, height, split, seed, out, config_path):
    """Compute the canvas plan and write <out>/manifest.json."""

    def go():
        cfg = resolve_config(
            config_path, input=input_, target=target, width=width,
            height=height, split=split, seed=seed, out=out,
        )
        dataset = _load(cfg)
        weight_table, _, plan = _plan(cfg, dataset)
        manifest = layout_to_manifest(plan, weight_table)
        out_dir = Path(cfg.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
        click.echo(f"wrote {path} ({len(plan.placements)} placed, {len(plan.dropped)} dropped)")

    _run(go)


@main.command()
@shared_options
def encode(input_, target, width, height, split, seed, out, config_path):
    """Render every row to PNG under <out>/train and <out>/test."""

    def go():
        cfg = resolve_config(
            config_path, input=input_, target=target, width=width,
            height=height, split=split, seed=seed, out=out,
        )
        dataset = _load(cfg)
        weight_table, canvas, plan = _plan(cfg, dataset)
        render_cfg = RenderConfig(
            canvas=canvas, background=cfg.background, foreground=cfg.foreground
        )
        manifest = emit_dataset(
            dataset, plan, render_cfg, split=cfg.split, seed=cfg.seed,
            out_dir=cfg.out, weights=weight_table,
        )
        n_train = sum(1 for f in manifest["files"] if f["split"] == "train")
        click.echo(
            f"encoded {dataset.row_count} rows -> {cfg.out} "
            f"({n_train} train / {dataset.row_count - n_train} test)"
        )

    _run(go)


if __name__ == "__main__":
    main()

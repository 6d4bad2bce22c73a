import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from PIL import Image

from dwtm import (
    CanvasConfig,
    FeatureSpec,
    FormatError,
    Kind,
    Layout,
    Placement,
    RenderConfig,
    RenderJob,
    compute_weights,
    emit_dataset,
    format_row,
    format_value,
    load_dataset,
    numeric_text,
    plan_layout,
    render_row,
    split_rows,
)


def spec(kind, max_chars, name="x"):
    return FeatureSpec(name, kind, max_chars)


class TestFormatValue:
    def test_categorical_verbatim(self):
        assert format_value("Yes", spec(Kind.CATEGORICAL, 3)) == "Yes"
        assert format_value("a b", spec(Kind.CATEGORICAL, 5)) == "a b"

    def test_categorical_overflow_rejected(self):
        with pytest.raises(FormatError, match="max_chars"):
            format_value("toolong", spec(Kind.CATEGORICAL, 3))

    def test_numeric_natural_form(self):
        assert format_value(150.0, spec(Kind.NUMERIC, 3)) == "150"
        assert format_value(3.5, spec(Kind.NUMERIC, 3)) == "3.5"
        assert format_value(-0.25, spec(Kind.NUMERIC, 5)) == "-0.25"

    def test_fraction_rounded_to_fit(self):
        assert format_value(3.14159, spec(Kind.NUMERIC, 4)) == "3.14"
        assert format_value(2.678, spec(Kind.NUMERIC, 3)) == "2.7"
        assert format_value(-3.14159, spec(Kind.NUMERIC, 5)) == "-3.14"

    def test_no_room_for_fraction_keeps_integer_part(self):
        assert format_value(12.7, spec(Kind.NUMERIC, 2)) == "12"
        assert format_value(12.7, spec(Kind.NUMERIC, 3)) == "12"

    def test_integer_part_overflow_rejected(self):
        with pytest.raises(FormatError, match="integer part"):
            format_value(12345.6, spec(Kind.NUMERIC, 3))

    def test_carry_into_integer_part_falls_back_to_truncation(self):
        # rounding 9.99 to one decimal gives 10.0, which changes the
        # integer part, so the tail is cut instead
        assert format_value(9.99, spec(Kind.NUMERIC, 3)) == "9.9"

    @settings(max_examples=150)
    @given(
        st.floats(allow_nan=False, allow_infinity=False),
        st.integers(1, 12),
    )
    def test_result_always_within_budget(self, value, budget):
        s = spec(Kind.NUMERIC, budget)
        try:
            out = format_value(value, s)
        except FormatError:
            head = numeric_text(value).split(".", 1)[0]
            assert len(head) > budget
            return
        assert 1 <= len(out) <= budget
        # the sign and integer part always survive intact
        assert out.startswith(numeric_text(value).split(".", 1)[0][: len(out)])


class TestRenderRow:
    def canvas128(self):
        return RenderConfig(canvas=CanvasConfig(128, 128))

    def layout_one(self, height, chars, feature="f"):
        return Layout(
            canvas=CanvasConfig(128, 128),
            placements=(
                Placement(
                    feature,
                    row=0,
                    col=0,
                    height=height,
                    length=height * chars,
                    font_size=height,
                ),
            ),
            dropped=(),
        )

    def test_empty_layout_is_uniform_background(self):
        layout = Layout(canvas=CanvasConfig(32, 16), placements=(), dropped=())
        img = render_row(RenderJob(0, {}, 0, layout), RenderConfig(CanvasConfig(32, 16)))
        assert img.shape == (16, 32)
        assert img.dtype == np.uint8
        assert (img == 0).all()

    def test_ink_stays_inside_placement(self):
        layout = self.layout_one(64, 2)
        job = RenderJob(0, {"f": "63"}, 0, layout)
        img = render_row(job, self.canvas128())
        ys, xs = np.nonzero(img)
        assert len(ys) > 0
        assert ys.max() < 64
        assert xs.max() < 128
        # both glyph cells carry ink
        assert (xs < 64).any() and (xs >= 64).any()

    def test_levels_are_exactly_background_and_foreground(self):
        layout = self.layout_one(16, 3)
        job = RenderJob(0, {"f": "1.5"}, 0, layout)
        img = render_row(job, self.canvas128())
        assert set(np.unique(img)) == {0, 255}

    def test_custom_levels(self):
        layout = self.layout_one(16, 3)
        job = RenderJob(0, {"f": "1.5"}, 0, layout)
        default = render_row(job, self.canvas128())
        inverted = render_row(
            job, RenderConfig(CanvasConfig(128, 128), background=250, foreground=9)
        )
        assert set(np.unique(inverted)) == {9, 250}
        assert ((default == 255) == (inverted == 9)).all()

    def test_short_value_leaves_trailing_cells_blank(self):
        layout = self.layout_one(16, 3)
        img = render_row(RenderJob(0, {"f": "7"}, 0, layout), self.canvas128())
        assert img[:, 16:].max() == 0
        assert img[:16, :16].any()

    def test_value_longer_than_box_rejected(self):
        layout = self.layout_one(8, 2)
        with pytest.raises(FormatError, match="cells"):
            render_row(RenderJob(0, {"f": "abc"}, 0, layout), self.canvas128())

    def test_deterministic(self):
        layout = self.layout_one(24, 2)
        job = RenderJob(0, {"f": "42"}, 0, layout)
        a = render_row(job, self.canvas128())
        b = render_row(job, self.canvas128())
        assert np.array_equal(a, b)

    def test_distinct_values_render_distinct_images(self):
        layout = self.layout_one(16, 4)
        cfg = self.canvas128()
        seen = {}
        for text in ("1", "2", "1.5", "-1.5", "abcd", "abc", "a.bc", "A"):
            img = render_row(RenderJob(0, {"f": text}, 0, layout), cfg)
            key = img.tobytes()
            assert key not in seen, f"{text!r} collides with {seen.get(key)!r}"
            seen[key] = text

    def test_trailing_space_is_invisible(self):
        # the space glyph is genuinely blank, so trailing padding does not
        # change the picture; only interior characters distinguish tokens
        layout = self.layout_one(16, 3)
        cfg = self.canvas128()
        a = render_row(RenderJob(0, {"f": "ab"}, 0, layout), cfg)
        b = render_row(RenderJob(0, {"f": "ab "}, 0, layout), cfg)
        assert np.array_equal(a, b)

    def test_multiple_placements_do_not_bleed(self):
        layout = Layout(
            canvas=CanvasConfig(64, 32),
            placements=(
                Placement("a", row=0, col=0, height=16, length=16, font_size=16),
                Placement("b", row=16, col=0, height=16, length=16, font_size=16),
            ),
            dropped=(),
        )
        cfg = RenderConfig(CanvasConfig(64, 32))
        img = render_row(RenderJob(0, {"a": "8", "b": " "}, 0, layout), cfg)
        assert img[:16, :16].any()
        assert img[16:, :].max() == 0


class TestRenderConfig:
    def test_level_range_checked(self):
        with pytest.raises(ValueError):
            RenderConfig(CanvasConfig(8, 8), background=-1)
        with pytest.raises(ValueError):
            RenderConfig(CanvasConfig(8, 8), foreground=256)

    def test_equal_levels_rejected(self):
        with pytest.raises(ValueError):
            RenderConfig(CanvasConfig(8, 8), background=7, foreground=7)


class TestSplitRows:
    def test_frozen_small_case(self):
        # rng(0).permutation(5) == [2, 4, 3, 0, 1]; 5 * 0.6 rounds to 3
        train, test = split_rows(5, 0.6, seed=0)
        assert train == {2, 4, 3}
        assert test == {0, 1}

    def test_frozen_ten_rows(self):
        # rng(7).permutation(10) ends with row 9; 10 * 0.85 rounds to 9
        train, test = split_rows(10, 0.85, seed=7)
        assert test == {9}

    def test_partition(self):
        train, test = split_rows(100, 0.8, seed=3)
        assert train | test == set(range(100))
        assert train & test == set()
        assert len(train) == 80

    def test_fraction_one_keeps_everything_in_train(self):
        train, test = split_rows(12, 1.0, seed=1)
        assert len(train) == 12 and test == set()

    def test_rounding_to_nearest(self):
        train, _ = split_rows(150, 0.85, seed=0)
        assert len(train) == 128  # 127.5 rounds up

    def test_deterministic_per_seed(self):
        assert split_rows(50, 0.7, seed=9) == split_rows(50, 0.7, seed=9)
        assert split_rows(50, 0.7, seed=9) != split_rows(50, 0.7, seed=10)

    @pytest.mark.parametrize("bad", [0.0, -0.2, 1.0001])
    def test_invalid_fraction_rejected(self, bad):
        with pytest.raises(ValueError):
            split_rows(10, bad, seed=0)


class TestEmitDataset:
    @pytest.fixture()
    def toy(self, worked_example_csv):
        ds = load_dataset(worked_example_csv, target="class")
        weights = compute_weights(ds)
        chars = {f.name: f.max_chars for f in ds.schema.features}
        canvas = CanvasConfig(64, 64)
        layout = plan_layout(weights, chars, canvas)
        return ds, weights, layout, RenderConfig(canvas)

    def test_tree_and_manifest(self, toy, tmp_path):
        ds, weights, layout, cfg = toy
        manifest = emit_dataset(ds, layout, cfg, split=0.75, seed=3, out_dir=tmp_path, weights=weights)
        files = manifest["files"]
        assert len(files) == 8
        assert sum(1 for f in files if f["split"] == "train") == 6
        assert sum(1 for f in files if f["split"] == "test") == 2
        for entry in files:
            png = tmp_path / entry["path"]
            assert png.is_file()
            parts = entry["path"].split("/")
            assert parts[0] == entry["split"]
            assert parts[1] == entry["label"]
            assert parts[2] == f"{entry['row_index']}.png"
        on_disk = json.loads((tmp_path / "manifest.json").read_text())
        assert on_disk == manifest
        assert on_disk["canvas"] == {"width": 64, "height": 64}
        assert set(on_disk["weights"]) == {"f1", "f2", "f3"}

    def test_png_content_matches_render(self, toy, tmp_path):
        ds, weights, layout, cfg = toy
        manifest = emit_dataset(ds, layout, cfg, split=1.0, seed=0, out_dir=tmp_path)
        entry = manifest["files"][0]
        with Image.open(tmp_path / entry["path"]) as im:
            assert im.mode == "L"
            assert im.size == (64, 64)
            pixels = np.asarray(im)
        job = RenderJob(0, format_row(ds, 0), ds.labels[0], layout)
        assert np.array_equal(pixels, render_row(job, cfg))

    def test_byte_identical_reruns(self, toy, tmp_path):
        ds, weights, layout, cfg = toy
        a, b = tmp_path / "a", tmp_path / "b"
        emit_dataset(ds, layout, cfg, split=0.75, seed=11, out_dir=a, weights=weights)
        emit_dataset(ds, layout, cfg, split=0.75, seed=11, out_dir=b, weights=weights)
        files_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
        assert files_a == files_b
        for rel in files_a:
            assert (a / rel).read_bytes() == (b / rel).read_bytes()

    def test_full_train_split_leaves_empty_test_dir(self, toy, tmp_path):
        ds, weights, layout, cfg = toy
        emit_dataset(ds, layout, cfg, split=1.0, seed=0, out_dir=tmp_path)
        assert (tmp_path / "test").is_dir()
        assert list((tmp_path / "test").iterdir()) == []

    def test_label_names_sanitized_for_directories(self, tmp_path):
        ds = load_dataset(
            "x,cls\n1,a/b\n2,ok\n3,a/b\n4,ok\n", target="cls"
        )
        weights = compute_weights(ds)
        chars = {f.name: f.max_chars for f in ds.schema.features}
        canvas = CanvasConfig(32, 32)
        layout = plan_layout(weights, chars, canvas)
        manifest = emit_dataset(ds, layout, RenderConfig(canvas), 1.0, 0, tmp_path)
        assert (tmp_path / "train" / "a_b").is_dir()
        # the manifest keeps the true label even though the path is sanitized
        labels = {f["label"] for f in manifest["files"]}
        assert labels == {"a/b", "ok"}

    def test_rows_differing_in_one_feature_differ_on_canvas(self, toy):
        ds, weights, layout, cfg = toy
        # rows 0 and 4 differ in every feature; rows 0 and 2 are identical
        img = lambda i: render_row(RenderJob(i, format_row(ds, i), ds.labels[i], layout), cfg)
        assert np.array_equal(img(0), img(2))
        assert not np.array_equal(img(0), img(4))

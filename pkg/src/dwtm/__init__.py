"""dwtm: dynamic weighted tabular-to-image encoding.

Feature-association statistics decide how much canvas area each feature's
printed value receives; a first-fit packer with a trim fallback places the
boxes; each data row is rasterized into a grayscale image for CNN training.
"""

__version__ = "0.1.0"

from .association import (
    AssociationScore,
    WeightTable,
    chi_square,
    compute_weights,
    contingency_table,
    cramers_v,
    pearson_r,
)
from .errors import (
    DegenerateFeatureError,
    DegenerateTableError,
    DwtmError,
    FormatError,
    MaterializeError,
    NoSignalError,
    ParseError,
    SchemaError,
)
from .ingest import (
    Dataset,
    FeatureSpec,
    Kind,
    RawTable,
    Schema,
    apply_label_collapse,
    infer_schema,
    load_dataset,
    materialize,
    numeric_text,
    parse_csv,
    serialize_csv,
)
from .layout import (
    CanvasConfig,
    CanvasGrid,
    FeatureBox,
    Layout,
    Placement,
    compute_boxes,
    insert_boxes,
    layout_from_manifest,
    layout_to_manifest,
    plan_layout,
    trim_box,
)
from .render import (
    RenderConfig,
    RenderJob,
    emit_dataset,
    format_row,
    format_value,
    render_row,
    split_rows,
)

__all__ = [name for name in dir() if not name.startswith("_")]

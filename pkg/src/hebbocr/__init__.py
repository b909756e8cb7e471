"""Offline letter recognition with a bank of Hebbian membership neurons."""

from .errors import (
    CanvasTooSmall,
    ChecksumMismatch,
    CountOverflow,
    DimensionMismatch,
    HebbOCRError,
    MalformedHeader,
    MalformedRecord,
    NoInk,
    NoTests,
    TruncatedData,
    UnknownLabel,
    UnknownVersion,
    ValueOutOfRange,
)
from .evaluation import (
    EvalRecord,
    EvalReport,
    PlotKind,
    build_report,
    emit_plot_data,
    emit_table,
    frr,
    success_rate,
)
from .glyphgen import DistortionParams, GlyphTemplate, SplitMix64, distort, generate_dataset, render_glyph
from .hebbnet import (
    ClusterNeuron,
    Decision,
    KnowledgeBase,
    Regime,
    TrainingSample,
    classify,
    hebb_update,
    init_zero,
    net_input,
    train,
    train_epoch,
)
from .imagegrid import (
    RasterImage,
    binarize,
    crop_to_bounding_box,
    extract_features,
    parse_pnm,
    resample_to_grid,
    to_feature_vector,
)
from .kbstore import KbDiff, diff_kb, load_kb, save_kb
from .labels import LABELS, label_name, parse_label_name

__version__ = "0.1.0"

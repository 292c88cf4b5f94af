"""Python bindings for the LGCA zero-shot classification core."""
import json

from ._lgca import (
    CropParams,
    DegenerateN,
    DimMismatch,
    EmptyInput,
    Encoder,
    EncoderUnavailable,
    ImageFrame,
    InvalidParams,
    LgcaConfig,
    LgcaError,
    Region,
    RunConfig,
    ScheduleMode,
    BoundViolated,
    ConfigError,
    ManifestError,
    baseline_q_similarity,
    classify,
    entry_bound,
    expand_region,
    lgca_similarity,
    load_config,
    load_image,
    make_encoder,
    make_schedule,
    sample_crops,
    select_topk,
    softmax_weights,
)
from ._lgca import verify_bound as _verify_bound


def verify_bound(n_grid, m_grid, trials=1, q_only=False):
    """Counts LGCA work on a grid of (N, M) and returns the report as a dict."""
    return json.loads(_verify_bound(list(n_grid), list(m_grid), trials, q_only))


__all__ = [name for name in dir() if not name.startswith("_")]

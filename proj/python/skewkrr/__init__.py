"""Kernel ridge regression with response-oversampled divide and conquer.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    Model,
    effective_dimension,
    fit,
    from_json,
    generate,
    load,
    median_bandwidth,
    mse,
    oversample_plan,
    slices,
    spectrum,
    truth,
    __version__,
)

__all__ = [
    "Model",
    "effective_dimension",
    "fit",
    "from_json",
    "generate",
    "load",
    "median_bandwidth",
    "mse",
    "oversample_plan",
    "slices",
    "spectrum",
    "truth",
    "__version__",
]

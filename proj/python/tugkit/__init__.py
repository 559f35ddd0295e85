"""TUG landmark pipeline: phase segmentation, gait events, coordination."""

from ._core import (
    TugError,
    __version__,
    circular_stats,
    classify_bin,
    find_peaks,
    run,
    synthesize,
)

__all__ = [
    "TugError",
    "__version__",
    "circular_stats",
    "classify_bin",
    "find_peaks",
    "run",
    "synthesize",
]

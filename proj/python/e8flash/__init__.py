"""E8 lattice + Reed-Solomon coded modulation for multi-level flash memory.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._core import (
    BaselineCodec,
    FrameCodec,
    FrameDiagnostics,
    cube_encode,
    cube_index,
    e8_nearest,
    e8_nearest_exhaustive,
    error_table,
    minimal_vectors,
    pam_symbol_error_rate,
    presets,
    sigma_for_snr_db,
    simulate,
    simulate_csv,
    __version__,
)

__all__ = [
    "BaselineCodec",
    "FrameCodec",
    "FrameDiagnostics",
    "cube_encode",
    "cube_index",
    "e8_nearest",
    "e8_nearest_exhaustive",
    "error_table",
    "minimal_vectors",
    "pam_symbol_error_rate",
    "presets",
    "sigma_for_snr_db",
    "simulate",
    "simulate_csv",
    "__version__",
]

"""Character sums: prefix maxima, expansions, dyadic blocks and full sweeps."""

from charmax.charsums.dyadic import (
    DyadicPath,
    block_sums,
    dyadic_family_moment,
    dyadic_path,
    dyadic_reconstruct,
    holder_block_bound,
)
from charmax.charsums.executor import SweepBudget, SweepChunk, SweepExecutor
from charmax.charsums.fourier import (
    default_truncation,
    fourier_extremes,
    polya_expansion,
    polya_expansion_grid,
)
from charmax.charsums.prefix import (
    CharExtremes,
    fraction_point_sum,
    half_point_sum,
    interval_sum,
    prefix_extremes,
    prefix_sums,
    primitive_reduction,
)
from charmax.charsums.sweep import ENGINES, SweepTable, compute_chunk, decode_indices, sweep

__all__ = [
    "CharExtremes",
    "prefix_sums",
    "prefix_extremes",
    "half_point_sum",
    "interval_sum",
    "fraction_point_sum",
    "primitive_reduction",
    "polya_expansion",
    "polya_expansion_grid",
    "fourier_extremes",
    "default_truncation",
    "DyadicPath",
    "dyadic_path",
    "dyadic_reconstruct",
    "block_sums",
    "holder_block_bound",
    "dyadic_family_moment",
    "SweepChunk",
    "SweepBudget",
    "SweepExecutor",
    "SweepTable",
    "ENGINES",
    "sweep",
    "compute_chunk",
    "decode_indices",
]

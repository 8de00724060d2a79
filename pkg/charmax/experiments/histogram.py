"""Histograms of M(chi)/sqrt(q), split by parity, as CSV and SVG."""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import matplotlib
import numpy as np

from charmax import config
from charmax.charsums import SweepTable
from charmax.errors import DomainError
from charmax.visualization import (
    ALL_COLOR,
    EVEN_COLOR,
    ODD_COLOR,
    create_figure,
    style_legend,
)

logger = logging.getLogger(__name__)

NORMALIZATIONS = ("count", "density")

CSV_COLUMNS = [
    "bin_lo",
    "bin_hi",
    "count_even",
    "count_odd",
    "density_even",
    "density_odd",
    "count_all",
    "density_all",
]


@dataclass(frozen=True)
class HistogramSpec:
    """Binning of M/sqrt(q); unset fields come from config."""

    bins: Optional[int] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    split_parity: bool = True
    normalization: str = "density"

    def __post_init__(self):
        if self.bins is None:
            object.__setattr__(self, "bins", int(config.HISTOGRAM_BINS))
        if self.lo is None:
            object.__setattr__(self, "lo", float(config.HISTOGRAM_RANGE[0]))
        if self.hi is None:
            object.__setattr__(self, "hi", float(config.HISTOGRAM_RANGE[1]))
        if self.bins < 1:
            raise DomainError(f"bins must be >= 1, got {self.bins}")
        if not self.lo < self.hi:
            raise DomainError(f"Histogram range needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.normalization not in NORMALIZATIONS:
            raise DomainError(
                f"Unknown normalization {self.normalization!r}; expected one of {NORMALIZATIONS}"
            )

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.bins + 1)


@dataclass
class Histogram:
    """Per-bin counts and densities; each density integrates to 1 over its class."""

    q: int
    spec: HistogramSpec
    edges: np.ndarray
    count_even: np.ndarray
    count_odd: np.ndarray
    outside: int  # rows with M/sqrt(q) outside [lo, hi]

    @property
    def count_all(self) -> np.ndarray:
        return self.count_even + self.count_odd

    @staticmethod
    def _density(counts: np.ndarray, widths: np.ndarray) -> np.ndarray:
        total = counts.sum()
        if total == 0:
            return np.zeros(len(counts))
        return counts / (total * widths)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def density_even(self) -> np.ndarray:
        return self._density(self.count_even, self.widths)

    @property
    def density_odd(self) -> np.ndarray:
        return self._density(self.count_odd, self.widths)

    @property
    def density_all(self) -> np.ndarray:
        return self._density(self.count_all, self.widths)


def compute_histogram(table: SweepTable, spec: Optional[HistogramSpec] = None) -> Histogram:
    """Bin M/sqrt(q) over all rows of ``table``."""
    spec = spec or HistogramSpec()
    edges = spec.edges
    x = table.M / np.sqrt(table.q)
    count_even, _ = np.histogram(x[~table.odd], bins=edges)
    count_odd, _ = np.histogram(x[table.odd], bins=edges)
    binned = int(count_even.sum() + count_odd.sum())
    if binned < len(table):
        logger.warning(
            "%d of %d rows of q=%d fall outside [%g, %g]",
            len(table) - binned,
            len(table),
            table.q,
            spec.lo,
            spec.hi,
        )
    return Histogram(
        q=table.q,
        spec=spec,
        edges=edges,
        count_even=count_even.astype(np.int64),
        count_odd=count_odd.astype(np.int64),
        outside=len(table) - binned,
    )


def _fmt(x: float) -> str:
    return config.CSV_FLOAT_FORMAT % x


def write_histogram_csv(hist: Histogram, path: Union[str, Path]) -> Path:
    """One row per bin; integers exact, reals with 17 significant digits."""
    path = Path(path)
    columns = [
        hist.edges[:-1],
        hist.edges[1:],
        hist.count_even,
        hist.count_odd,
        hist.density_even,
        hist.density_odd,
        hist.count_all,
        hist.density_all,
    ]
    integer = {2, 3, 6}
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for i in range(hist.spec.bins):
            row = [col[i] for col in columns]
            writer.writerow(
                [str(int(x)) if j in integer else _fmt(x) for j, x in enumerate(row)]
            )
    logger.info("Wrote histogram CSV for q=%d to %s", hist.q, path)
    return path


def _series(hist: Histogram) -> List[Tuple[str, str, np.ndarray]]:
    density = hist.spec.normalization == "density"
    if hist.spec.split_parity:
        return [
            ("even", EVEN_COLOR, hist.density_even if density else hist.count_even),
            ("odd", ODD_COLOR, hist.density_odd if density else hist.count_odd),
        ]
    return [("all", ALL_COLOR, hist.density_all if density else hist.count_all)]


def write_histogram_svg(hist: Histogram, path: Union[str, Path]) -> Path:
    """Self-contained SVG of the histogram; identical input gives identical bytes."""
    path = Path(path)
    fig, ax = create_figure()
    widths = hist.widths
    for label, color, values in _series(hist):
        ax.bar(
            hist.edges[:-1],
            values,
            width=widths,
            align="edge",
            color=color,
            alpha=0.55,
            edgecolor=color,
            linewidth=0.4,
            label=label,
        )
    ax.set_xlim(hist.spec.lo, hist.spec.hi)
    ax.set_xlabel(r"$M(\chi)/\sqrt{q}$")
    ax.set_ylabel("density" if hist.spec.normalization == "density" else "characters")
    ax.set_title(f"q = {hist.q}")
    style_legend(ax.legend(loc="upper right"))

    with matplotlib.rc_context({"svg.hashsalt": config.SVG_HASH_SALT}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.info("Wrote histogram SVG for q=%d to %s", hist.q, path)
    return path

"""Table persistence, histograms, reports, verification suites and the CLI."""

from charmax.experiments.histogram import (
    Histogram,
    HistogramSpec,
    compute_histogram,
    write_histogram_csv,
    write_histogram_svg,
)
from charmax.experiments.reports import ReportWriter, load_csv_report, shape_record, to_jsonable
from charmax.experiments.tablefile import (
    ChunkCheckpoint,
    decode_table,
    encode_table,
    load_table,
    save_table,
    table_summary,
)
from charmax.experiments.verify import SUITES, CheckResult, SuiteResult, run_suite

__all__ = [
    "ChunkCheckpoint",
    "encode_table",
    "decode_table",
    "save_table",
    "load_table",
    "table_summary",
    "HistogramSpec",
    "Histogram",
    "compute_histogram",
    "write_histogram_csv",
    "write_histogram_svg",
    "ReportWriter",
    "load_csv_report",
    "shape_record",
    "to_jsonable",
    "SUITES",
    "CheckResult",
    "SuiteResult",
    "run_suite",
]

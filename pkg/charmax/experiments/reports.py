"""
Report storage utilities.

This module writes the JSON and CSV reports produced by the CLI commands:
empirical moments, tail fractions, constants, main-term shapes, verification
results and G_N aggregates. Every shape row carries its caveat text.
"""

import csv
import dataclasses
import enum
import json
import logging
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from charmax import config
from charmax.analytic import MainTermShape
from charmax.moments import MomentReport, TailReport

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """Convert dataclasses, numpy scalars/arrays and complex numbers to JSON types.

    Non-finite floats become the strings "inf", "-inf" and "nan".
    """
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        x = float(value)
        return x if math.isfinite(x) else str(x)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    return value


def shape_record(shape: Optional[MainTermShape]) -> Optional[Dict[str, Any]]:
    """A MainTermShape as a flat record with its value and caveat."""
    if shape is None:
        return None
    return {
        "which": shape.which,
        "params": to_jsonable(shape.params),
        "log_value": to_jsonable(shape.log_value),
        "value": to_jsonable(shape.value),
        "caveat": shape.caveat,
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return config.CSV_FLOAT_FORMAT % float(value)
    return str(value)


class ReportWriter:
    """
    Writes report files into one output directory.

    Stores each report twice, as JSON for machines and CSV for spreadsheets,
    and keeps an index of everything written in ``summary.json``.
    """

    def __init__(self, out_dir: Optional[Path] = None):
        """
        Initialize the report writer.

        Args:
            out_dir: Directory to store reports. If None, uses a timestamped
                directory under the current directory.
        """
        if out_dir is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            out_dir = Path(f"reports_{timestamp}")

        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.written: List[Path] = []

    def write_json(self, name: str, payload: Any) -> Path:
        path = self.out_dir / f"{name}.json"
        with open(path, "w") as f:
            json.dump(to_jsonable(payload), f, indent=2, sort_keys=True)
            f.write("\n")
        self.written.append(path)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self.out_dir / f"{name}.csv"
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
        self.written.append(path)
        return path

    def log_moments(self, reports: Sequence[MomentReport], name: str = "moments") -> List[Path]:
        """
        Store empirical moments next to their comparison columns.

        Args:
            reports: One MomentReport per (table, k, statistic)
            name: Base file name
        """
        records = []
        rows = []
        for r in reports:
            shapes = [shape_record(s) for s in r.shapes]
            records.append(
                {
                    "q": r.q,
                    "k": r.k,
                    "statistic": r.statistic,
                    "raw": r.raw,
                    "normalized": r.normalized,
                    "comparison": r.comparison,
                    "shapes": shapes,
                }
            )
            main = r.shapes[0] if r.shapes else None
            rows.append(
                [
                    r.q,
                    r.k,
                    r.statistic,
                    r.raw,
                    r.normalized,
                    r.comparison,
                    main.which if main else None,
                    main.value if main else None,
                    main.caveat if main else None,
                ]
            )
        header = [
            "q",
            "k",
            "statistic",
            "raw",
            "normalized",
            "limit_constant",
            "shape",
            "shape_value",
            "caveat",
        ]
        return [self.write_json(name, records), self.write_csv(name, header, rows)]

    def log_tail(self, report: TailReport, name: str = "tail") -> List[Path]:
        """
        Store F_q or g_q on an alpha grid with the main-term column.

        Args:
            report: TailReport from tail_F or tail_g
            name: Base file name
        """
        fraction = report.F_q if report.F_q is not None else report.g_q
        column = "F_q" if report.F_q is not None else "g_q"
        rows = []
        for i, alpha in enumerate(report.alphas):
            shape = report.comparisons[i] if i < len(report.comparisons) else None
            rows.append(
                [
                    alpha,
                    int(report.counts[i]),
                    report.total,
                    fraction[i],
                    shape.which if shape else None,
                    shape.value if shape else None,
                    shape.caveat if shape else None,
                ]
            )
        header = ["alpha", "count", "total", column, "shape", "shape_value", "caveat"]
        payload = {
            "q": report.q,
            "statistic": column,
            "total": report.total,
            "alphas": report.alphas,
            "counts": report.counts,
            column: fraction,
            "comparisons": [shape_record(s) for s in report.comparisons],
        }
        return [self.write_json(name, payload), self.write_csv(name, header, rows)]

    def log_shapes(self, shapes: Sequence[MainTermShape], name: str = "shapes") -> List[Path]:
        records = [shape_record(s) for s in shapes]
        param_names = sorted({p for s in shapes for p in s.params})
        header = ["which"] + param_names + ["log_value", "value", "caveat"]
        rows = [
            [s.which] + [s.params.get(p) for p in param_names] + [s.log_value, s.value, s.caveat]
            for s in shapes
        ]
        return [self.write_json(name, records), self.write_csv(name, header, rows)]

    def log_summary(self, summary: Dict[str, Any]) -> Path:
        """
        Save a run summary listing every file written so far.

        Args:
            summary: Dictionary containing run facts
        """
        payload = dict(summary)
        payload["files"] = sorted({p.name for p in self.written})
        return self.write_json("summary", payload)

    def get_output_directory(self) -> Path:
        """Get the report directory path."""
        return self.out_dir


def load_csv_report(csv_file: Path) -> List[Dict[str, str]]:
    """
    Load a CSV report as a list of row dictionaries.

    Args:
        csv_file: Path to a report CSV

    Returns:
        Rows keyed by column name; values are left as strings
    """
    with open(csv_file, "r", newline="") as f:
        return list(csv.DictReader(f))

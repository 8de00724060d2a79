import json
import math
from pathlib import Path

import numpy as np
import pytest

from charmax.analytic import moment_upper_shape, tail_upper_shape
from charmax.arithmetic import Parity
from charmax.experiments import ReportWriter, load_csv_report, shape_record, to_jsonable
from charmax.moments import empirical_moment, tail_F


def test_to_jsonable():
    value = {
        1: complex(1.5, -2.0),
        "inf": math.inf,
        "parity": Parity.ODD,
        "path": Path("a/b.tbl"),
        "array": np.array([1, 2, 3], dtype=np.int64),
        "flags": (np.bool_(True), False),
        "scalar": np.float64(0.25),
    }
    assert to_jsonable(value) == {
        "1": {"re": 1.5, "im": -2.0},
        "inf": "inf",
        "parity": "odd",
        "path": "a/b.tbl",
        "array": [1, 2, 3],
        "flags": [True, False],
        "scalar": 0.25,
    }
    json.dumps(to_jsonable(value))


def test_shape_record_keeps_caveat():
    record = shape_record(moment_upper_shape(3))
    assert record["which"] == "C_k"
    assert record["caveat"]
    assert shape_record(None) is None


class TestReportWriter:
    def test_moments(self, tmp_path, swept):
        writer = ReportWriter(tmp_path)
        table = swept(101)
        reports = [empirical_moment(table, k) for k in (1, 2, 3)]
        json_path, csv_path = writer.log_moments(reports)

        records = json.loads(json_path.read_text())
        assert [r["k"] for r in records] == [1, 2, 3]
        assert records[0]["raw"] == pytest.approx(reports[0].raw)

        rows = load_csv_report(csv_path)
        assert [row["k"] for row in rows] == ["1", "2", "3"]
        assert rows[0]["shape"] == ""
        assert rows[2]["shape"] == "c_k"
        assert rows[2]["caveat"]
        assert float(rows[1]["normalized"]) == pytest.approx(reports[1].normalized, rel=1e-15)

    def test_tail(self, tmp_path, swept):
        writer = ReportWriter(tmp_path)
        report = tail_F(swept(101), [0.5, 1.0, 3.0])
        json_path, csv_path = writer.log_tail(report)

        payload = json.loads(json_path.read_text())
        assert payload["statistic"] == "F_q"
        assert payload["total"] == 100
        assert payload["comparisons"][0] is None

        rows = load_csv_report(csv_path)
        assert list(rows[0]) == ["alpha", "count", "total", "F_q", "shape", "shape_value", "caveat"]
        assert rows[-1]["shape"] == "theorem3_upper"

    def test_shapes_and_summary(self, tmp_path):
        writer = ReportWriter(tmp_path / "out")
        shapes = [moment_upper_shape(4), tail_upper_shape(5.0)]
        writer.log_shapes(shapes)
        rows = load_csv_report(tmp_path / "out" / "shapes.csv")
        assert [row["which"] for row in rows] == ["C_k", "theorem3_upper"]

        summary_path = writer.log_summary({"command": "shapes"})
        summary = json.loads(summary_path.read_text())
        assert summary["command"] == "shapes"
        assert summary["files"] == ["shapes.csv", "shapes.json"]

    def test_default_directory_is_timestamped(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        writer = ReportWriter()
        assert writer.get_output_directory().name.startswith("reports_")
        assert writer.get_output_directory().is_dir()

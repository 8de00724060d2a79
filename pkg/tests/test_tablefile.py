import json

import pytest

from charmax import config
from charmax.charsums import SweepBudget, sweep
from charmax.errors import BudgetExceededError, TableFormatError
from charmax.experiments import (
    ChunkCheckpoint,
    decode_table,
    encode_table,
    load_table,
    save_table,
    table_summary,
)


def _split(data: bytes):
    newline = data.index(b"\n")
    return json.loads(data[:newline]), data[newline + 1 :]


class TestEncoding:
    @pytest.mark.parametrize("q", [3, 8, 15, 101])
    def test_round_trip_is_byte_identical(self, q, swept):
        table = swept(q)
        data = encode_table(table)
        decoded = decode_table(data)
        assert decoded.equals(table)
        assert decoded.complete
        assert encode_table(decoded) == data

    def test_header_fields(self, swept):
        header, payload = _split(encode_table(swept(16)))
        assert header["magic"] == config.TABLE_MAGIC
        assert header["q"] == 16
        assert header["phi"] == 8
        assert header["generators"] == [15, 5]
        assert header["orders"] == [2, 4]
        assert header["row_count"] == 7
        assert len(payload) == 7 * (8 + 2 * 8 + 1 + 8 + 8 + 8 + 8 + 8)

    def test_metadata_survives(self):
        table = sweep(7)
        table.metadata["note"] = "pilot"
        assert decode_table(encode_table(table)).metadata == {"note": "pilot"}

    def test_unserializable_metadata(self):
        table = sweep(7)
        table.metadata["bad"] = object()
        with pytest.raises(TableFormatError):
            encode_table(table)


class TestCorruption:
    def test_flipped_payload_byte(self, swept):
        data = bytearray(encode_table(swept(11)))
        data[-3] ^= 0xFF
        with pytest.raises(TableFormatError, match="checksum"):
            decode_table(bytes(data))

    @pytest.mark.parametrize(
        "field, value",
        [("complete", False), ("metadata", {"budget_rows": 7}), ("engine", "fourier")],
    )
    def test_edited_header_field(self, field, value):
        table = sweep(11)
        table.metadata["budget_rows"] = 4
        header, payload = _split(encode_table(table))
        header[field] = value
        data = json.dumps(header, sort_keys=True, separators=(",", ":")).encode() + b"\n" + payload
        with pytest.raises(TableFormatError, match="checksum"):
            decode_table(data)

    def test_header_layout_does_not_matter(self, swept):
        header, payload = _split(encode_table(swept(11)))
        data = json.dumps(header, indent=None).encode() + b"\n" + payload
        assert decode_table(data).equals(swept(11))

    def test_truncated(self, swept):
        data = encode_table(swept(11))
        with pytest.raises(TableFormatError):
            decode_table(data[:-8])

    @pytest.mark.parametrize("data", [b"no header line", b"{not json\n", b"{}\n", b"[1, 2]\n"])
    def test_bad_headers(self, data):
        with pytest.raises(TableFormatError):
            decode_table(data)

    def test_wrong_version(self, swept):
        header, payload = _split(encode_table(swept(11)))
        header["format_version"] = 99
        data = json.dumps(header).encode() + b"\n" + payload
        with pytest.raises(TableFormatError, match="version"):
            decode_table(data)

    def test_wrong_row_count(self, swept):
        header, payload = _split(encode_table(swept(11)))
        header["row_count"] = 3
        data = json.dumps(header).encode() + b"\n" + payload
        with pytest.raises(TableFormatError):
            decode_table(data)


class TestFiles:
    def test_save_and_load(self, tmp_path, swept):
        path = save_table(swept(13), tmp_path / "nested" / "q13.tbl")
        assert path.exists()
        assert load_table(path).equals(swept(13))
        assert not (tmp_path / "nested" / "q13.tbl.tmp").exists()

    def test_missing_file(self, tmp_path):
        with pytest.raises(TableFormatError):
            load_table(tmp_path / "absent.tbl")

    def test_summary(self, swept):
        summary = table_summary(swept(13), "q13.tbl")
        assert summary["rows"] == 11
        assert summary["odd_rows"] == 6
        assert summary["primitive_rows"] == 11
        assert summary["complete"]
        assert summary["certified"]


class TestCheckpoint:
    def test_resume_after_budget(self, tmp_path, monkeypatch, swept):
        monkeypatch.setattr(config, "SWEEP_CHUNK_SIZE", 6)
        checkpoint = ChunkCheckpoint(tmp_path / "q37.tbl", 37, "exact")

        with pytest.raises(BudgetExceededError):
            sweep(37, budget=SweepBudget(max_rows=12), on_chunk=checkpoint.save_chunk)
        chunks = checkpoint.load()
        assert sorted(chunks) == [0, 1]

        calls = []

        def record(chunk, table):
            calls.append(chunk.index)
            checkpoint.save_chunk(chunk, table)

        table = sweep(37, preloaded=chunks, on_chunk=record)
        assert table.equals(swept(37))
        assert calls == [2, 3, 4, 5]

        checkpoint.clear()
        assert not checkpoint.directory.exists()

    def test_foreign_chunks_ignored(self, tmp_path, monkeypatch):
        monkeypatch.setattr(config, "SWEEP_CHUNK_SIZE", 6)
        out = tmp_path / "q37.tbl"
        writer = ChunkCheckpoint(out, 37, "exact")
        sweep(37, on_chunk=writer.save_chunk)
        (writer.directory / "chunk-000099.tbl").write_bytes(b"garbage")

        assert ChunkCheckpoint(out, 37, "fourier").load() == {}
        assert ChunkCheckpoint(out, 41, "exact").load() == {}
        assert sorted(writer.load()) == [0, 1, 2, 3, 4, 5]

        monkeypatch.setattr(config, "SWEEP_CHUNK_SIZE", 8)
        assert sorted(writer.load()) == [0]

"""
Sweep table persistence.

A table file is one JSON header line followed by fixed-width little-endian
rows. The header records the modulus, the group generators, the row count,
a completeness flag and a SHA-256 over the header (with the checksum field
blanked) and the row bytes, so a truncated or corrupted file is rejected on
load.

Checkpoints of a running sweep live next to the output file in
``<out>.ckpt/chunk-NNNNNN.tbl``, one table file per finished chunk.
"""

import hashlib
import json
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from charmax import config
from charmax.arithmetic import build_unit_group, factorize
from charmax.charsums import ENGINES, SweepChunk, SweepTable
from charmax.errors import TableFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CHUNK_PATTERN = "chunk-{:06d}.tbl"


def row_dtype(rank: int) -> np.dtype:
    """Record layout of one table row."""
    return np.dtype(
        [
            ("index", "<i8"),
            ("exponents", "<i8", (rank,)),
            ("odd", "u1"),
            ("conductor", "<i8"),
            ("M", "<f8"),
            ("N", "<i8"),
            ("S_half_re", "<f8"),
            ("S_half_im", "<f8"),
        ]
    )


def _encode_rows(table: SweepTable) -> bytes:
    rank = table.exponents.shape[1]
    rows = np.zeros(len(table), dtype=row_dtype(rank))
    rows["index"] = table.indices
    rows["exponents"] = table.exponents
    rows["odd"] = table.odd
    rows["conductor"] = table.conductor
    rows["M"] = table.M
    rows["N"] = table.N
    rows["S_half_re"] = table.S_half.real
    rows["S_half_im"] = table.S_half.imag
    return rows.tobytes()


def _checksum(header: Dict[str, Any], payload: bytes) -> str:
    """SHA-256 over the canonical header (checksum blanked) and the row bytes."""
    blank = dict(header, checksum="")
    canonical = json.dumps(blank, sort_keys=True, separators=(",", ":")).encode("ascii")
    return hashlib.sha256(canonical + b"\n" + payload).hexdigest()


def _header(table: SweepTable) -> Dict[str, Any]:
    g = build_unit_group(table.q)
    return {
        "magic": config.TABLE_MAGIC,
        "format_version": config.TABLE_FORMAT_VERSION,
        "q": table.q,
        "phi": table.modulus.phi,
        "engine": table.engine,
        "generators": [int(x) for x in g.generators],
        "orders": [int(x) for x in g.orders],
        "row_count": len(table),
        "complete": bool(table.complete),
        "checksum": "",
        "metadata": table.metadata,
    }


def encode_table(table: SweepTable) -> bytes:
    """Serialize a table to bytes (header line + rows)."""
    payload = _encode_rows(table)
    try:
        fields = _header(table)
        fields["checksum"] = _checksum(fields, payload)
        header = json.dumps(fields, sort_keys=True, separators=(",", ":"))
    except TypeError as e:
        raise TableFormatError(f"Table metadata for q={table.q} is not JSON-serializable") from e
    return header.encode("ascii") + b"\n" + payload


def decode_table(data: bytes, source: str = "<bytes>") -> SweepTable:
    """Parse bytes written by encode_table.

    Raises:
        TableFormatError: On a bad header, wrong row count or checksum mismatch
    """
    newline = data.find(b"\n")
    if newline < 0:
        raise TableFormatError(f"{source}: missing header line")
    try:
        header = json.loads(data[:newline].decode("ascii"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise TableFormatError(f"{source}: unreadable header") from e

    if not isinstance(header, dict) or header.get("magic") != config.TABLE_MAGIC:
        raise TableFormatError(f"{source}: not a charmax table")
    if header.get("format_version") != config.TABLE_FORMAT_VERSION:
        raise TableFormatError(
            f"{source}: format version {header.get('format_version')} "
            f"(expected {config.TABLE_FORMAT_VERSION})"
        )
    if header.get("engine") not in ENGINES:
        raise TableFormatError(f"{source}: unknown engine {header.get('engine')!r}")

    payload = data[newline + 1 :]
    try:
        checksum = _checksum(header, payload)
    except (TypeError, ValueError) as e:
        raise TableFormatError(f"{source}: header cannot be re-serialized") from e
    if checksum != header.get("checksum"):
        raise TableFormatError(f"{source}: checksum mismatch")

    q = int(header["q"])
    modulus = factorize(q)
    if modulus.phi != header.get("phi"):
        raise TableFormatError(f"{source}: phi={header.get('phi')} does not match q={q}")
    g = build_unit_group(q)
    if [int(x) for x in g.generators] != header.get("generators") or [
        int(x) for x in g.orders
    ] != header.get("orders"):
        raise TableFormatError(f"{source}: generators differ from this build's unit group")

    dtype = row_dtype(len(g.orders))
    count = int(header["row_count"])
    if len(payload) != count * dtype.itemsize:
        raise TableFormatError(
            f"{source}: {len(payload)} row bytes, expected {count} x {dtype.itemsize}"
        )
    rows = np.frombuffer(payload, dtype=dtype)
    S_half = np.empty(count, dtype=np.complex128)
    S_half.real = rows["S_half_re"]
    S_half.imag = rows["S_half_im"]

    return SweepTable(
        modulus=modulus,
        engine=header["engine"],
        indices=rows["index"].astype(np.int64),
        exponents=rows["exponents"].astype(np.int64).reshape(count, len(g.orders)),
        M=rows["M"].astype(np.float64),
        N=rows["N"].astype(np.int64),
        S_half=S_half,
        odd=rows["odd"].astype(bool),
        conductor=rows["conductor"].astype(np.int64),
        complete=bool(header["complete"]),
        metadata=dict(header.get("metadata") or {}),
    )


def _write_atomic(path: Path, data: bytes) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as f:
        f.write(data)
    os.replace(tmp, path)


def save_table(table: SweepTable, path: PathLike) -> Path:
    """Write a table file; returns the path written."""
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    _write_atomic(path, encode_table(table))
    logger.info("Wrote %d rows for q=%d to %s", len(table), table.q, path)
    return path


def load_table(path: PathLike) -> SweepTable:
    """Read a table file.

    Raises:
        TableFormatError: If the file is missing or fails validation
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise TableFormatError(f"Cannot read table {path}: {e}") from e
    table = decode_table(data, source=str(path))
    logger.debug("Loaded %d rows for q=%d from %s", len(table), table.q, path)
    return table


class ChunkCheckpoint:
    """
    Per-chunk checkpoint directory for a sweep.

    Finished chunks are written as they complete; a later run with the same
    output path reloads them and only computes what is missing.
    """

    def __init__(self, out: PathLike, q: int, engine: str):
        """
        Args:
            out: Final table path; checkpoints go to ``<out>.ckpt``
            q: Modulus being swept
            engine: Sweep engine
        """
        out = Path(out)
        self.directory = out.with_name(out.name + ".ckpt")
        self.q = q
        self.engine = engine

    def chunk_path(self, index: int) -> Path:
        return self.directory / CHUNK_PATTERN.format(index)

    def save_chunk(self, chunk: SweepChunk, table: SweepTable) -> None:
        """Completion callback for SweepExecutor."""
        self.directory.mkdir(parents=True, exist_ok=True)
        _write_atomic(self.chunk_path(chunk.index), encode_table(table))

    def load(self) -> Dict[int, SweepTable]:
        """Chunks saved by an earlier run, keyed by chunk index.

        Unreadable chunk files and chunks of another modulus or engine are
        skipped with a warning and recomputed.
        """
        chunks: Dict[int, SweepTable] = {}
        if not self.directory.is_dir():
            return chunks
        for path in sorted(self.directory.glob("chunk-*.tbl")):
            try:
                index = int(path.stem.split("-", 1)[1])
                table = load_table(path)
            except (ValueError, TableFormatError) as e:
                logger.warning("Ignoring checkpoint %s: %s", path, e)
                continue
            if table.q != self.q or table.engine != self.engine:
                logger.warning(
                    "Ignoring checkpoint %s: q=%d engine=%s", path, table.q, table.engine
                )
                continue
            start = 1 + index * config.SWEEP_CHUNK_SIZE
            if len(table) == 0 or int(table.indices[0]) != start:
                logger.warning("Ignoring checkpoint %s: chunk size changed", path)
                continue
            chunks[index] = table
        if chunks:
            logger.info("Resuming from %d checkpointed chunk(s) in %s", len(chunks), self.directory)
        return chunks

    def clear(self) -> None:
        if self.directory.is_dir():
            shutil.rmtree(self.directory)


def table_summary(table: SweepTable, path: Optional[PathLike] = None) -> Dict[str, Any]:
    """Header-level facts about a table, for reports."""
    return {
        "path": str(path) if path is not None else None,
        "q": table.q,
        "phi": table.modulus.phi,
        "engine": table.engine,
        "certified": table.certified,
        "rows": len(table),
        "complete": table.complete and table.is_full(),
        "odd_rows": int(np.count_nonzero(table.odd)),
        "primitive_rows": int(np.count_nonzero(table.conductor == table.q)),
    }

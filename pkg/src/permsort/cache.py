"""On-disk cache of distance tables and JSON verdicts."""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
import struct
import tempfile
from pathlib import Path

import numpy as np
from filelock import FileLock

from .engine import DistanceTable

log = logging.getLogger(__name__)

MAGIC = b"PSWB1"
DEFAULT_DIR = ".permsort-cache"


def default_cache_dir() -> Path:
    return Path(os.environ.get("PERMSORT_CACHE", DEFAULT_DIR))


def encode_table(table: DistanceTable) -> bytes:
    spec = table.spec.encode()
    header = MAGIC + struct.pack("<I", len(spec)) + spec + struct.pack("<I", table.n)
    return header + table.distances.astype(np.uint8).tobytes()


def decode_table(blob: bytes) -> DistanceTable:
    """Inverse of :func:`encode_table`; raises ValueError on any malformed input."""
    if not blob.startswith(MAGIC):
        raise ValueError("bad magic")
    pos = len(MAGIC)
    if len(blob) < pos + 4:
        raise ValueError("truncated header")
    (slen,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    spec = blob[pos:pos + slen].decode()
    pos += slen
    if len(blob) < pos + 4:
        raise ValueError("truncated header")
    (n,) = struct.unpack_from("<I", blob, pos)
    pos += 4
    body = blob[pos:]
    if n > 12 or len(body) != math.factorial(n):
        raise ValueError("body length does not match n!")
    return DistanceTable(spec, n, np.frombuffer(body, dtype=np.uint8).copy())


class ResultCache:
    """Tables keyed by (canonical spec, n); one lock file per entry."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0

    def _stem(self, spec: str, n: int | None, kind: str) -> Path:
        digest = hashlib.sha1(spec.encode()).hexdigest()[:16]
        suffix = f"-n{n}" if n is not None else ""
        return self.dir / f"{kind}-{digest}{suffix}"

    def _write(self, path: Path, data: bytes) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        with FileLock(str(path) + ".lock"):
            fd, tmp = tempfile.mkstemp(dir=self.dir, prefix=".tmp-")
            try:
                with os.fdopen(fd, "wb") as fh:
                    fh.write(data)
                os.replace(tmp, path)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise

    def _read(self, path: Path) -> bytes | None:
        if not path.exists():
            return None
        with FileLock(str(path) + ".lock"):
            try:
                return path.read_bytes()
            except OSError:
                return None

    def load_table(self, spec: str, n: int) -> DistanceTable | None:
        path = self._stem(spec, n, "table").with_suffix(".bin")
        blob = self._read(path)
        if blob is None:
            self.misses += 1
            return None
        try:
            table = decode_table(blob)
            if table.spec != spec or table.n != n:
                raise ValueError("key mismatch")
        except (ValueError, UnicodeDecodeError) as exc:
            log.warning("discarding corrupt cache entry %s: %s", path, exc)
            path.unlink(missing_ok=True)
            self.misses += 1
            return None
        self.hits += 1
        return table

    def store_table(self, table: DistanceTable) -> None:
        path = self._stem(table.spec, table.n, "table").with_suffix(".bin")
        self._write(path, encode_table(table))

    def load_json(self, key: str) -> dict | None:
        path = self._stem(key, None, "verdict").with_suffix(".json")
        blob = self._read(path)
        if blob is None:
            return None
        try:
            record = json.loads(blob)
            if record.get("key") != key:
                raise ValueError("key mismatch")
            return record["value"]
        except (ValueError, KeyError, TypeError):
            path.unlink(missing_ok=True)
            return None

    def store_json(self, key: str, value: dict) -> None:
        path = self._stem(key, None, "verdict").with_suffix(".json")
        self._write(path, json.dumps({"key": key, "value": value}, sort_keys=True).encode())

    @property
    def status(self) -> str:
        return f"cache hits={self.hits} misses={self.misses}"

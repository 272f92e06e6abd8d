"""Line-delimited checkpoint store for sieve runs.

File layout::

    # cartan-sieve checkpoint v1 config=<sha256>
    <chunk_id> <lo> <hi> <status> [p1 p2 ...]

One record per finished cell, all numbers in decimal.  Re-delivered cells
are idempotent: a later record for the same ``chunk_id`` with status
``done`` wins over an earlier ``incomplete`` one, duplicates are ignored.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

__all__ = ["CheckpointMismatch", "CellRecord", "Checkpoint", "config_fingerprint"]

_HEADER = "# cartan-sieve checkpoint v1 config="


class CheckpointMismatch(RuntimeError):
    """The checkpoint on disk was written for a different configuration."""


def config_fingerprint(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class CellRecord:
    chunk_id: str
    lo: int
    hi: int
    status: str
    primes: tuple[int, ...] = ()

    def to_line(self) -> str:
        fields = [self.chunk_id, str(self.lo), str(self.hi), self.status]
        fields += [str(p) for p in self.primes]
        return " ".join(fields)

    @classmethod
    def from_line(cls, line: str) -> "CellRecord":
        parts = line.split()
        if len(parts) < 4:
            raise ValueError(f"malformed checkpoint record: {line!r}")
        cid, lo, hi, status, *rest = parts
        return cls(cid, int(lo), int(hi), status, tuple(int(p) for p in rest))


class Checkpoint:
    """Append-only record file bound to one configuration fingerprint."""

    def __init__(self, path: str | os.PathLike, fingerprint: str, resume: bool = True):
        self.path = Path(path)
        self.fingerprint = fingerprint
        self.records: dict[str, CellRecord] = {}
        if self.path.exists() and resume:
            self._load()
        else:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w") as fh:
                fh.write(_HEADER + fingerprint + "\n")

    def _load(self) -> None:
        with open(self.path) as fh:
            lines = fh.read().splitlines()
        if not lines or not lines[0].startswith(_HEADER):
            raise CheckpointMismatch(f"{self.path} is not a checkpoint file")
        found = lines[0][len(_HEADER):].strip()
        if found != self.fingerprint:
            raise CheckpointMismatch(
                f"{self.path} belongs to config {found[:12]}, not {self.fingerprint[:12]}"
            )
        for line in lines[1:]:
            if not line.strip():
                continue
            try:
                rec = CellRecord.from_line(line)
            except ValueError:
                continue  # torn final line from an interrupted write
            self._merge(rec)

    def _merge(self, rec: CellRecord) -> None:
        old = self.records.get(rec.chunk_id)
        if old is None or (old.status != "done" and rec.status == "done"):
            self.records[rec.chunk_id] = rec

    def get(self, chunk_id: str) -> CellRecord | None:
        return self.records.get(chunk_id)

    def done(self, chunk_id: str) -> bool:
        rec = self.records.get(chunk_id)
        return rec is not None and rec.status == "done"

    def write(self, rec: CellRecord) -> None:
        with open(self.path, "a") as fh:
            fh.write(rec.to_line() + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self._merge(rec)

"""Content-addressed pinning store with hard quotas.

Assets are addressed by the SHA-256 of their bytes, rendered with a fixed
single-codec prefix.  Pinning the same bytes twice is a no-op against both
quota counters.  The pin index survives restarts as a flat tab-separated
file next to the blobs, and every read re-hashes the blob so silent disk
corruption surfaces as an integrity failure rather than wrong data.
"""

from __future__ import annotations

import hashlib
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import DvreError

CID_PREFIX = "dvre1-"

DEFAULT_MAX_FILES = 500
DEFAULT_MAX_BYTES = 1 << 30  # 1 GiB


class NotFound(DvreError):
    pass


class IntegrityFailure(DvreError):
    pass


class QuotaExceededFiles(DvreError):
    pass


class QuotaExceededBytes(DvreError):
    pass


@dataclass(frozen=True)
class Cid:
    digest: bytes

    def __post_init__(self):
        if len(self.digest) != 32:
            raise ValueError("cid digest must be 32 bytes")

    @classmethod
    def from_content(cls, content: bytes) -> "Cid":
        return cls(hashlib.sha256(content).digest())

    @classmethod
    def parse(cls, text: str) -> "Cid":
        if not text.startswith(CID_PREFIX):
            raise ValueError(f"cid must start with {CID_PREFIX!r}: {text!r}")
        body = text[len(CID_PREFIX):]
        if len(body) != 64:
            raise ValueError(f"cid body must be 64 hex chars: {text!r}")
        try:
            return cls(bytes.fromhex(body))
        except ValueError:
            raise ValueError(f"cid body is not hex: {text!r}") from None

    def __str__(self) -> str:
        return CID_PREFIX + self.digest.hex()


@dataclass(frozen=True)
class Quota:
    max_pinned_files: int = DEFAULT_MAX_FILES
    max_total_bytes: int = DEFAULT_MAX_BYTES


@dataclass(frozen=True)
class PinInfo:
    cid: Cid
    size: int
    pinned_at: int


class ContentStore:
    """Flat directory of blobs plus a persistent pin index."""

    def __init__(self, root: str | Path, quota: Quota | None = None,
                 clock=None):
        self.root = Path(root)
        self.quota = quota or Quota()
        self._clock = clock or (lambda: int(time.time()))
        self._blob_dir = self.root / "blobs"
        self._index_path = self.root / "pins.tsv"
        self._blob_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._pins: dict[str, PinInfo] = {}
        self._load_index()

    def _load_index(self) -> None:
        if not self._index_path.exists():
            return
        for line in self._index_path.read_text().splitlines():
            if not line.strip():
                continue
            cid_text, size, pinned_at = line.split("\t")
            cid = Cid.parse(cid_text)
            self._pins[str(cid)] = PinInfo(cid=cid, size=int(size),
                                           pinned_at=int(pinned_at))

    def _write_index(self) -> None:
        lines = [f"{key}\t{info.size}\t{info.pinned_at}"
                 for key, info in sorted(self._pins.items())]
        tmp = self._index_path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + ("\n" if lines else ""))
        os.replace(tmp, self._index_path)

    def _blob_path(self, cid: Cid) -> Path:
        return self._blob_dir / cid.digest.hex()

    # --- public surface ------------------------------------------------------

    @property
    def pinned_files(self) -> int:
        return len(self._pins)

    @property
    def pinned_bytes(self) -> int:
        return sum(info.size for info in self._pins.values())

    def contains(self, cid: Cid) -> bool:
        return str(cid) in self._pins

    def list_pins(self) -> list[PinInfo]:
        return [self._pins[key] for key in sorted(self._pins)]

    def put(self, content: bytes) -> Cid:
        """Pin content and return its address; identical bytes pin once."""
        cid = Cid.from_content(content)
        with self._lock:
            if str(cid) in self._pins:
                return cid
            if self.pinned_files + 1 > self.quota.max_pinned_files:
                raise QuotaExceededFiles(
                    f"pin count would exceed {self.quota.max_pinned_files}")
            if self.pinned_bytes + len(content) > self.quota.max_total_bytes:
                raise QuotaExceededBytes(
                    f"stored bytes would exceed {self.quota.max_total_bytes}")
            path = self._blob_path(cid)
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(content)
            os.replace(tmp, path)
            self._pins[str(cid)] = PinInfo(cid=cid, size=len(content),
                                           pinned_at=self._clock())
            self._write_index()
            return cid

    def get(self, cid: Cid) -> bytes:
        """Read pinned content, verifying it still matches its address."""
        with self._lock:
            if str(cid) not in self._pins:
                raise NotFound(f"not pinned: {cid}")
            path = self._blob_path(cid)
            if not path.exists():
                raise NotFound(f"blob missing from disk: {cid}")
            content = path.read_bytes()
        if hashlib.sha256(content).digest() != cid.digest:
            raise IntegrityFailure(f"stored bytes no longer match {cid}")
        return content

    def unpin(self, cid: Cid) -> None:
        with self._lock:
            if str(cid) not in self._pins:
                raise NotFound(f"not pinned: {cid}")
            del self._pins[str(cid)]
            path = self._blob_path(cid)
            if path.exists():
                path.unlink()
            self._write_index()

    def stats(self) -> dict:
        with self._lock:
            return {
                "pinned_files": self.pinned_files,
                "pinned_bytes": self.pinned_bytes,
                "max_pinned_files": self.quota.max_pinned_files,
                "max_total_bytes": self.quota.max_total_bytes,
            }

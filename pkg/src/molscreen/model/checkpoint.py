"""Self-describing model checkpoints in a versioned binary container.

Layout: magic "MSCK", one format-version byte, u32 header length, a JSON
header (config, scaler, layout version, threshold, metadata, parameter
manifest), the raw little-endian float32 parameter sections, and a
trailing CRC32 of everything before it.
"""

from __future__ import annotations

import hashlib
import json
import struct
import zlib
from dataclasses import dataclass, field

import numpy as np

from ..autodiff import Tensor
from ..features.scaler import FeatureScaler
from .config import ModelConfig
from .network import Model

MAGIC = b"MSCK"
FORMAT_VERSION = 1


class VersionMismatch(ValueError):
    pass


class CorruptFile(ValueError):
    pass


@dataclass
class Checkpoint:
    params: dict[str, np.ndarray]  # float32 arrays
    config: ModelConfig
    scaler: FeatureScaler
    layout_version: str
    threshold: float | None = None
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_model(
        cls,
        model: Model,
        threshold: float | None = None,
        metadata: dict | None = None,
    ) -> "Checkpoint":
        params = {
            name: t.data.astype(np.float32) for name, t in sorted(model.params.items())
        }
        return cls(
            params=params,
            config=model.config,
            scaler=model.scaler,
            layout_version=model.layout_version,
            threshold=threshold,
            metadata=metadata or {},
        )

    def to_model(self) -> Model:
        params = {
            name: Tensor(arr.astype(np.float64), requires_grad=False)
            for name, arr in self.params.items()
        }
        return Model(
            self.config, self.scaler, params=params, layout_version=self.layout_version
        )

    def to_bytes(self) -> bytes:
        manifest = [
            {"name": name, "shape": list(arr.shape)}
            for name, arr in sorted(self.params.items())
        ]
        header = {
            "config": self.config.to_dict(),
            "scaler": self.scaler.to_dict(),
            "layout_version": self.layout_version,
            "threshold": self.threshold,
            "metadata": self.metadata,
            "params": manifest,
        }
        header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
        body = b"".join(
            np.ascontiguousarray(self.params[m["name"]], dtype="<f4").tobytes()
            for m in manifest
        )
        payload = (
            MAGIC
            + struct.pack("<B", FORMAT_VERSION)
            + struct.pack("<I", len(header_bytes))
            + header_bytes
            + body
        )
        return payload + struct.pack("<I", zlib.crc32(payload) & 0xFFFFFFFF)

    def digest(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()[:16]


def save_checkpoint(checkpoint: Checkpoint, path):
    data = checkpoint.to_bytes()
    with open(path, "wb") as fh:
        fh.write(data)


def load_checkpoint(path) -> Checkpoint:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 13:
        raise CorruptFile("file too short to be a checkpoint")
    if data[:4] != MAGIC:
        raise CorruptFile("bad magic bytes")
    version = data[4]
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"format version {version}, expected {FORMAT_VERSION}")
    stored_crc = struct.unpack("<I", data[-4:])[0]
    if zlib.crc32(data[:-4]) & 0xFFFFFFFF != stored_crc:
        raise CorruptFile("checksum mismatch")
    header_len = struct.unpack("<I", data[5:9])[0]
    header_end = 9 + header_len
    try:
        header = json.loads(data[9:header_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptFile(f"bad header: {exc}") from None
    params: dict[str, np.ndarray] = {}
    offset = header_end
    for m in header["params"]:
        shape = tuple(m["shape"])
        count = int(np.prod(shape)) if shape else 1
        nbytes = count * 4
        arr = np.frombuffer(data[offset : offset + nbytes], dtype="<f4")
        if arr.size != count:
            raise CorruptFile(f"parameter section {m['name']} truncated")
        params[m["name"]] = arr.reshape(shape).copy()
        offset += nbytes
    if offset != len(data) - 4:
        raise CorruptFile("trailing bytes after parameter sections")
    return Checkpoint(
        params=params,
        config=ModelConfig.from_dict(header["config"]),
        scaler=FeatureScaler.from_dict(header["scaler"]),
        layout_version=header["layout_version"],
        threshold=header["threshold"],
        metadata=header["metadata"],
    )

"""Versioned binary parameter checkpoints.

Layout: magic ``FCK1`` | uint32 segment count | per segment (uint16 name
length, utf8 name, uint64 offset, uint8 ndim, uint32 dims...) | float64
payload.  A ``<path>.json`` sidecar carries arbitrary spec metadata.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from .params import ParamVector

MAGIC = b"FCK1"


def save_checkpoint(path, params: ParamVector, meta: dict | None = None) -> None:
    path = Path(path)
    chunks = [MAGIC, struct.pack("<I", len(params.layout))]
    for name, (offset, shape) in params.layout.items():
        encoded = name.encode("utf8")
        chunks.append(struct.pack("<H", len(encoded)))
        chunks.append(encoded)
        chunks.append(struct.pack("<QB", offset, len(shape)))
        chunks.append(struct.pack(f"<{len(shape)}I", *shape) if shape else b"")
    chunks.append(params.values.astype("<f8").tobytes())
    path.write_bytes(b"".join(chunks))
    sidecar = dict(meta or {})
    sidecar.setdefault("format", "FCK1")
    sidecar["num_values"] = int(params.size)
    sidecar["version"] = int(params.version)
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(sidecar, indent=2))


def load_checkpoint(path) -> tuple[ParamVector, dict]:
    path = Path(path)
    raw = path.read_bytes()
    if raw[:4] != MAGIC:
        raise ConfigError(f"{path}: bad magic {raw[:4]!r}, expected {MAGIC!r}")
    pos = 4
    (count,) = struct.unpack_from("<I", raw, pos)
    pos += 4
    layout = {}
    for _ in range(count):
        (name_len,) = struct.unpack_from("<H", raw, pos)
        pos += 2
        name = raw[pos:pos + name_len].decode("utf8")
        pos += name_len
        offset, ndim = struct.unpack_from("<QB", raw, pos)
        pos += 9
        shape = struct.unpack_from(f"<{ndim}I", raw, pos) if ndim else ()
        pos += 4 * ndim
        layout[name] = (offset, tuple(shape))
    values = np.frombuffer(raw[pos:], dtype="<f8").astype(np.float64)
    sidecar_path = path.with_suffix(path.suffix + ".json")
    meta = json.loads(sidecar_path.read_text()) if sidecar_path.exists() else {}
    pv = ParamVector(values.copy(), layout, version=int(meta.get("version", 0)))
    return pv, meta

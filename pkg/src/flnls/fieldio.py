"""Binary snapshot format for fields (magic "FLNLS1").

Layout, all little-endian:
    6 bytes   magic "FLNLS1"
    u64       dimension d
    u64       points per axis n
    f64       torus extent L
    f64       fractional order s of the producing run
    n^d x 2   f64 (re, im) pairs, row-major physical-space order
    [f64]     optional trailing snapshot time (trajectory files)
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .spectral import Field, make_grid

__all__ = ["MAGIC", "write_field", "read_field"]

MAGIC = b"FLNLS1"
_HEADER = struct.Struct("<QQdd")


def write_field(path: str | Path, u: Field, s: float, time: float | None = None) -> None:
    g = u.grid
    payload = np.ascontiguousarray(u.values, dtype=np.complex128)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_HEADER.pack(g.dim, g.n, g.extent, float(s)))
        fh.write(payload.astype("<c16", copy=False).tobytes())
        if time is not None:
            fh.write(struct.pack("<d", float(time)))


def read_field(path: str | Path) -> tuple[Field, float, float | None]:
    """Return (field, s, time); time is None for plain snapshots."""
    raw = Path(path).read_bytes()
    if raw[: len(MAGIC)] != MAGIC:
        raise ValueError(f"{path}: not a FLNLS1 field file")
    off = len(MAGIC)
    d, n, extent, s = _HEADER.unpack_from(raw, off)
    off += _HEADER.size
    count = n**d
    body = count * 16
    if len(raw) not in (off + body, off + body + 8):
        raise ValueError(f"{path}: truncated or oversized field payload")
    values = np.frombuffer(raw, dtype="<c16", count=count, offset=off)
    values = values.reshape((n,) * d).astype(np.complex128)
    time = None
    if len(raw) == off + body + 8:
        (time,) = struct.unpack_from("<d", raw, off + body)
    grid = make_grid(d, n, extent)
    return Field(grid, values), float(s), time

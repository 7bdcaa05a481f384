"""Readers for the point-file formats the cloud pipeline writes.

Implemented against the file formats alone (CSV header line, TPOT
magic/version/record layout) so this package needs nothing from the
producing one.  Both formats carry the same records: root position,
leading real root of the word's polynomial, packed word id, flavor byte
(0 periodic, 1 preperiodic).
"""

from __future__ import annotations

import struct

import numpy as np

CSV_HEADER = "z_re,z_im,lambda,word_id,flavor"
TPOT_MAGIC = b"TPOT"
TPOT_VERSION = 1
_RECORD = struct.Struct("<dddQB")

POINT_DTYPE = np.dtype([
    ("z_re", "<f8"),
    ("z_im", "<f8"),
    ("lam", "<f8"),
    ("word_id", "<u8"),
    ("flavor", "u1"),
])


def word_length(word_id: int) -> int:
    """Total letter count packed into an id (guard bit stripped, preperiod
    field in the low six bits ignored)."""
    return int(word_id >> 6).bit_length() - 1


def read_points(path: str) -> np.ndarray:
    """Parse a CSV or TPOT point file, sniffing by magic bytes."""
    with open(path, "rb") as f:
        head = f.read(4)
    if head == TPOT_MAGIC:
        return _read_tpot(path)
    return _read_csv(path)


def _read_tpot(path: str) -> np.ndarray:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != TPOT_MAGIC:
        raise ValueError(f"bad magic at byte 0 in {path}")
    (version,) = struct.unpack_from("<H", blob, 4)
    if version != TPOT_VERSION:
        raise ValueError(f"unsupported version {version} at byte 4")
    body = blob[6:]
    if len(body) % _RECORD.size:
        good = len(body) - len(body) % _RECORD.size
        raise ValueError(f"truncated record at byte {6 + good}")
    out = np.zeros(len(body) // _RECORD.size, dtype=POINT_DTYPE)
    for i, rec in enumerate(_RECORD.iter_unpack(body)):
        out[i] = rec
    return out


def _read_csv(path: str) -> np.ndarray:
    rows = []
    with open(path, "rb") as f:
        header = f.readline()
        if header.decode("utf-8", "replace").strip() != CSV_HEADER:
            raise ValueError(f"bad header at byte 0 in {path}")
        offset = len(header)
        for line in f:
            parts = line.decode("utf-8", "replace").rstrip("\n").split(",")
            if len(parts) != 5:
                raise ValueError(f"bad row at byte {offset} in {path}")
            try:
                rows.append((float(parts[0]), float(parts[1]), float(parts[2]),
                             int(parts[3]), int(parts[4])))
            except ValueError:
                raise ValueError(f"bad row at byte {offset} in {path}") from None
            offset += len(line)
    out = np.zeros(len(rows), dtype=POINT_DTYPE)
    for i, rec in enumerate(rows):
        out[i] = rec
    return out

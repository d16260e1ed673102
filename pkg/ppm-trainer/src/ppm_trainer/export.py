"""ACM1 binary interchange with the color-mapping engine.

Layout: magic "ACM1", N as u32 little-endian, then D = N^2 + 8N + 3
IEEE-754 float32 little-endian values in the flat parameter order.
"""

import os
import struct
from pathlib import Path

import numpy as np

from .colormlp import param_count

MAGIC = b"ACM1"


def save_acm1(theta, n_hidden: int, path):
    theta = np.asarray(theta, dtype="<f4").ravel()
    if theta.size != param_count(n_hidden):
        raise ValueError(f"expected {param_count(n_hidden)} values, got {theta.size}")
    blob = MAGIC + struct.pack("<I", n_hidden) + theta.tobytes()
    path = Path(path)
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    tmp.write_bytes(blob)
    os.replace(tmp, path)


def load_acm1(path):
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"bad magic {data[:4]!r}")
    (n,) = struct.unpack("<I", data[4:8])
    expected = 8 + 4 * param_count(n)
    if len(data) != expected:
        raise ValueError(f"stream length {len(data)}, expected {expected} for N={n}")
    return n, np.frombuffer(data, dtype="<f4", offset=8).astype(np.float64)

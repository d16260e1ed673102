import struct

import numpy as np
import pytest

from ppm_trainer.colormlp import param_count
from ppm_trainer.export import load_acm1, save_acm1


def test_round_trip_is_byte_exact(tmp_path):
    rng = np.random.default_rng(0)
    theta = rng.normal(0, 1, param_count(20))
    path = tmp_path / "a.acm1"
    save_acm1(theta, 20, path)
    first = path.read_bytes()
    n, loaded = load_acm1(path)
    assert n == 20
    np.testing.assert_array_equal(loaded, theta.astype(np.float32).astype(np.float64))
    save_acm1(loaded, 20, path)
    assert path.read_bytes() == first


def test_header_layout(tmp_path):
    theta = np.zeros(param_count(5))
    path = tmp_path / "b.acm1"
    save_acm1(theta, 5, path)
    blob = path.read_bytes()
    assert blob[:4] == b"ACM1"
    assert struct.unpack("<I", blob[4:8]) == (5,)
    assert len(blob) == 8 + 4 * param_count(5)


def test_wrong_parameter_count_rejected(tmp_path):
    with pytest.raises(ValueError):
        save_acm1(np.zeros(10), 20, tmp_path / "c.acm1")


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "d.acm1"
    path.write_bytes(b"NOPE" + b"\x00" * 16)
    with pytest.raises(ValueError, match="magic"):
        load_acm1(path)


def test_truncated_stream_rejected(tmp_path):
    path = tmp_path / "e.acm1"
    save_acm1(np.zeros(param_count(5)), 5, path)
    path.write_bytes(path.read_bytes()[:-4])
    with pytest.raises(ValueError, match="length"):
        load_acm1(path)

"""Smoke tests for the python bindings against the in-tree build."""

import numpy as np
import pytest

import oilu


def test_version():
    assert oilu.__version__


def test_encode_shape_and_determinism():
    img = oilu.encode("4670")
    assert img.shape == (512, 512)
    assert img.dtype == np.uint8
    assert np.array_equal(img, oilu.encode("4670"))
    assert set(np.unique(img)) == {0, 255}


def test_round_trip():
    img = oilu.encode("4670")
    result = oilu.decode(img)
    assert result["value"] == "4670"
    assert set(result["facets"]) == {"4670", "2450", "8230", "6890"}
    assert len(result["rings"]) == 4
    assert all(r["margin"] > 0 for r in result["rings"])
    assert result["timing_ms"] > 0


def test_facets():
    assert set(oilu.facets("4670")) == {"4670", "2450", "8230", "6890"}
    assert oilu.facets("0") == ["0", "0", "0", "0"]


def test_rotation_equivariance_via_numpy():
    img = oilu.encode("352")
    for k in range(4):
        rotated = np.rot90(img, k).copy()
        value = oilu.decode(rotated)["value"]
        expected = "".join(str(oilu.rotate_digit(int(d), k)) for d in "352")
        assert value == expected


def test_digit_pattern():
    assert oilu.digit_pattern(0) == ["top", "right", "bottom", "left"]
    assert oilu.digit_pattern(1) == ["bottom"]
    with pytest.raises(Exception):
        oilu.digit_pattern(10)


def test_decode_failure_is_typed():
    blank = np.full((128, 128), 255, dtype=np.uint8)
    with pytest.raises(oilu.DecodeFailure):
        oilu.decode(blank)


def test_distortions_round_trip_mildly():
    img = oilu.encode("4670")
    noisy = oilu.apply_noise(img, 10.0, seed=3)
    assert oilu.decode(noisy)["value"] == "4670"
    blurred = oilu.apply_blur(img, 1.0)
    assert oilu.decode(blurred)["value"] == "4670"
    squashed = oilu.apply_contrast(img, 0.5)
    assert oilu.decode(squashed)["value"] == "4670"


def test_polarity_complement():
    img = oilu.encode("81", polarity="light_on_dark")
    assert oilu.decode(img)["value"] == "81"

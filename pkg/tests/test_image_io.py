import numpy as np
import pytest
from PIL import Image

from wcenhance.errors import (
    UnreadableFileError,
    UnsupportedFormatError,
    ZeroDimensionImageError,
)
from wcenhance.image_io import load_image, quantize_u8, RgbImage, save_image


def write_png(path, arr_u8):
    Image.fromarray(arr_u8, mode="RGB").save(path, format="PNG")


def test_load_white_pixel(tmp_path):
    p = tmp_path / "white.png"
    write_png(p, np.full((1, 1, 3), 255, np.uint8))
    img = load_image(p)
    assert img.width == 1 and img.height == 1
    assert img.r[0, 0] == 1.0 and img.g[0, 0] == 1.0 and img.b[0, 0] == 1.0


def test_load_black_pixel(tmp_path):
    p = tmp_path / "black.png"
    write_png(p, np.zeros((1, 1, 3), np.uint8))
    img = load_image(p)
    assert img.r[0, 0] == 0.0 and img.g[0, 0] == 0.0 and img.b[0, 0] == 0.0


def test_load_divides_by_255(tmp_path):
    p = tmp_path / "two.png"
    arr = np.zeros((1, 2, 3), np.uint8)
    arr[0, 0] = (128, 0, 0)
    arr[0, 1] = (0, 128, 0)
    write_png(p, arr)
    img = load_image(p)
    assert np.array_equal(img.r, [[128 / 255, 0.0]])
    assert np.array_equal(img.g, [[0.0, 128 / 255]])
    assert np.array_equal(img.b, [[0.0, 0.0]])


def test_save_all_ones(tmp_path):
    img = RgbImage.from_array(np.ones((2, 2, 3)))
    p = tmp_path / "ones.png"
    save_image(img, p)
    raw = np.asarray(Image.open(p))
    assert raw.shape == (2, 2, 3)
    assert np.all(raw == 255)


def test_encode_rounds_half_up():
    assert quantize_u8(np.array([0.5]))[0] == 128  # 127.5 rounds up
    assert quantize_u8(np.array([0.0]))[0] == 0
    assert quantize_u8(np.array([1.0]))[0] == 255


def test_byte_round_trip_all_levels(tmp_path):
    values = np.arange(256, dtype=np.uint8).reshape(16, 16)
    arr = np.stack([values, values[::-1], values.T], axis=-1)
    p = tmp_path / "levels.png"
    write_png(p, arr)
    img = load_image(p)
    save_image(img, tmp_path / "levels2.png")
    raw2 = np.asarray(Image.open(tmp_path / "levels2.png"))
    assert np.array_equal(raw2, arr)


def test_save_load_error_bound(tmp_path, rng):
    arr = rng.uniform(0.0, 1.0, (8, 9, 3))
    img = RgbImage.from_array(arr)
    p = tmp_path / "rt.png"
    save_image(img, p)
    back = load_image(p)
    err = np.abs(back.to_array() - arr).max()
    assert err <= 1.0 / 510 + 1e-12


def test_load_range_invariant(tmp_path, rng):
    arr = rng.integers(0, 256, (5, 7, 3)).astype(np.uint8)
    p = tmp_path / "r.png"
    write_png(p, arr)
    img = load_image(p)
    data = img.to_array()
    assert data.min() >= 0.0 and data.max() <= 1.0


def test_rgba_alpha_discarded(tmp_path):
    arr = np.zeros((2, 2, 4), np.uint8)
    arr[..., 0] = 200
    arr[..., 3] = 7  # alpha must not leak into the channels
    Image.fromarray(arr, mode="RGBA").save(tmp_path / "a.png", format="PNG")
    img = load_image(tmp_path / "a.png")
    assert np.allclose(img.r, 200 / 255)
    assert np.all(img.g == 0.0) and np.all(img.b == 0.0)


def test_missing_file_error(tmp_path):
    with pytest.raises(UnreadableFileError):
        load_image(tmp_path / "nope.png")


def test_corrupt_file_error(tmp_path):
    p = tmp_path / "bad.png"
    p.write_bytes(b"this is not a png at all")
    with pytest.raises(UnreadableFileError):
        load_image(p)


def test_non_png_rejected(tmp_path):
    p = tmp_path / "img.jpg"
    Image.fromarray(np.zeros((4, 4, 3), np.uint8), mode="RGB").save(p, format="JPEG")
    with pytest.raises(UnsupportedFormatError):
        load_image(p)


def test_zero_dimension_rejected():
    with pytest.raises(ZeroDimensionImageError):
        RgbImage.from_array(np.zeros((0, 4, 3)))


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        RgbImage.from_array(np.full((2, 2, 3), 1.5))


def test_plane_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        RgbImage(width=2, height=2, r=np.zeros((2, 2)), g=np.zeros((2, 3)), b=np.zeros((2, 2)))

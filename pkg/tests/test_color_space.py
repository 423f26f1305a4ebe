import numpy as np
import pytest

from wcenhance.color_space import (
    hsi_to_rgb,
    HsiImage,
    normalize_intensity,
    rgb_to_hsi,
)
from wcenhance.image_io import RgbImage


def single_pixel(r, g, b):
    return RgbImage.from_array(np.array([[[r, g, b]]], dtype=np.float64))


def test_gray_pixel():
    for v in (0.25, 0.5, 1.0):
        hsi = rgb_to_hsi(single_pixel(v, v, v))
        assert hsi.h[0, 0] == 0.0
        assert hsi.s[0, 0] == 0.0
        assert np.isclose(hsi.i[0, 0], v, atol=1e-15)


def test_pure_red():
    hsi = rgb_to_hsi(single_pixel(1.0, 0.0, 0.0))
    assert np.isclose(hsi.h[0, 0], 0.0, atol=1e-12)
    assert np.isclose(hsi.s[0, 0], 1.0, atol=1e-12)
    assert np.isclose(hsi.i[0, 0], 1.0 / 3.0, atol=1e-12)


def test_pure_blue():
    hsi = rgb_to_hsi(single_pixel(0.0, 0.0, 1.0))
    assert np.isclose(hsi.h[0, 0], 4.0 * np.pi / 3.0, atol=1e-12)
    assert np.isclose(hsi.s[0, 0], 1.0, atol=1e-12)
    assert np.isclose(hsi.i[0, 0], 1.0 / 3.0, atol=1e-12)


def test_achromatic_inverse():
    for v in (0.0, 0.3, 1.0):
        hsi = HsiImage(1, 1, np.zeros((1, 1)), np.zeros((1, 1)), np.full((1, 1), v))
        rgb = hsi_to_rgb(hsi)
        assert rgb.r[0, 0] == pytest.approx(v, abs=1e-15)
        assert rgb.g[0, 0] == pytest.approx(v, abs=1e-15)
        assert rgb.b[0, 0] == pytest.approx(v, abs=1e-15)


def test_pure_red_inverse():
    hsi = HsiImage(1, 1, np.zeros((1, 1)), np.ones((1, 1)), np.full((1, 1), 1.0 / 3.0))
    rgb = hsi_to_rgb(hsi)
    assert np.allclose(
        [rgb.r[0, 0], rgb.g[0, 0], rgb.b[0, 0]], [1.0, 0.0, 0.0], atol=1e-6
    )


def test_round_trip_random(rng):
    arr = rng.uniform(0.0, 1.0, (40, 40, 3))
    img = RgbImage.from_array(arr)
    back = hsi_to_rgb(rgb_to_hsi(img))
    assert np.abs(back.to_array() - arr).max() <= 1e-6


def test_round_trip_grid():
    lv = np.linspace(0.0, 1.0, 17)
    r, g, b = np.meshgrid(lv, lv, lv, indexing="ij")
    arr = np.stack([r.ravel(), g.ravel(), b.ravel()], axis=-1).reshape(17, 17**2, 3)
    img = RgbImage.from_array(arr)
    back = hsi_to_rgb(rgb_to_hsi(img))
    assert np.abs(back.to_array() - arr).max() <= 1e-6


def test_hue_invariant_under_uniform_scaling(rng):
    arr = rng.uniform(0.05, 1.0, (10, 10, 3))
    base = rgb_to_hsi(RgbImage.from_array(arr))
    for k in (0.2, 0.5, 0.99):
        scaled = rgb_to_hsi(RgbImage.from_array(k * arr))
        chromatic = base.s > 1e-6
        assert np.abs(scaled.h - base.h)[chromatic].max() <= 1e-6


def test_normalize_divides_by_max():
    out = normalize_intensity(np.array([[0.2, 0.8]]))
    assert np.allclose(out.plane, [[0.25, 1.0]])
    assert out.i_max == 0.8


def test_normalize_identity_when_max_is_one():
    plane = np.array([[0.1, 1.0, 0.4]])
    out = normalize_intensity(plane)
    assert np.array_equal(out.plane, plane)
    assert out.i_max == 1.0


def test_normalize_all_zero_degenerate():
    plane = np.zeros((3, 3))
    out = normalize_intensity(plane)
    assert np.array_equal(out.plane, plane)
    assert out.i_max == 0.0


def test_normalize_max_exactly_one(rng):
    for _ in range(20):
        plane = rng.uniform(0.0, 0.9, (6, 6))
        out = normalize_intensity(plane)
        assert out.plane.max() == 1.0


def test_saturation_range_random(rng):
    arr = rng.uniform(0.0, 1.0, (30, 30, 3))
    hsi = rgb_to_hsi(RgbImage.from_array(arr))
    assert hsi.s.min() >= 0.0 and hsi.s.max() <= 1.0
    assert hsi.h.min() >= 0.0 and hsi.h.max() < 2.0 * np.pi

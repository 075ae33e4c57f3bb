import numpy as np
import pytest

from weakmeans import FilterConfig, GrayImage, filter_image, filter_pixel, minimize_penalty
from weakmeans.penalty import MinimizerConfig
from weakmeans.tonal import center_estimate, tonal_penalty


def step_edge(size=32, lo=0.2, hi=0.8):
    pixels = np.full((size, size), lo)
    pixels[:, size // 2 :] = hi
    return GrayImage(pixels=pixels, maxval=255)


def noisy_fixture(size=32, seed=0):
    rng = np.random.default_rng(seed)
    levels = rng.integers(30, 130, size=(size, size))
    return GrayImage(pixels=levels / 255, maxval=255)


def test_filter_pixel_constant_window():
    cfg = FilterConfig(radius=1)
    win = np.full(9, 0.4)
    assert filter_pixel(win, 0.4, cfg) == pytest.approx(0.4, abs=1e-15)


def test_filter_pixel_blur_limit():
    # flat tonal kernel and uniform spatial weights reduce to the window mean
    cfg = FilterConfig(radius=1, tonal_sigma=1e6, spatial_sigma=1e6)
    win = np.arange(9) / 10.0
    assert filter_pixel(win, win[4], cfg) == pytest.approx(win.mean(), abs=1e-9)


def test_filter_pixel_outlier_suppression():
    win = np.array([0.0, 0.0, 0.0, 1.0])
    spatial = np.ones(4)
    wide = filter_pixel(win, 0.0, FilterConfig(tonal_sigma=0.5), spatial=spatial)
    tight = filter_pixel(win, 0.0, FilterConfig(tonal_sigma=0.05), spatial=spatial)
    assert tight < wide < 0.25
    assert tight < 1e-10


def test_center_estimators():
    cfg_med = FilterConfig(estimator="median")
    cfg_mode = FilterConfig(estimator="mode")
    win = np.array([0.1, 0.1, 0.9, 0.2, 0.1])
    assert center_estimate(win, 0.9, cfg_med) == pytest.approx(0.1)
    assert center_estimate(win, 0.9, cfg_mode) == pytest.approx(0.1)
    cfg_center = FilterConfig(estimator="center")
    assert center_estimate(win, 0.9, cfg_center) == 0.9


def test_filter_image_constant_fixpoint():
    img = GrayImage(pixels=np.full((8, 8), 0.6), maxval=255)
    for estimator in ("center", "median", "shorth", "mode"):
        out = filter_image(img, FilterConfig(radius=1, estimator=estimator))
        assert np.allclose(out.pixels, 0.6, atol=1e-12)


@pytest.mark.parametrize("estimator", ["center", "median", "shorth", "mode"])
def test_filter_image_shift_invariance(estimator):
    img = noisy_fixture()
    c = 0.3
    cfg = FilterConfig(radius=1, estimator=estimator, tonal_sigma=0.08)
    base = filter_image(img, cfg).pixels
    shifted = filter_image(
        GrayImage(pixels=img.pixels + c, maxval=img.maxval), cfg
    ).pixels
    assert np.max(np.abs(shifted - (base + c))) <= 1e-9


def test_filter_output_within_window_range():
    img = noisy_fixture(size=16, seed=3)
    cfg = FilterConfig(radius=1, estimator="median")
    out = filter_image(img, cfg)
    padded = np.pad(img.pixels, 1, mode="reflect")
    for i in range(16):
        for j in range(16):
            win = padded[i : i + 3, j : j + 3]
            assert win.min() - 1e-12 <= out.pixels[i, j] <= win.max() + 1e-12


def test_step_edge_preserved():
    img = step_edge()
    out = filter_image(img, FilterConfig(radius=2, tonal_sigma=0.1, spatial_sigma=2.0))
    interior_lo = out.pixels[:, : 16 - 2]
    interior_hi = out.pixels[:, 16 + 2 :]
    assert np.max(np.abs(interior_lo - 0.2)) < 0.01
    assert np.max(np.abs(interior_hi - 0.8)) < 0.01


def test_closed_form_matches_penalty_minimizer():
    rng = np.random.default_rng(5)
    cfg = FilterConfig(radius=1, estimator="median", tonal_sigma=0.2)
    spatial = cfg.spatial_weights()
    for _ in range(100):
        win = rng.uniform(0, 1, 9)
        closed = filter_pixel(win, win[4], cfg, spatial)
        P = tonal_penalty(win, win[4], cfg, spatial)
        via_penalty = minimize_penalty(P, win)
        assert abs(closed - via_penalty) <= 1e-7


def test_huber_dissimilarity_path():
    cfg = FilterConfig(radius=1, dissimilarity="huber", huber_delta=0.1)
    win = np.array([0.2, 0.2, 0.21, 0.19, 0.2, 0.2, 0.9, 0.2, 0.2])
    out = filter_pixel(win, 0.2, cfg)
    assert 0.19 <= out <= 0.25  # outlier influence bounded
    # constant windows are a fixpoint of the huber path too
    assert filter_pixel(np.full(9, 0.3), 0.3, cfg) == pytest.approx(0.3, abs=1e-9)


def test_huber_filter_shift_invariance():
    img = noisy_fixture(size=8, seed=7)
    cfg = FilterConfig(radius=1, dissimilarity="huber", estimator="median")
    base = filter_image(img, cfg).pixels
    shifted = filter_image(
        GrayImage(pixels=img.pixels + 0.25, maxval=img.maxval), cfg
    ).pixels
    assert np.max(np.abs(shifted - (base + 0.25))) <= 1e-7


def test_filter_determinism():
    img = noisy_fixture(size=12, seed=9)
    cfg = FilterConfig(radius=2, estimator="shorth", tonal_kernel="cauchy")
    a = filter_image(img, cfg).pixels
    b = filter_image(img, cfg).pixels
    assert np.array_equal(a, b)


def test_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(radius=-1)
    with pytest.raises(ValueError):
        FilterConfig(spatial_sigma=0)
    with pytest.raises(ValueError):
        FilterConfig(tonal_kernel="box")
    with pytest.raises(ValueError):
        FilterConfig(estimator="mean")
    with pytest.raises(ValueError):
        FilterConfig(boundary="wrap")

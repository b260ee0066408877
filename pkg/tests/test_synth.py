import numpy as np
import pytest

from phasetv import (
    SECOND_DIFF,
    abs_cyclic_diff,
    add_wrapped_gaussian_noise,
    cyclic_error,
    gen_atan2,
    gen_blocks,
    gen_wrapped_ramp,
    mask_band,
    mask_disc,
    mask_random,
    mask_subsample3,
    wrap,
)

TWO_PI = 2.0 * np.pi


def test_atan2_field():
    img = gen_atan2(128)
    assert img.shape == (128, 128)
    assert np.all(img >= -np.pi) and np.all(img < np.pi)
    # pixel closest to (x, y) = (1/2, 0) is nearly phase 0
    assert abs(img[63, 127]) < 2.0 / 127
    # quarter-turn rotational symmetry of the sampled field
    rotated = np.rot90(img, k=1)
    shifted = wrap(img + np.pi / 2)
    assert np.max(np.abs(wrap(rotated - shifted))) < 1e-12
    with pytest.raises(ValueError):
        gen_atan2(1)


def test_ramp_examples():
    assert np.array_equal(gen_wrapped_ramp((3, 4), 0.0), np.zeros((3, 4)))
    row = gen_wrapped_ramp((1, 5), 2.0)[0]
    want = [0.0, 2.0, 4.0 - TWO_PI, 6.0 - TWO_PI, 8.0 - TWO_PI]
    assert np.allclose(row, want, atol=1e-12)
    with pytest.raises(ValueError):
        gen_wrapped_ramp((2, 2), np.inf)
    with pytest.raises(ValueError):
        gen_wrapped_ramp((2, 2), 1.0, "sideways")


def test_ramp_second_differences_vanish():
    img = gen_wrapped_ramp((4, 50), 0.41, "horizontal")
    for c in range(48):
        assert abs_cyclic_diff(img[0, c : c + 3], SECOND_DIFF) < 1e-12
    img = gen_wrapped_ramp((50, 4), 0.41, "vertical")
    for r in range(48):
        assert abs_cyclic_diff(img[r : r + 3, 0], SECOND_DIFF) < 1e-12


def test_blocks_image():
    img = gen_blocks((128, 128))
    assert img.shape == (128, 128)
    assert np.all(img >= -np.pi) and np.all(img < np.pi)
    # constant foreground block
    block = img[round(0.15 * 128) : round(0.45 * 128), round(0.2 * 128) : round(0.8 * 128)]
    assert np.all(block == block[0, 0])
    # ramp block has vanishing vertical second differences
    r0, r1 = round(0.55 * 128), round(0.9 * 128)
    c = 64
    for r in range(r0, r1 - 2):
        assert abs_cyclic_diff(img[r : r + 3, c], SECOND_DIFF) < 1e-12
    with pytest.raises(ValueError):
        gen_blocks((32, 32))


def test_subsample3_pattern():
    known = mask_subsample3((3, 3))
    assert known[0, 0] and known.sum() == 1
    assert mask_subsample3((1, 1)).all()
    assert mask_subsample3((257, 257)).sum() == 7396
    rng = np.random.default_rng(40)
    for _ in range(10):
        shape = (int(rng.integers(1, 40)), int(rng.integers(1, 40)))
        count = mask_subsample3(shape).sum()
        assert count == -(-shape[0] // 3) * -(-shape[1] // 3)


def test_random_mask():
    assert mask_random((5, 5), 0.0, seed=1).all()
    assert not mask_random((5, 5), 1.0, seed=1).any()
    m = mask_random((432, 426), 0.2, seed=3)
    assert (~m).sum() == 36_806
    assert np.array_equal(m, mask_random((432, 426), 0.2, seed=3))
    assert not np.array_equal(m, mask_random((432, 426), 0.2, seed=4))
    with pytest.raises(ValueError):
        mask_random((5, 5), 1.5, seed=0)


def test_disc_mask():
    known = mask_disc((64, 64), 16.0)
    assert not known[31, 31] and not known[32, 32]
    assert known[0, 0] and known[63, 63]
    assert known[31, 31 - 17] and not known[31, 31 - 10]
    single = mask_disc((9, 9), 0.0)
    assert (~single).sum() == 1 and not single[4, 4]
    with pytest.raises(ValueError):
        mask_disc((9, 9), -1.0)


def test_band_mask():
    known = mask_band((8, 20), start=5, width=4)
    assert (~known).sum() == 8 * 4
    assert not known[:, 5:9].any() and known[:, :5].all() and known[:, 9:].all()
    horizontal = mask_band((20, 8), start=5, width=4, orientation="horizontal")
    assert not horizontal[5:9, :].any()
    with pytest.raises(ValueError):
        mask_band((8, 8), start=-1, width=2)
    with pytest.raises(ValueError):
        mask_band((8, 8), start=1, width=2, orientation="diag")


def test_noise():
    rng = np.random.default_rng(41)
    x = rng.uniform(-np.pi, np.pi, (16, 16))
    assert np.array_equal(add_wrapped_gaussian_noise(x, 0.0, seed=0), x)
    noisy = add_wrapped_gaussian_noise(x, 0.3, seed=0)
    assert np.all(noisy >= -np.pi) and np.all(noisy < np.pi)
    assert np.array_equal(noisy, add_wrapped_gaussian_noise(x, 0.3, seed=0))
    with pytest.raises(ValueError):
        add_wrapped_gaussian_noise(x, -0.1, seed=0)


def test_noise_circular_std():
    zeros = np.zeros((1000, 1000))
    noisy = add_wrapped_gaussian_noise(zeros, 0.3, seed=5)
    resultant = np.abs(np.mean(np.exp(1j * noisy)))
    circ_std = np.sqrt(-2.0 * np.log(resultant))
    assert circ_std == pytest.approx(0.3, rel=0.01)


def test_cyclic_error():
    rng = np.random.default_rng(42)
    x = rng.uniform(-np.pi, np.pi, (10, 10))
    assert cyclic_error(x, x) == (0.0, 0.0)
    y = x.copy()
    y[0, 0] = wrap(x[0, 0] + np.pi)
    mse, max_err = cyclic_error(x, y)
    assert mse == pytest.approx(np.pi**2 / 100, abs=1e-12)
    assert max_err == pytest.approx(np.pi, abs=1e-12)
    shifted = np.vectorize(wrap)(x + TWO_PI)
    mse, max_err = cyclic_error(x, shifted)
    assert mse < 1e-28 and max_err < 1e-14
    with pytest.raises(ValueError):
        cyclic_error(x, x[:5])

import numpy as np
import pytest
from PIL import Image

from occlubench.errors import (
    DimensionMismatchError,
    FormatPolicyError,
    ImageDecodeError,
    ImageReadError,
    InvalidSpecError,
)
from occlubench.imaging import GRAY_FILL, apply_mask, load_image, resize, write_image
from occlubench.masks import OcclusionKind, OcclusionMask, OcclusionSpec, generate


def random_image(w, h, seed=0, high=256):
    return np.random.default_rng(seed).integers(0, high, size=(h, w, 3), dtype=np.uint8)


class TestLoad:
    def test_png_round_trip(self, tmp_path):
        img = random_image(24, 16, seed=1)
        path = tmp_path / "a.png"
        write_image(img, path)
        assert np.array_equal(load_image(path), img)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ImageReadError):
            load_image(tmp_path / "nope.png")

    def test_truncated_jpeg(self, tmp_path):
        path = tmp_path / "t.jpg"
        Image.fromarray(random_image(64, 64)).save(path, format="JPEG")
        data = path.read_bytes()
        path.write_bytes(data[: len(data) // 2])
        with pytest.raises(ImageDecodeError):
            load_image(path)

    def test_grayscale_becomes_rgb(self, tmp_path):
        path = tmp_path / "g.png"
        Image.fromarray(np.full((8, 8), 200, dtype=np.uint8), mode="L").save(path)
        out = load_image(path)
        assert out.shape == (8, 8, 3)
        assert (out == 200).all()

    def test_alpha_composited_over_black(self, tmp_path):
        rgba = np.zeros((4, 4, 4), dtype=np.uint8)
        rgba[..., 0] = 200  # red
        rgba[..., 3] = 0  # fully transparent
        path = tmp_path / "a.png"
        Image.fromarray(rgba, mode="RGBA").save(path)
        assert (load_image(path) == 0).all()


class TestResize:
    def test_same_size_is_identity(self):
        img = random_image(24, 24, seed=3)
        out = resize(img, 24, 24)
        assert np.array_equal(out, img)
        assert out is not img

    def test_downscale_dims(self):
        assert resize(random_image(448, 448), 224, 224).shape == (224, 224, 3)

    def test_nonsquare_to_square(self):
        assert resize(random_image(640, 480), 336, 336).shape == (336, 336, 3)

    def test_invalid_dims(self):
        with pytest.raises(InvalidSpecError):
            resize(random_image(8, 8), 0, 8)


class TestApplyMask:
    def test_empty_mask_identity(self):
        img = random_image(20, 20)
        mask = OcclusionMask(np.zeros((20, 20), dtype=bool))
        assert np.array_equal(apply_mask(img, mask), img)

    def test_full_mask_all_gray(self):
        img = random_image(20, 20)
        mask = OcclusionMask(np.ones((20, 20), dtype=bool))
        assert (apply_mask(img, mask) == 128).all()

    def test_slide_half(self):
        img = random_image(224, 224, seed=5, high=128)
        mask = generate(OcclusionSpec(OcclusionKind.SLIDE, 0.5, 224, 224))
        out = apply_mask(img, mask)
        assert (out[:, :112] == 128).all()
        assert np.array_equal(out[:, 112:], img[:, 112:])

    def test_changes_exactly_masked_pixels(self):
        img = random_image(64, 64, seed=7, high=128)  # no pixel equals the fill
        mask = generate(OcclusionSpec(OcclusionKind.SNOW, 0.2, 64, 64, seed=1))
        out = apply_mask(img, mask)
        changed = (out != img).any(axis=2)
        assert int(changed.sum()) == mask.occluded_count
        assert np.array_equal(changed, mask.pixels)

    def test_idempotent(self):
        img = random_image(32, 32, seed=2)
        mask = generate(OcclusionSpec(OcclusionKind.RAIN, 0.3, 32, 32, seed=4))
        once = apply_mask(img, mask)
        assert np.array_equal(apply_mask(once, mask), once)

    def test_input_unmodified(self):
        img = random_image(16, 16)
        before = img.copy()
        apply_mask(img, generate(OcclusionSpec(OcclusionKind.GRID, 0.5, 16, 16)))
        assert np.array_equal(img, before)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            apply_mask(random_image(10, 10), OcclusionMask(np.zeros((8, 8), dtype=bool)))

    def test_custom_fill(self):
        img = random_image(8, 8)
        mask = OcclusionMask(np.ones((8, 8), dtype=bool))
        out = apply_mask(img, mask, fill=(1, 2, 3))
        assert (out == (1, 2, 3)).all()


class TestWrite:
    def test_jpeg_rejected(self, tmp_path):
        with pytest.raises(FormatPolicyError):
            write_image(random_image(8, 8), tmp_path / "x.jpg", format="jpeg")

    def test_creates_parent_dirs(self, tmp_path):
        path = tmp_path / "a" / "b" / "c.png"
        write_image(random_image(8, 8), path)
        assert path.exists()

    def test_default_fill_is_mid_gray(self):
        assert GRAY_FILL == (128, 128, 128)

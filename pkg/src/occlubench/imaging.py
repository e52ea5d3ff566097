"""Image I/O and mask application.

Images are plain (height, width, 3) uint8 RGB arrays. Occluded artifacts
are written as PNG only: a lossy format would perturb the gray fill and
break the exact-coverage guarantee downstream.
"""

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from occlubench.errors import (
    DimensionMismatchError,
    FormatPolicyError,
    ImageDecodeError,
    ImageReadError,
    ImageWriteError,
    InvalidSpecError,
)
from occlubench.masks import OcclusionMask

# Fill used for occluded pixels: mid-gray, partial information loss rather
# than blackout.
GRAY_FILL = (128, 128, 128)


def load_image(path) -> np.ndarray:
    """Decode a PNG/JPEG into an RGB array. Grayscale is expanded to RGB;
    alpha is composited over black."""
    path = Path(path)
    if not path.exists():
        raise ImageReadError(f"no such file: {path}")
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "P":
                im = im.convert("RGBA" if "transparency" in im.info else "RGB")
            if im.mode in ("RGBA", "LA"):
                rgba = im.convert("RGBA")
                background = Image.new("RGB", rgba.size, (0, 0, 0))
                background.paste(rgba, mask=rgba.getchannel("A"))
                im = background
            elif im.mode != "RGB":
                im = im.convert("RGB")
            return np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageDecodeError(f"cannot decode {path}: {exc}") from exc
    except OSError as exc:
        raise ImageDecodeError(f"cannot decode {path}: {exc}") from exc


def resize(image: np.ndarray, target_w: int, target_h: int) -> np.ndarray:
    """Bilinear resample to exactly target_w x target_h (no aspect
    preservation). A same-size resize is the identity."""
    if target_w < 1 or target_h < 1:
        raise InvalidSpecError("target dimensions must be >= 1")
    h, w = image.shape[:2]
    if (w, h) == (target_w, target_h):
        return image.copy()
    resampled = Image.fromarray(image, mode="RGB").resize(
        (target_w, target_h), Image.BILINEAR
    )
    return np.asarray(resampled, dtype=np.uint8)


def apply_mask(image: np.ndarray, mask: OcclusionMask, fill=GRAY_FILL) -> np.ndarray:
    """Replace occluded pixels with the fill color; everything else is
    copied bit-for-bit. The input is not modified."""
    h, w = image.shape[:2]
    if (w, h) != (mask.width, mask.height):
        raise DimensionMismatchError(
            f"image is {w}x{h} but mask is {mask.width}x{mask.height}"
        )
    out = image.copy()
    out[mask.pixels] = np.asarray(fill, dtype=np.uint8)
    return out


def write_image(image: np.ndarray, path, format: str = "png") -> None:
    """Write an RGB array losslessly. Only PNG is allowed; reloading the
    file yields a bit-identical raster."""
    if format.lower() != "png":
        raise FormatPolicyError(
            f"occluded artifacts must be PNG (lossless); got {format!r}"
        )
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(image, mode="RGB").save(path, format="PNG")
    except OSError as exc:
        raise ImageWriteError(f"cannot write {path}: {exc}") from exc

"""Deterministic occlusion masks with an exact pixel-count guarantee.

Five patterns are supported: slide (vertical boundary sweeping left to
right), bars (evenly spaced vertical bars), grid (random cells of a fixed
partition), rain (near-vertical streaks) and snow (small discs). Whatever
the pattern, a mask built for fraction f on a w x h canvas occludes
exactly ``target_pixels(f, w, h)`` pixels.
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from occlubench import _speedups
from occlubench.errors import InvalidSpecError
from occlubench.masks import _python
from occlubench.masks._python import round_half_up


class OcclusionKind(str, Enum):
    """The five occlusion patterns. Values are the wire names."""

    SLIDE = "slide"
    BARS = "bars"
    RAIN = "rain"
    SNOW = "snow"
    GRID = "grid"

    @classmethod
    def from_name(cls, name: str) -> "OcclusionKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise InvalidSpecError(
                f"unknown occlusion kind {name!r}; expected one of "
                f"{[k.value for k in cls]}"
            ) from None


# Presentation order used in report tables: dispersed first, as in the
# usual robustness summaries.
KIND_ORDER = [
    OcclusionKind.SNOW,
    OcclusionKind.RAIN,
    OcclusionKind.SLIDE,
    OcclusionKind.BARS,
    OcclusionKind.GRID,
]


@dataclass(frozen=True)
class KindParams:
    """Pattern parameters; defaults follow the benchmark conventions
    (six bars, 10x10 grid, 1-3 px snow discs, +/-5 degree rain jitter)."""

    bar_count: int = 6
    grid_rows: int = 10
    grid_cols: int = 10
    snow_diameter_min: int = 1
    snow_diameter_max: int = 3
    rain_angle_jitter_deg: float = 5.0
    rain_length_min_frac: float = 0.10
    rain_length_max_frac: float = 0.25
    rain_width_px: int = 2

    def validate(self) -> None:
        if self.bar_count < 1:
            raise InvalidSpecError("bar_count must be >= 1")
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise InvalidSpecError("grid_rows/grid_cols must be >= 1")
        if not 1 <= self.snow_diameter_min <= self.snow_diameter_max:
            raise InvalidSpecError("need 1 <= snow_diameter_min <= snow_diameter_max")
        if self.rain_angle_jitter_deg < 0:
            raise InvalidSpecError("rain_angle_jitter_deg must be >= 0")
        if not 0 < self.rain_length_min_frac <= self.rain_length_max_frac:
            raise InvalidSpecError(
                "need 0 < rain_length_min_frac <= rain_length_max_frac"
            )
        if self.rain_width_px < 1:
            raise InvalidSpecError("rain_width_px must be >= 1")


@dataclass(frozen=True)
class OcclusionSpec:
    """One mask request. ``generate`` is a pure function of this value."""

    kind: OcclusionKind
    fraction: float
    width: int
    height: int
    seed: int = 0
    params: KindParams = field(default_factory=KindParams)

    def validate(self) -> None:
        if not 0.0 <= self.fraction <= 1.0:
            raise InvalidSpecError(f"fraction must be in [0, 1], got {self.fraction}")
        if self.width < 1 or self.height < 1:
            raise InvalidSpecError("canvas dimensions must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpecError("seed must fit in 64 unsigned bits")
        self.params.validate()


class OcclusionMask:
    """A boolean pixel mask; True means occluded."""

    def __init__(self, pixels: np.ndarray):
        pixels = np.asarray(pixels, dtype=bool)
        if pixels.ndim != 2:
            raise InvalidSpecError("mask pixels must be a 2-D array")
        self.pixels = pixels
        self.occluded_count = int(pixels.sum())

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OcclusionMask):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def to_rle(self) -> str:
        """Compact run-length text: ``w h;run,run,...`` with alternating
        visible/occluded run lengths in row-major order, starting visible
        (a leading 0 run means the first pixel is occluded)."""
        flat = self.pixels.ravel()
        change = np.flatnonzero(np.diff(flat)) + 1
        bounds = np.concatenate(([0], change, [flat.size]))
        runs = np.diff(bounds).tolist()
        if flat[0]:
            runs.insert(0, 0)
        return f"{self.width} {self.height};" + ",".join(str(r) for r in runs)

    @classmethod
    def from_rle(cls, text: str) -> "OcclusionMask":
        try:
            head, body = text.strip().split(";", 1)
            w, h = (int(v) for v in head.split())
            runs = [int(r) for r in body.split(",")] if body else []
        except ValueError as exc:
            raise InvalidSpecError(f"malformed RLE mask: {exc}") from None
        flat = np.zeros(w * h, dtype=bool)
        pos = 0
        occluded = False
        for run in runs:
            if run < 0 or pos + run > flat.size:
                raise InvalidSpecError("RLE runs exceed canvas size")
            if occluded:
                flat[pos : pos + run] = True
            pos += run
            occluded = not occluded
        if pos != flat.size:
            raise InvalidSpecError("RLE runs do not cover the canvas")
        return cls(flat.reshape(h, w))

    def to_png(self, path) -> None:
        """Single-channel PNG: 0 = visible, 255 = occluded."""
        from PIL import Image

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        Image.fromarray(self.pixels.astype(np.uint8) * 255, mode="L").save(
            path, format="PNG"
        )

    @classmethod
    def from_png(cls, path) -> "OcclusionMask":
        from PIL import Image

        with Image.open(path) as im:
            return cls(np.asarray(im.convert("L")) >= 128)


def target_pixels(fraction: float, width: int, height: int) -> int:
    """Exact number of pixels to occlude: fraction * width * height,
    rounded half away from zero."""
    if not 0.0 <= fraction <= 1.0:
        raise InvalidSpecError(f"fraction must be in [0, 1], got {fraction}")
    if width < 1 or height < 1:
        raise InvalidSpecError("canvas dimensions must be >= 1")
    return round_half_up(fraction * width * height)


def _rain_kernel():
    if _speedups._native is not None:
        return _speedups._native.rain_mask
    return _python.rain_mask


def _snow_kernel():
    if _speedups._native is not None:
        return _speedups._native.snow_mask
    return _python.snow_mask


def generate(spec: OcclusionSpec) -> OcclusionMask:
    """Build the mask for one spec; same spec, same mask, always."""
    spec.validate()
    w, h, p = spec.width, spec.height, spec.params
    target = target_pixels(spec.fraction, w, h)
    if target == 0:
        return OcclusionMask(np.zeros((h, w), dtype=bool))
    if target == w * h:
        return OcclusionMask(np.ones((h, w), dtype=bool))

    if spec.kind is OcclusionKind.SLIDE:
        pixels = _python.slide_mask(w, h, target)
    elif spec.kind is OcclusionKind.BARS:
        pixels = _python.bars_mask(w, h, target, p.bar_count)
    elif spec.kind is OcclusionKind.GRID:
        pixels = _python.grid_mask(w, h, target, spec.seed, p.grid_rows, p.grid_cols)
    elif spec.kind is OcclusionKind.RAIN:
        pixels = _rain_kernel()(
            w,
            h,
            target,
            spec.seed,
            p.rain_angle_jitter_deg,
            p.rain_length_min_frac,
            p.rain_length_max_frac,
            p.rain_width_px,
        )
    elif spec.kind is OcclusionKind.SNOW:
        pixels = _snow_kernel()(
            w, h, target, spec.seed, p.snow_diameter_min, p.snow_diameter_max
        )
    else:  # pragma: no cover
        raise InvalidSpecError(f"unhandled kind {spec.kind!r}")
    return OcclusionMask(pixels)


def backend_name() -> str:
    """Which rain/snow kernel implementation is active."""
    return _speedups.BACKEND

from collections import deque
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from occlubench.imaging import write_image


def exact_target(level_percent: int, width: int, height: int) -> int:
    """Independent oracle for the pixel budget: exact rational arithmetic,
    half away from zero."""
    x = Fraction(level_percent, 100) * width * height
    whole, frac = divmod(x, 1)
    return int(whole) + (1 if frac * 2 >= 1 else 0)


def count_components(mask: np.ndarray) -> int:
    """Brute-force 4-connected component count over True pixels (BFS)."""
    h, w = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    components = 0
    for sy in range(h):
        for sx in range(w):
            if not mask[sy, sx] or seen[sy, sx]:
                continue
            components += 1
            queue = deque([(sy, sx)])
            seen[sy, sx] = True
            while queue:
                y, x = queue.popleft()
                for ny, nx in ((y - 1, x), (y + 1, x), (y, x - 1), (y, x + 1)):
                    if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        queue.append((ny, nx))
    return components


def make_dataset(root: Path, classes, per_class: int, size: int = 16, seed: int = 0):
    """Write a tiny synthetic dataset laid out as <class>/<image>.png.
    Pixel values stay below 128 so the gray fill never collides."""
    rng = np.random.default_rng(seed)
    for cls in classes:
        for i in range(per_class):
            img = rng.integers(0, 128, size=(size, size, 3), dtype=np.uint8)
            write_image(img, root / cls / f"img{i:03d}.png")
    return root


@pytest.fixture
def tiny_dataset(tmp_path):
    return make_dataset(tmp_path / "data", ["alpha", "beta"], 3, size=32)

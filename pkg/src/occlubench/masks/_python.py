"""Pure-Python mask kernels.

Each kernel receives the canvas size and the exact number of pixels to
occlude (already resolved from the requested fraction) and returns a
boolean (height, width) array with exactly that many True pixels.

The dispersed kernels (rain, snow) have compiled twins in
occlubench._native; both follow the same drawing schedule from the same
SplitMix64 stream and must stay bit-identical.
"""

import itertools
import math
from collections import deque

import numpy as np

from occlubench._rng import SplitMix64

# After this many consecutive shapes that add zero new pixels, shapes are
# drawn at their maximum size so coverage keeps growing near fraction 1.
SATURATION_MISS_LIMIT = 1000


def round_half_up(x: float) -> int:
    """Round a non-negative value half away from zero."""
    return int(math.floor(x + 0.5))


def slide_mask(width: int, height: int, target: int) -> np.ndarray:
    """Vertical boundary sweeping left to right; seed-independent."""
    mask = np.zeros((height, width), dtype=bool)
    full_cols, rem = divmod(target, height)
    mask[:, :full_cols] = True
    if rem:
        mask[:rem, full_cols] = True
    return mask


def _bar_columns(width: int, bar_count: int, index: int):
    """Column order for one bar: its center column, then alternating
    right/left so the bar widens symmetrically."""
    center = min(max(int(math.floor((index + 0.5) * width / bar_count)), 0), width - 1)
    yield center
    for step in itertools.count(1):
        right, left = center + step, center - step
        if right >= width and left < 0:
            return
        if right < width:
            yield right
        if left >= 0:
            yield left


def bars_mask(width: int, height: int, target: int, bar_count: int) -> np.ndarray:
    """Evenly spaced vertical bars widened column-by-column in round-robin
    order (bar 0 first); the last partial column fills top-down."""
    mask = np.zeros((height, width), dtype=bool)
    taken = set()
    columns = [_bar_columns(width, bar_count, i) for i in range(bar_count)]

    def next_free_column(bar):
        for col in columns[bar]:
            if col not in taken:
                return col
        return None

    full_cols, rem = divmod(target, height)
    order = deque(range(bar_count))
    placed = 0
    while placed < full_cols and order:
        bar = order.popleft()
        col = next_free_column(bar)
        if col is None:
            continue  # bar exhausted (merged into neighbours), drop it
        taken.add(col)
        mask[:, col] = True
        placed += 1
        order.append(bar)
    if rem:
        while order:
            bar = order.popleft()
            col = next_free_column(bar)
            if col is None:
                continue
            mask[:rem, col] = True
            break
    return mask


def grid_mask(
    width: int, height: int, target: int, seed: int, rows: int, cols: int
) -> np.ndarray:
    """Grid cells occluded in seeded shuffle order; the first cell that
    would overshoot is filled partially, row-major."""
    mask = np.zeros((height, width), dtype=bool)
    xs = [round_half_up(c * width / cols) for c in range(cols + 1)]
    ys = [round_half_up(r * height / rows) for r in range(rows + 1)]
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    SplitMix64(seed).shuffle(cells)

    count = 0
    for r, c in cells:
        x0, x1 = xs[c], xs[c + 1]
        y0, y1 = ys[r], ys[r + 1]
        cell_w = x1 - x0
        size = cell_w * (y1 - y0)
        if size == 0:
            continue
        if count + size <= target:
            mask[y0:y1, x0:x1] = True
            count += size
            if count == target:
                break
        else:
            rem = target - count
            full_rows, part = divmod(rem, cell_w)
            mask[y0 : y0 + full_rows, x0:x1] = True
            if part:
                mask[y0 + full_rows, x0 : x0 + part] = True
            break
    return mask


def rain_mask(
    width: int,
    height: int,
    target: int,
    seed: int,
    jitter_deg: float,
    len_min_frac: float,
    len_max_frac: float,
    width_px: int,
) -> np.ndarray:
    """Near-vertical thick streaks accumulated until the target count is
    reached; overshoot trimmed from the last streak in reverse raster order.

    Per streak the stream is consumed in a fixed order: anchor_x, anchor_y,
    angle, length. A pixel belongs to a streak when its integer coordinate
    lies within width/2 of the centre segment.
    """
    mask = np.zeros((height, width), dtype=bool)
    rng = SplitMix64(seed)
    half = width_px / 2.0
    half_sq = half * half
    deg2rad = math.pi / 180.0

    count = 0
    misses = 0
    saturate = False
    last_added: list = []
    while count < target:
        ax = rng.next_unit() * width
        ay = rng.next_unit() * height
        angle = (-jitter_deg + rng.next_unit() * (2.0 * jitter_deg)) * deg2rad
        frac = len_min_frac + rng.next_unit() * (len_max_frac - len_min_frac)
        if saturate:
            frac = len_max_frac
        length = frac * height
        dx = math.sin(angle) * length
        dy = math.cos(angle) * length
        bx = ax + dx
        by = ay + dy
        seg_sq = dx * dx + dy * dy

        x_lo = max(int(math.floor(min(ax, bx) - half)), 0)
        x_hi = min(int(math.ceil(max(ax, bx) + half)), width - 1)
        y_lo = max(int(math.floor(min(ay, by) - half)), 0)
        y_hi = min(int(math.ceil(max(ay, by) + half)), height - 1)

        added = []
        for y in range(y_lo, y_hi + 1):
            for x in range(x_lo, x_hi + 1):
                if mask[y, x]:
                    continue
                px = x - ax
                py = y - ay
                t = (px * dx + py * dy) / seg_sq
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                ex = px - t * dx
                ey = py - t * dy
                if ex * ex + ey * ey <= half_sq:
                    mask[y, x] = True
                    added.append((y, x))
        if added:
            count += len(added)
            last_added = added
            misses = 0
        else:
            misses += 1
            if misses >= SATURATION_MISS_LIMIT:
                saturate = True

    while count > target:
        y, x = last_added.pop()
        mask[y, x] = False
        count -= 1
    return mask


def snow_mask(
    width: int,
    height: int,
    target: int,
    seed: int,
    d_min: int,
    d_max: int,
) -> np.ndarray:
    """Small discs accumulated until the target count is reached; overshoot
    trimmed from the last disc in reverse raster order.

    Per disc the stream is consumed in a fixed order: center_x, center_y,
    diameter. A pixel belongs to a disc when its integer coordinate lies
    within diameter/2 of the centre.
    """
    mask = np.zeros((height, width), dtype=bool)
    rng = SplitMix64(seed)
    span = d_max - d_min + 1

    count = 0
    misses = 0
    saturate = False
    last_added: list = []
    while count < target:
        cx = rng.next_unit() * width
        cy = rng.next_unit() * height
        d = d_min + rng.next_below(span)
        if saturate:
            d = d_max
        r = d / 2.0
        r_sq = r * r

        x_lo = max(int(math.floor(cx - r)), 0)
        x_hi = min(int(math.ceil(cx + r)), width - 1)
        y_lo = max(int(math.floor(cy - r)), 0)
        y_hi = min(int(math.ceil(cy + r)), height - 1)

        added = []
        for y in range(y_lo, y_hi + 1):
            for x in range(x_lo, x_hi + 1):
                if mask[y, x]:
                    continue
                ex = x - cx
                ey = y - cy
                if ex * ex + ey * ey <= r_sq:
                    mask[y, x] = True
                    added.append((y, x))
        if added:
            count += len(added)
            last_added = added
            misses = 0
        else:
            misses += 1
            if misses >= SATURATION_MISS_LIMIT:
                saturate = True

    while count > target:
        y, x = last_added.pop()
        mask[y, x] = False
        count -= 1
    return mask

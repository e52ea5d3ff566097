# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels: the dispersed-occlusion generators
(rain, snow) and the FNV-1a pixel checksum.

These must stay bit-identical to occlubench.masks._python; both consume
the same SplitMix64 stream in the same order and use the same float
expressions (the extension is compiled with -ffp-contract=off to keep the
arithmetic un-fused).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, ceil, cos, floor, sin

cnp.import_array()

DEF SATURATION_MISS_LIMIT = 1000

cdef double _UNIT = 1.0 / 9007199254740992.0  # 2**-53


cdef inline unsigned long long _mix(unsigned long long* state) nogil:
    state[0] = state[0] + 0x9E3779B97F4A7C15ULL
    cdef unsigned long long z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double _unit(unsigned long long* state) nogil:
    return <double>(_mix(state) >> 11) * _UNIT


def fnv1a_64(const unsigned char[:] data):
    """64-bit FNV-1a over a byte buffer."""
    cdef unsigned long long h = 0xCBF29CE484222325ULL
    cdef Py_ssize_t i
    for i in range(data.shape[0]):
        h = (h ^ data[i]) * 0x100000001B3ULL
    return h


def rain_mask(int width, int height, long long target, unsigned long long seed,
              double jitter_deg, double len_min_frac, double len_max_frac,
              int width_px):
    """Compiled twin of masks._python.rain_mask; returns a bool array."""
    mask_arr = np.zeros((height, width), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] mask = mask_arr
    buf_arr = np.empty(height * width, dtype=np.int64)
    cdef cnp.int64_t[::1] buf = buf_arr

    cdef unsigned long long state = seed
    cdef double half = width_px / 2.0
    cdef double half_sq = half * half
    cdef double deg2rad = M_PI / 180.0

    cdef long long count = 0
    cdef int misses = 0
    cdef bint saturate = False
    cdef Py_ssize_t n_last = 0, n_new
    cdef double ax, ay, angle, frac, length, dx, dy, bx, by, seg_sq
    cdef double px, py, t, ex, ey, lo, hi
    cdef int x_lo, x_hi, y_lo, y_hi, x, y
    cdef cnp.int64_t idx

    while count < target:
        ax = _unit(&state) * width
        ay = _unit(&state) * height
        angle = (-jitter_deg + _unit(&state) * (2.0 * jitter_deg)) * deg2rad
        frac = len_min_frac + _unit(&state) * (len_max_frac - len_min_frac)
        if saturate:
            frac = len_max_frac
        length = frac * height
        dx = sin(angle) * length
        dy = cos(angle) * length
        bx = ax + dx
        by = ay + dy
        seg_sq = dx * dx + dy * dy

        lo = ax if ax < bx else bx
        hi = ax if ax > bx else bx
        x_lo = <int>floor(lo - half)
        if x_lo < 0:
            x_lo = 0
        x_hi = <int>ceil(hi + half)
        if x_hi > width - 1:
            x_hi = width - 1
        lo = ay if ay < by else by
        hi = ay if ay > by else by
        y_lo = <int>floor(lo - half)
        if y_lo < 0:
            y_lo = 0
        y_hi = <int>ceil(hi + half)
        if y_hi > height - 1:
            y_hi = height - 1

        n_new = 0
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
                    mask[y, x] = 1
                    buf[n_new] = <cnp.int64_t>y * width + x
                    n_new += 1
        if n_new > 0:
            count += n_new
            n_last = n_new
            misses = 0
        else:
            misses += 1
            if misses >= SATURATION_MISS_LIMIT:
                saturate = True

    while count > target:
        n_last -= 1
        idx = buf[n_last]
        mask[idx // width, idx % width] = 0
        count -= 1
    return mask_arr.astype(bool)


def snow_mask(int width, int height, long long target, unsigned long long seed,
              int d_min, int d_max):
    """Compiled twin of masks._python.snow_mask; returns a bool array."""
    mask_arr = np.zeros((height, width), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] mask = mask_arr
    buf_arr = np.empty(height * width, dtype=np.int64)
    cdef cnp.int64_t[::1] buf = buf_arr

    cdef unsigned long long state = seed
    cdef unsigned long long span = <unsigned long long>(d_max - d_min + 1)

    cdef long long count = 0
    cdef int misses = 0
    cdef bint saturate = False
    cdef Py_ssize_t n_last = 0, n_new
    cdef double cx, cy, r, r_sq, ex, ey
    cdef int d, x_lo, x_hi, y_lo, y_hi, x, y
    cdef cnp.int64_t idx

    while count < target:
        cx = _unit(&state) * width
        cy = _unit(&state) * height
        d = d_min + <int>(_mix(&state) % span)
        if saturate:
            d = d_max
        r = d / 2.0
        r_sq = r * r

        x_lo = <int>floor(cx - r)
        if x_lo < 0:
            x_lo = 0
        x_hi = <int>ceil(cx + r)
        if x_hi > width - 1:
            x_hi = width - 1
        y_lo = <int>floor(cy - r)
        if y_lo < 0:
            y_lo = 0
        y_hi = <int>ceil(cy + r)
        if y_hi > height - 1:
            y_hi = height - 1

        n_new = 0
        for y in range(y_lo, y_hi + 1):
            for x in range(x_lo, x_hi + 1):
                if mask[y, x]:
                    continue
                ex = x - cx
                ey = y - cy
                if ex * ex + ey * ey <= r_sq:
                    mask[y, x] = 1
                    buf[n_new] = <cnp.int64_t>y * width + x
                    n_new += 1
        if n_new > 0:
            count += n_new
            n_last = n_new
            misses = 0
        else:
            misses += 1
            if misses >= SATURATION_MISS_LIMIT:
                saturate = True

    while count > target:
        n_last -= 1
        idx = buf[n_last]
        mask[idx // width, idx % width] = 0
        count -= 1
    return mask_arr.astype(bool)

"""Hot numeric kernels, each with a numba-jitted and a pure-numpy variant.

The three loops that dominate runtime live here: 2-D convolution with a
replicate border, sliding-window histogram entropy, and the pairwise
lightness-order inversion count. Everything else in the package is ordinary
vectorized numpy and needs no special treatment.

Backend selection: the WCENHANCE_BACKEND environment variable ("numba",
"numpy", or "auto"/unset) picks the implementation at import time;
set_backend() switches it at runtime. The numba path is the default when
numba imports cleanly. Both variants of every kernel are cross-checked in
the test suite, and benchmarks/bench_backends.py compares their speed.
"""

from __future__ import annotations

import os

import numpy as np
from scipy import ndimage

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # noqa: D103
        def wrap(fn):
            return fn

        return wrap


# ---------------------------------------------------------------------------
# backend selection


def _backend_from_env() -> str:
    choice = os.environ.get("WCENHANCE_BACKEND", "auto").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(
            f"WCENHANCE_BACKEND must be 'numba', 'numpy' or 'auto', got {choice!r}"
        )
    if choice == "numba" and not HAVE_NUMBA:
        return "numpy"
    return choice


_active_backend = _backend_from_env()


def current_backend() -> str:
    return _active_backend


def set_backend(name: str) -> None:
    """Switch the kernel backend at runtime ("numba" or "numpy")."""
    global _active_backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not importable")
    _active_backend = name


# ---------------------------------------------------------------------------
# 2-D convolution (correlation) with clamp-to-edge border


def _np_convolve2d(plane: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return ndimage.correlate(plane, weights, mode="nearest", output=np.float64)


@njit(cache=True, nogil=True)
def _nb_convolve2d(plane, weights):  # pragma: no cover - measured via dispatch
    h, w = plane.shape
    kh, kw = weights.shape
    rh = kh // 2
    rw = kw // 2
    out = np.empty((h, w), np.float64)
    for i in range(h):
        for j in range(w):
            acc = 0.0
            for di in range(kh):
                ii = i + di - rh
                if ii < 0:
                    ii = 0
                elif ii >= h:
                    ii = h - 1
                for dj in range(kw):
                    jj = j + dj - rw
                    if jj < 0:
                        jj = 0
                    elif jj >= w:
                        jj = w - 1
                    acc += plane[ii, jj] * weights[di, dj]
            out[i, j] = acc
    return out


def convolve2d(plane: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Correlate `plane` with `weights`, replicating edge pixels at borders."""
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if _active_backend == "numba":
        return _nb_convolve2d(plane, weights)
    return _np_convolve2d(plane, weights)


# ---------------------------------------------------------------------------
# sliding-window histogram entropy (bits)

_TERM_TABLES: dict = {}


def entropy_term_table(window_area: int) -> np.ndarray:
    """term[c] = (c/n) * log2(c/n) for count c in a window of n samples.

    Shared by every backend (and the tests' oracles may rebuild it from
    scratch) so the summed terms agree to float precision.
    """
    table = _TERM_TABLES.get(window_area)
    if table is None:
        counts = np.arange(window_area + 1, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            p = counts / window_area
            table = p * np.log2(p)
        table[0] = 0.0
        table.setflags(write=False)
        _TERM_TABLES[window_area] = table
    return table


def _np_window_entropy(bins: np.ndarray, win: int, term: np.ndarray) -> np.ndarray:
    h, w = bins.shape
    r = win // 2
    padded = np.pad(bins, r, mode="edge")
    stack = np.empty((win * win, h, w), dtype=np.int64)
    k = 0
    for di in range(win):
        for dj in range(win):
            stack[k] = padded[di : di + h, dj : dj + w]
            k += 1
    out = np.empty((h, w), dtype=np.float64)
    # chunk rows to keep the per-pixel 256-bin count matrix small
    chunk = max(1, (1 << 22) // max(1, w * 256))
    for i0 in range(0, h, chunk):
        i1 = min(i0 + chunk, h)
        flat = stack[:, i0:i1, :].reshape(win * win, -1)
        m = flat.shape[1]
        combined = flat + np.arange(m, dtype=np.int64) * 256
        counts = np.bincount(combined.ravel(), minlength=m * 256).reshape(m, 256)
        out[i0:i1, :] = (-term[counts].sum(axis=1)).reshape(i1 - i0, w)
    return out


@njit(cache=True, nogil=True)
def _nb_window_entropy(bins, win, term):  # pragma: no cover - measured via dispatch
    h, w = bins.shape
    r = win // 2
    out = np.empty((h, w), np.float64)
    hist = np.zeros(256, np.int64)
    for i in range(h):
        hist[:] = 0
        for di in range(-r, r + 1):
            ii = min(max(i + di, 0), h - 1)
            for dj in range(-r, r + 1):
                jj = min(max(dj, 0), w - 1)
                hist[bins[ii, jj]] += 1
        s = 0.0
        for b in range(256):
            s -= term[hist[b]]
        out[i, 0] = s
        for j in range(1, w):
            jo = min(max(j - r - 1, 0), w - 1)
            jn = min(max(j + r, 0), w - 1)
            for di in range(-r, r + 1):
                ii = min(max(i + di, 0), h - 1)
                hist[bins[ii, jo]] -= 1
                hist[bins[ii, jn]] += 1
            s = 0.0
            for b in range(256):
                s -= term[hist[b]]
            out[i, j] = s
    return out


def window_entropy(bins: np.ndarray, win: int) -> np.ndarray:
    """Per-pixel entropy in bits of the win x win neighborhood histogram.

    `bins` holds 256-level bin indices; borders are replicate-padded so the
    window always contains win*win samples.
    """
    if win < 1 or win % 2 == 0:
        raise ValueError(f"window size must be odd and positive, got {win}")
    bins = np.ascontiguousarray(bins, dtype=np.uint8)
    term = entropy_term_table(win * win)
    if _active_backend == "numba":
        return _nb_window_entropy(bins, win, term)
    return _np_window_entropy(bins, win, term)


# ---------------------------------------------------------------------------
# pairwise lightness-order inversion count


def _np_order_inversions(a: np.ndarray, b: np.ndarray) -> int:
    total = 0
    for x in range(a.size):
        total += int(np.count_nonzero((a[x] >= a) != (b[x] >= b)))
    return total


@njit(cache=True, nogil=True)
def _nb_order_inversions(a, b):  # pragma: no cover - measured via dispatch
    m = a.size
    total = 0
    for x in range(m):
        ax = a[x]
        bx = b[x]
        for y in range(m):
            if (ax >= a[y]) != (bx >= b[y]):
                total += 1
    return total


def order_inversions(a: np.ndarray, b: np.ndarray) -> int:
    """Count ordered pairs (x, y) whose relative order differs between a and b."""
    a = np.ascontiguousarray(a, dtype=np.float64).ravel()
    b = np.ascontiguousarray(b, dtype=np.float64).ravel()
    if a.size != b.size:
        raise ValueError("order_inversions needs equally sized inputs")
    if _active_backend == "numba":
        return int(_nb_order_inversions(a, b))
    return _np_order_inversions(a, b)


def warmup() -> None:
    """Force JIT compilation of the numba kernels (no-op on the numpy path)."""
    if _active_backend != "numba":
        return
    plane = np.zeros((4, 4), np.float64)
    _nb_convolve2d(plane, np.ones((3, 3)) / 9.0)
    _nb_window_entropy(np.zeros((4, 4), np.uint8), 3, entropy_term_table(9))
    _nb_order_inversions(np.zeros(4), np.zeros(4))

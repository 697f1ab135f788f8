"""Shared helpers for the test suite."""

import math

import numpy as np


def window(ratios):
    """max/min spread of a collection of positive finite ratios."""
    r = [v for v in ratios if math.isfinite(v) and v > 0]
    if not r:
        return math.inf
    return max(r) / min(r)


def rel_err(a, b):
    return abs(a - b) / abs(b)


def interior_ratio_window(lhs, rhs, grid, frac=0.05):
    """Spread of lhs/rhs over the grid interior, ignoring bad nodes."""
    sl = grid.interior(frac)
    a = np.asarray(lhs, float)[sl]
    b = np.asarray(rhs, float)[sl]
    m = np.isfinite(a) & np.isfinite(b) & (a > 0) & (b > 0)
    if not m.any():
        return math.inf
    r = a[m] / b[m]
    return float(r.max() / r.min())

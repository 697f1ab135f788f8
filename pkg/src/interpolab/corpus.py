"""Prototype decreasing rearrangements on (0, 1).

The harnesses exercise everything on a small corpus of f* prototypes
described by a mini grammar:

    chi:a        indicator of (0, a), 0 < a <= 1
    pow:r        s^(-1/r)
    powlog:r,m   s^(-1/r) * l^m(s)
    log:m        l^m(s), m > 0
    csv:PATH     step function from a two-column t,value CSV

All prototypes vanish for t > 1 and are repaired to nonincreasing after
sampling (powlog with negative m turns upward near t = 1, where l^m
starts winning; the repair replaces the sample by its running maximum
from the right, which is the rearrangement of the sampled step
function).
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .grid import Grid, GridFunction


def _ell(x):
    return 1.0 + np.abs(x)


def parse_fn(spec: str):
    """Turn a grammar string into (id, callable log t -> values)."""
    kind, _, arg = spec.partition(":")
    if kind == "chi":
        a = float(arg)
        if not 0 < a <= 1:
            raise ValueError(f"chi level must be in (0,1], got {a}")
        la = math.log(a)

        def fn(x):
            return (x <= la).astype(float)
    elif kind == "pow":
        r = float(arg)
        if r <= 1:
            raise ValueError(f"pow exponent r must be > 1, got {r}")

        def fn(x):
            return np.where(x <= 0, np.exp(-x / r), 0.0)
    elif kind == "powlog":
        r_s, m_s = arg.split(",")
        r, m = float(r_s), float(m_s)
        if r <= 1:
            raise ValueError(f"powlog exponent r must be > 1, got {r}")

        def fn(x):
            with np.errstate(over="ignore"):
                return np.where(x <= 0, np.exp(-x / r) * _ell(x) ** m, 0.0)
    elif kind == "log":
        m = float(arg)
        if m <= 0:
            raise ValueError(f"log exponent m must be > 0, got {m}")

        def fn(x):
            return np.where(x <= 0, _ell(x) ** m, 0.0)
    elif kind == "csv":
        with open(arg) as fh:
            rows = [r for r in csv.reader(fh) if r and r[0] != "t"]
        pts = np.array(sorted((float(t), float(v)) for t, v in rows))
        if len(pts) == 0 or np.any(pts[:, 0] <= 0):
            raise ValueError(f"csv corpus file {arg} needs positive t rows")
        tt, vv = pts[:, 0], pts[:, 1]

        def fn(x):
            with np.errstate(over="ignore"):
                t = np.exp(np.clip(x, -700, 700))
            idx = np.searchsorted(tt, t, side="right") - 1
            out = np.where(idx >= 0, vv[np.maximum(idx, 0)], vv[0])
            return np.where(t <= tt[-1], out, 0.0)
    else:
        raise ValueError(f"unknown corpus function kind {kind!r}")
    return spec, fn


def sample(spec: str, grid: Grid) -> GridFunction:
    _, fn = parse_fn(spec)
    vals = fn(grid.x)
    # rearrangement repair: nonincreasing envelope from the right
    vals = np.maximum.accumulate(vals[::-1])[::-1]
    return GridFunction(grid, vals)


STANDARD = ("chi:0.001", "chi:0.1", "chi:1", "pow:2", "pow:4",
            "powlog:2,1", "powlog:4,-1", "log:2")


def resolve_corpus(name_or_path) -> tuple:
    """'standard', a sequence of specs, an inline semicolon-separated
    list, or a file of one spec per line."""
    if isinstance(name_or_path, (tuple, list)):
        return tuple(name_or_path)
    if name_or_path == "standard":
        return STANDARD
    if ":" in name_or_path:
        return tuple(s for s in name_or_path.split(";") if s)
    with open(name_or_path) as fh:
        return tuple(line.strip() for line in fh
                     if line.strip() and not line.startswith("#"))

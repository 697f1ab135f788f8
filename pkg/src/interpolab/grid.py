"""Geometric grids and quadrature against dt/t.

Everything downstream works on a uniform grid in x = log t.  Working in x
rather than t keeps the arithmetic finite across the enormous dynamic
ranges that show up in weighted norms (t^{-theta*q} spans dozens of
decades on the default full-line grid), and lets a grid reach far below
the float64 underflow threshold when a slowly converging log-integral
needs it.

Two kinds of integral live here:

* "tilde" norms, i.e. L_q norms against the measure dt/t.  These are
  trapezoid sums in x on log-scale values, accumulated with
  np.logaddexp so nothing ever overflows.
* plain Lebesgue integrals of nonnegative samples (used for the
  K-functional of the couple (L1, Linf) and a few inner norms in the
  concrete function spaces).  Those use a piecewise power-law model
  (log-log linear between nodes) which is exact on pure powers and
  extrapolates the head (0, t_min) by the power fitted to the first
  cell.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

NEG_INF = -np.inf


@dataclass(frozen=True)
class RiSpace:
    """The rearrangement invariant parameter space E = L_q, q in [1, inf].

    Only the Lebesgue scale is supported; the fundamental function is
    phi_E(t) = t^(1/q).
    """

    q: float

    def __post_init__(self):
        if not (self.q >= 1.0):
            raise ValueError(f"q must be in [1, inf], got {self.q}")

    @property
    def is_sup(self) -> bool:
        return math.isinf(self.q)

    def phi_exponent(self) -> float:
        return 0.0 if self.is_sup else 1.0 / self.q


L1 = RiSpace(1.0)
L2 = RiSpace(2.0)
LINF = RiSpace(math.inf)


class Grid:
    """Uniform grid in x = log t on [x_min, x_max] with n nodes.

    ``truncated_low``/``truncated_high`` record whether the ends stand in
    for 0 / infinity (and therefore need divergence checks) or are true
    domain edges, as t_max = 1 is for spaces over (0, 1).
    """

    __slots__ = ("x", "dx", "n", "truncated_low", "truncated_high", "_t")

    def __init__(self, x_min: float, x_max: float, n: int,
                 truncated_low: bool = True, truncated_high: bool = True):
        if n < 2:
            raise ValueError("need at least 2 nodes")
        if not x_max > x_min:
            raise ValueError("empty grid range")
        step = (x_max - x_min) / (n - 1)
        x = x_min + step * np.arange(n)
        x[-1] = x_max
        self.x = x
        self.dx = step
        self.n = n
        self.truncated_low = truncated_low
        self.truncated_high = truncated_high
        self._t = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_bounds(cls, t_min: float, t_max: float, n: int, **kw) -> "Grid":
        if not (t_min > 0 and t_max > t_min):
            raise ValueError("need 0 < t_min < t_max")
        return cls(math.log(t_min), math.log(t_max), n, **kw)

    @classmethod
    def from_log(cls, x_min: float, x_max: float, n: int, **kw) -> "Grid":
        return cls(x_min, x_max, n, **kw)

    # -- conveniences --------------------------------------------------

    @property
    def t(self) -> np.ndarray:
        if self._t is None:
            with np.errstate(over="ignore", under="ignore"):
                self._t = np.exp(self.x)
        return self._t

    @property
    def key(self):
        return (self.x[0], self.x[-1], self.n,
                self.truncated_low, self.truncated_high)

    def index_of_log(self, xv: float) -> int:
        """Nearest node to x = xv, clamped into range."""
        i = int(round((xv - self.x[0]) / self.dx))
        return min(max(i, 0), self.n - 1)

    def index_of(self, t: float) -> int:
        return self.index_of_log(math.log(t))

    def interior(self, frac: float = 0.05) -> slice:
        """Index slice with frac of the nodes dropped at each end."""
        k = int(self.n * frac)
        return slice(k, self.n - k)

    def to_json(self) -> dict:
        out = {"t_min": math.exp(self.x[0]) if self.x[0] > -700 else 0.0,
               "t_max": math.exp(self.x[-1]) if self.x[-1] < 700 else math.inf,
               "n": self.n}
        if self.x[0] <= -700 or self.x[-1] >= 700:
            out["log_t_min"] = self.x[0]
            out["log_t_max"] = self.x[-1]
        return out


def full_grid(n: int, t_min: float = 1e-8, t_max: float = 1e8) -> Grid:
    """Default truncation of (0, inf)."""
    return Grid.from_bounds(t_min, t_max, n)


def unit_grid(n: int, t_min: float = 1e-8) -> Grid:
    """Default truncation of (0, 1); t = 1 is a real edge."""
    return Grid.from_bounds(t_min, 1.0, n, truncated_high=False)


@dataclass
class GridFunction:
    """Nonnegative samples at the grid nodes."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n,):
            raise ValueError("values shape does not match grid")
        if np.any(self.values < 0) or np.any(np.isnan(self.values)):
            raise ValueError("values must be nonnegative and finite")

    def log_values(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.values)


# ---------------------------------------------------------------------
# log-domain trapezoid machinery for dt/t integrals
# ---------------------------------------------------------------------

def _cells(lw: np.ndarray, q: float, dx: float) -> np.ndarray:
    """log of per-cell contribution to int w^q dx, trapezoid rule."""
    lq = q * lw
    return np.logaddexp(lq[:-1], lq[1:]) + math.log(dx / 2.0)


def log_norm_lower(lw: np.ndarray, q: float, dx: float) -> np.ndarray:
    """log of || w ||_{L~q} over (x_0, x_i), for every node i.

    For q = inf this is the running sup (node i included); for q < inf
    the value at i = 0 is -inf (empty interval -> norm 0).
    """
    if math.isinf(q):
        return np.maximum.accumulate(lw)
    out = np.full(lw.shape, NEG_INF)
    out[1:] = np.logaddexp.accumulate(_cells(lw, q, dx)) / q
    return out


def log_norm_upper(lw: np.ndarray, q: float, dx: float) -> np.ndarray:
    """Mirror of log_norm_lower: norm over (x_i, x_{n-1})."""
    return log_norm_lower(lw[::-1], q, dx)[::-1]


def log_norm_between(lw: np.ndarray, q: float, dx: float,
                     i0: int, i1: int) -> float:
    """log norm over the node range [i0, i1] (empty -> -inf)."""
    if i1 <= i0:
        return NEG_INF
    seg = lw[i0:i1 + 1]
    if math.isinf(q):
        return float(np.max(seg))
    c = _cells(seg, q, dx)
    return float(np.logaddexp.reduce(c)) / q


_EDGE_PTOL = 1e-6      # |slope| below this counts as flat in x
_EDGE_STOL = 0.02      # sup-norm log-power growth threshold


def _edge_tail_diverges(h, xa, xb, q) -> bool:
    """Extrapolate the integrand past a truncated edge and test the tail.

    h holds log integrand values from the edge inward (h[0] at the
    edge, log-t coordinates xa at h[0] and xb at h[-1]).  Two local
    models are fit by least squares: e^{p x} (a power of t) and
    |x|^sigma (a power of |log t|); whichever fits the strip better is
    extrapolated past the edge to decide whether int e^{q h} dx
    (resp. sup e^h for q = inf) over the unseen side converges.
    """
    h = np.asarray(h, dtype=float)
    h0, hk = float(h[0]), float(h[-1])
    if math.isnan(h0) or math.isnan(hk) or np.isnan(h).any():
        return True
    if h0 == NEG_INF:
        return False
    out = 1.0 if xa > xb else -1.0      # direction of the unseen tail
    if not np.all(np.isfinite(h)):
        # vanishing samples inside the strip: all mass sits at the
        # edge, and a flat continuation past it diverges
        return True
    xs = np.linspace(xa, xb, len(h))
    p, ca = np.polyfit(xs, h, 1)
    res_a = float(np.sum((h - (p * xs + ca)) ** 2))
    if min(abs(xa), abs(xb)) >= 2.0:
        u = np.log(np.abs(xs))
        sigma, cb = np.polyfit(u, h, 1)
        res_b = float(np.sum((h - (sigma * u + cb)) ** 2))
    else:
        sigma, res_b = 0.0, math.inf
    if res_b <= res_a:
        # flat in x: tail behaves like |log t|^sigma
        if math.isinf(q):
            return sigma > _EDGE_STOL
        return q * sigma >= -1.0
    slope = p * out
    if slope > _EDGE_PTOL:
        return True
    if slope < -_EDGE_PTOL:
        return False
    # numerically flat: the integral diverges, the sup does not
    return not math.isinf(q)


def edge_divergent(lw: np.ndarray, q: float, dx: float,
                   i0: int, i1: int, grid: Grid,
                   x_lo: float | None = None,
                   x_hi: float | None = None) -> bool:
    """Divergence test at truncated edges.

    Fits the integrand over a log(2)-wide strip at each edge of
    [i0, i1] that stands in for 0 or infinity and extrapolates: a pure
    power tail e^{px} converges iff it decays, a flat-in-x tail
    behaves like |log t|^sigma and converges iff sigma < -1 (q < inf).
    x_lo / x_hi override the log-t coordinates of the edge nodes when
    lw is a slice of a larger grid.
    """
    if i1 <= i0:
        return False
    k = max(2, int(math.ceil(math.log(2.0) / dx)))
    if x_lo is None:
        x_lo = grid.x[i0] if hasattr(grid, "x") else None
    if x_hi is None:
        x_hi = grid.x[i1] if hasattr(grid, "x") else None
    if grid.truncated_low and i0 == 0 and i1 - i0 > k:
        strip = lw[i0:i0 + k + 1]
        if _edge_tail_diverges(strip, x_lo, x_lo + k * dx, q):
            return True
    if grid.truncated_high and i1 == grid.n - 1 and i1 - i0 > k:
        strip = lw[i1:i1 - k - 1:-1]
        if _edge_tail_diverges(strip, x_hi, x_hi - k * dx, q):
            return True
    return False


def _interval_to_nodes(grid: Grid, interval) -> tuple[int, int]:
    lo, hi = interval
    i0 = 0 if lo <= 0 else grid.index_of(lo)
    i1 = grid.n - 1 if math.isinf(hi) else grid.index_of(hi)
    return i0, i1


def tilde_norm(g: GridFunction, E: RiSpace,
               interval=(0.0, math.inf), check: bool = True) -> float:
    """|| g ||_{E~(interval)}, the L_q norm of g against dt/t.

    Interval ends snap to the nearest grid nodes (0 and inf mean the
    grid edges).  Returns math.inf when the divergence heuristic fires
    at a truncated edge.
    """
    lw = g.log_values()
    i0, i1 = _interval_to_nodes(g.grid, interval)
    if check and edge_divergent(lw, E.q, g.grid.dx, i0, i1, g.grid):
        return math.inf
    v = log_norm_between(lw, E.q, g.grid.dx, i0, i1)
    val = math.exp(v) if v < 700 else math.inf
    return val


def nested_tilde_norms(g: GridFunction, E: RiSpace, side: str) -> GridFunction:
    """All prefix (side='lower') or suffix ('upper') tilde norms at once.

    Agrees node-for-node with tilde_norm called on (0, t_i) resp.
    (t_i, inf); one O(n) pass instead of n quadratures.
    """
    lw = g.log_values()
    if side == "lower":
        ln = log_norm_lower(lw, E.q, g.grid.dx)
    elif side == "upper":
        ln = log_norm_upper(lw, E.q, g.grid.dx)
    else:
        raise ValueError("side must be 'lower' or 'upper'")
    with np.errstate(over="ignore"):
        return GridFunction(g.grid, np.exp(ln))


# ---------------------------------------------------------------------
# Lebesgue integrals of nonnegative samples (power-law cell model)
# ---------------------------------------------------------------------

def _segment_integrals(values: np.ndarray, grid: Grid) -> np.ndarray:
    """int_{t_j}^{t_{j+1}} v(s) ds for each cell.

    Cells with both endpoints positive use the power law through the two
    samples (exact for v = C s^gamma); cells touching zero fall back to
    the linear trapezoid.
    """
    t = grid.t
    v0, v1 = values[:-1], values[1:]
    dx = grid.dx
    both = (v0 > 0) & (v1 > 0)
    out = np.empty_like(v0)
    # trapezoid fallback (also fine for all-zero cells)
    out[:] = 0.5 * (v0 + v1) * (t[1:] - t[:-1])
    if np.any(both):
        with np.errstate(divide="ignore", invalid="ignore"):
            gamma = np.where(both, np.log(np.where(both, v1 / v0, 1.0)) / dx, 0.0)
        p = gamma + 1.0
        flat = np.abs(p) < 1e-12
        with np.errstate(over="ignore", invalid="ignore"):
            pw = np.where(flat, dx, np.expm1(dx * np.where(flat, 1.0, p))
                          / np.where(flat, 1.0, p))
        cand = v0 * t[:-1] * pw
        out = np.where(both & np.isfinite(cand), cand, out)
    return out


def _head_integral(values: np.ndarray, grid: Grid) -> float:
    """int_0^{t_min} by power-law extrapolation of the first cell."""
    v0 = values[0]
    if v0 == 0.0:
        return 0.0
    if grid.x[0] < -700:
        return 0.0  # t_min below float range; head is genuinely nil
    gamma = 0.0
    if values[1] > 0:
        gamma = math.log(values[1] / v0) / grid.dx
    p = gamma + 1.0
    if p <= 1e-9:
        return math.inf  # local power <= -1: not locally integrable
    return v0 * grid.t[0] / p


def lebesgue_prefix(values: np.ndarray, grid: Grid) -> np.ndarray:
    """F(t_i) = int_0^{t_i} v(s) ds at every node (head extrapolated)."""
    segs = _segment_integrals(values, grid)
    out = np.empty(grid.n)
    out[0] = _head_integral(values, grid)
    np.cumsum(segs, out=out[1:])
    out[1:] += out[0]
    return out


def lebesgue_suffix(values: np.ndarray, grid: Grid) -> np.ndarray:
    """G(t_i) = int_{t_i}^{t_max} v(s) ds at every node."""
    segs = _segment_integrals(values, grid)
    out = np.zeros(grid.n)
    out[:-1] = np.cumsum(segs[::-1])[::-1]
    return out


def rearrange(values: np.ndarray, weights: np.ndarray,
              grid: Grid) -> GridFunction:
    """Nonincreasing rearrangement of a simple function.

    (values, weights) describe a nonnegative simple function taking
    value[k] on a set of measure weight[k]; the result samples its
    rearrangement f*(t) at the grid nodes (right-continuous step).
    """
    values = np.asarray(values, float)
    weights = np.asarray(weights, float)
    if np.any(values < 0) or np.any(weights < 0):
        raise ValueError("values and weights must be nonnegative")
    order = np.argsort(-values)
    v = values[order]
    edges = np.cumsum(weights[order])
    t = grid.t
    idx = np.searchsorted(edges, t, side="left")
    out = np.where(idx < len(v), v[np.minimum(idx, len(v) - 1)], 0.0)
    return GridFunction(grid, out)


def double_star(fstar: GridFunction) -> GridFunction:
    """f**(t) = (1/t) int_0^t f*(s) ds."""
    pref = lebesgue_prefix(fstar.values, fstar.grid)
    return GridFunction(fstar.grid, pref / fstar.grid.t)

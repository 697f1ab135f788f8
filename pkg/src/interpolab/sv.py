"""Slowly varying weight expressions.

A small closed term language for the weights b(t) that modulate the
interpolation norms: powers of l(t) = 1 + |log t|, broken and iterated
logarithms, exp of a fractional power of |log t|, products, real powers,
the substitution t -> b(1/t), composition with rho(t) = t^gamma * b1(t)
for gamma > 0, and the running tail norms

    B0(t) = || b ||_{E~(0,t)},      Binf(t) = || b ||_{E~(t, +edge)},

which are again slowly varying and keep appearing as derived parameters.

Everything evaluates as a function of x = log t, so expressions stay
finite on grids whose t range leaves float64.
"""

from __future__ import annotations

from dataclasses import dataclass
import json
import math

import numpy as np

from .grid import Grid, RiSpace, log_norm_lower, log_norm_upper, edge_divergent


class SvDivergenceError(ValueError):
    """A NormTail integral diverges on the requested grid."""


class SvExpr:
    """Base class; subclasses are frozen dataclasses, hence hashable."""

    def __mul__(self, other):
        return Product(self, other)

    def __pow__(self, r):
        return Power(self, float(r))


@dataclass(frozen=True)
class Const(SvExpr):
    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("constant weight must be positive")


@dataclass(frozen=True)
class EllPow(SvExpr):
    """l^alpha(t) = (1 + |log t|)^alpha."""
    alpha: float


@dataclass(frozen=True)
class BrokenEll(SvExpr):
    """l^alpha for t <= 1, l^beta for t > 1."""
    alpha: float
    beta: float


@dataclass(frozen=True)
class IteratedEll(SvExpr):
    """(l o l o ... o l)^alpha with `depth` compositions (depth >= 2)."""
    depth: int
    alpha: float

    def __post_init__(self):
        if self.depth < 2:
            raise ValueError("use EllPow for depth 1")


@dataclass(frozen=True)
class ExpLogPow(SvExpr):
    """exp(|log t|^alpha), 0 < alpha < 1."""
    alpha: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0,1)")


@dataclass(frozen=True)
class Product(SvExpr):
    left: SvExpr
    right: SvExpr


@dataclass(frozen=True)
class Power(SvExpr):
    base: SvExpr
    r: float


@dataclass(frozen=True)
class InverseArg(SvExpr):
    """t -> inner(1/t)."""
    inner: SvExpr


@dataclass(frozen=True)
class NormTail(SvExpr):
    """t -> || b ||_{E~(0,t)} (side='lower') or || b ||_{E~(t,edge)} ('upper').

    Finiteness is checked the first time a table is built on a grid;
    a divergent tail raises SvDivergenceError then.
    """
    b: SvExpr
    E: RiSpace
    side: str

    def __post_init__(self):
        if self.side not in ("lower", "upper"):
            raise ValueError("side must be 'lower' or 'upper'")


@dataclass(frozen=True)
class ComposeWithRho(SvExpr):
    """t -> outer(t^gamma * inner(t)), gamma > 0 (closure under rho)."""
    outer: SvExpr
    gamma: float
    inner: SvExpr

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


ONE = Const(1.0)


def inverse_arg(e: SvExpr) -> SvExpr:
    """Wrap in InverseArg, collapsing the involution."""
    if isinstance(e, InverseArg):
        return e.inner
    if isinstance(e, Const):
        return e
    if isinstance(e, EllPow):
        return e  # l is symmetric in log t
    if isinstance(e, BrokenEll):
        return BrokenEll(e.beta, e.alpha)
    if isinstance(e, Product):
        return Product(inverse_arg(e.left), inverse_arg(e.right))
    if isinstance(e, Power):
        return Power(inverse_arg(e.base), e.r)
    return InverseArg(e)


# ---------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------

_TAIL_TABLES: dict = {}


def _tail_table(expr: NormTail, grid: Grid) -> np.ndarray:
    key = (expr, grid.key)
    tab = _TAIL_TABLES.get(key)
    if tab is not None:
        return tab
    lb = sv_log_on_grid(expr.b, grid)
    dx = grid.dx
    if expr.side == "lower":
        if grid.truncated_low and edge_divergent(lb, expr.E.q, dx, 0,
                                                 grid.n - 1, grid):
            raise SvDivergenceError(
                f"lower tail norm of {expr.b!r} in L_{expr.E.q} diverges at 0")
        tab = log_norm_lower(lb, expr.E.q, dx)
    else:
        if grid.truncated_high and edge_divergent(lb, expr.E.q, dx, 0,
                                                  grid.n - 1, grid):
            raise SvDivergenceError(
                f"upper tail norm of {expr.b!r} in L_{expr.E.q} diverges at inf")
        tab = log_norm_upper(lb, expr.E.q, dx)
    _TAIL_TABLES[key] = tab
    return tab


def sv_log_eval(expr: SvExpr, x: np.ndarray, grid: Grid | None = None) -> np.ndarray:
    """log b(t) at x = log t (vectorized).

    NormTail needs the grid that holds its table; points off the table
    are linearly interpolated in x (clamped at the ends).
    """
    x = np.asarray(x, dtype=float)
    if isinstance(expr, Const):
        return np.full(x.shape, math.log(expr.c))
    if isinstance(expr, EllPow):
        return expr.alpha * np.log1p(np.abs(x))
    if isinstance(expr, BrokenEll):
        a = np.where(x <= 0, expr.alpha, expr.beta)
        return a * np.log1p(np.abs(x))
    if isinstance(expr, IteratedEll):
        y = np.log1p(np.abs(x))  # log of l(t)
        for _ in range(expr.depth - 1):
            y = np.log1p(np.abs(y))
        return expr.alpha * y
    if isinstance(expr, ExpLogPow):
        return np.abs(x) ** expr.alpha
    if isinstance(expr, Product):
        return sv_log_eval(expr.left, x, grid) + sv_log_eval(expr.right, x, grid)
    if isinstance(expr, Power):
        return expr.r * sv_log_eval(expr.base, x, grid)
    if isinstance(expr, InverseArg):
        return sv_log_eval(expr.inner, -x, grid)
    if isinstance(expr, ComposeWithRho):
        logv = expr.gamma * x + sv_log_eval(expr.inner, x, grid)
        return sv_log_eval(expr.outer, logv, grid)
    if isinstance(expr, NormTail):
        if grid is None:
            raise ValueError("NormTail evaluation needs a grid context")
        tab = _tail_table(expr, grid)
        return np.interp(x, grid.x, tab)
    raise TypeError(f"unknown SvExpr node {expr!r}")


_GRID_EVALS: dict = {}


def sv_log_on_grid(expr: SvExpr, grid: Grid) -> np.ndarray:
    """sv_log_eval at the grid's own nodes, memoized per (expr, grid)."""
    key = (expr, grid.key)
    out = _GRID_EVALS.get(key)
    if out is None:
        out = sv_log_eval(expr, grid.x, grid)
        out.setflags(write=False)
        _GRID_EVALS[key] = out
    return out


def sv_eval(expr: SvExpr, t, grid: Grid | None = None):
    """b(t) in the linear domain, for t inside float range."""
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        return np.exp(sv_log_eval(expr, np.log(t), grid))


# ---------------------------------------------------------------------
# verification of the slowly-varying contract
# ---------------------------------------------------------------------

@dataclass
class SvCheckReport:
    eps: float
    c_up: float      # t^eps b(t) is within factor c_up of nondecreasing
    c_down: float    # t^-eps b(t) within factor c_down of nonincreasing
    passed: bool


def sv_verify(expr: SvExpr, eps: float = 0.25, grid: Grid | None = None,
              tol: float = 50.0) -> SvCheckReport:
    """Check b is slowly varying: t^eps b quasi-increasing, t^-eps b
    quasi-decreasing, with quasi-monotonicity constants below tol.

    The constants depend on eps and on the weight (for l^alpha the dip
    behaves like (alpha/eps)^alpha), so the default tolerance is loose;
    what matters is that they are finite and stable.  Constants are
    measured on the grid interior (5% of nodes dropped at each end,
    where truncation artifacts of embedded tail norms live).
    """
    if grid is None:
        grid = Grid.from_bounds(1e-8, 1e8, 4097)
    lb = sv_log_on_grid(expr, grid)
    sl = grid.interior()
    x = grid.x[sl]
    w_up = eps * x + lb[sl]
    w_dn = -eps * x + lb[sl]
    # how far w_up dips below its running max (quasi-increase defect)
    c_up = float(np.exp(np.max(np.maximum.accumulate(w_up) - w_up)))
    c_dn = float(np.exp(np.max(w_dn - np.minimum.accumulate(w_dn))))
    return SvCheckReport(eps, c_up, c_dn, passed=(c_up <= tol and c_dn <= tol))


def sv_local_scale_bound(expr: SvExpr, eps: float,
                         grid: Grid | None = None) -> tuple[float, float]:
    """Numeric bracket (c_eps, C_eps) for the slow-variation scale bound

        c_eps min(s^eps, s^-eps) b(t) <= b(s t) <= C_eps max(s^eps, s^-eps) b(t).

    Estimated by scanning b(st)/b(t) over a coarse product grid.
    """
    if grid is None:
        grid = Grid.from_bounds(1e-6, 1e6, 193)
    xs = grid.x[:: max(1, grid.n // 64)]
    lb = sv_log_eval(expr, xs, grid)
    # ratios log b(s t) - log b(t) over all node pairs
    shift = sv_log_eval(expr, xs[:, None] + xs[None, :], grid)
    ratio = shift - lb[None, :]
    env = eps * np.abs(xs)[:, None]
    hi = float(np.exp(np.max(ratio - env)))
    lo = float(np.exp(np.min(ratio + env)))
    return lo, hi


# ---------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------

def _q_to_json(q: float):
    return "inf" if math.isinf(q) else q


def _q_from_json(v) -> float:
    if v == "inf":
        return math.inf
    return float(v)


def sv_to_obj(e: SvExpr) -> dict:
    if isinstance(e, Const):
        return {"kind": "const", "c": e.c}
    if isinstance(e, EllPow):
        return {"kind": "ell", "alpha": e.alpha}
    if isinstance(e, BrokenEll):
        return {"kind": "broken_ell", "alpha": e.alpha, "beta": e.beta}
    if isinstance(e, IteratedEll):
        return {"kind": "iterated_ell", "depth": e.depth, "alpha": e.alpha}
    if isinstance(e, ExpLogPow):
        return {"kind": "exp_log_pow", "alpha": e.alpha}
    if isinstance(e, Product):
        return {"kind": "product", "args": [sv_to_obj(e.left), sv_to_obj(e.right)]}
    if isinstance(e, Power):
        return {"kind": "power", "base": sv_to_obj(e.base), "r": e.r}
    if isinstance(e, InverseArg):
        return {"kind": "inverse_arg", "inner": sv_to_obj(e.inner)}
    if isinstance(e, NormTail):
        return {"kind": "norm_tail", "b": sv_to_obj(e.b),
                "E": {"q": _q_to_json(e.E.q)}, "side": e.side}
    if isinstance(e, ComposeWithRho):
        return {"kind": "compose_rho", "outer": sv_to_obj(e.outer),
                "gamma": e.gamma, "inner": sv_to_obj(e.inner)}
    raise TypeError(f"unknown SvExpr node {e!r}")


def sv_from_obj(o: dict) -> SvExpr:
    kind = o["kind"]
    if kind == "const":
        return Const(float(o["c"]))
    if kind == "ell":
        return EllPow(float(o["alpha"]))
    if kind == "broken_ell":
        return BrokenEll(float(o["alpha"]), float(o["beta"]))
    if kind == "iterated_ell":
        return IteratedEll(int(o["depth"]), float(o["alpha"]))
    if kind == "exp_log_pow":
        return ExpLogPow(float(o["alpha"]))
    if kind == "product":
        args = [sv_from_obj(a) for a in o["args"]]
        out = args[0]
        for a in args[1:]:
            out = Product(out, a)
        return out
    if kind == "power":
        return Power(sv_from_obj(o["base"]), float(o["r"]))
    if kind == "inverse_arg":
        return InverseArg(sv_from_obj(o["inner"]))
    if kind == "norm_tail":
        return NormTail(sv_from_obj(o["b"]), RiSpace(_q_from_json(o["E"]["q"])),
                        o["side"])
    if kind == "compose_rho":
        return ComposeWithRho(sv_from_obj(o["outer"]), float(o["gamma"]),
                              sv_from_obj(o["inner"]))
    raise ValueError(f"unknown SvExpr kind {kind!r}")


def sv_to_json(e: SvExpr) -> str:
    return json.dumps(sv_to_obj(e), sort_keys=True)


def sv_from_json(s: str) -> SvExpr:
    return sv_from_obj(json.loads(s))
